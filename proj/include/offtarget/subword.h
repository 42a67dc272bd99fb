#pragma once

#include <string>
#include <utility>
#include <vector>

#include "offtarget/corpus.h"

namespace offtarget {

// End-of-word marker appended to the final symbol of each word.
inline constexpr const char* kEowMarker = "</w>";

struct MergeList {
  std::vector<std::pair<std::string, std::string>> merges;
};

// Standard BPE over the multiset of all source and target tokens of all
// corpora. Pair frequencies are counted over word types weighted by corpus
// frequency; ties break lexicographically on (left, right). Stops after
// num_merges merges or when no pair occurs at least twice.
MergeList learn_bpe(const std::vector<Corpus>& corpora, std::size_t num_merges);

// Splits the word into UTF-8 characters with the end-of-word marker attached
// to the last one, then applies merges in MergeList order.
std::vector<std::string> segment_word(const std::string& word, const MergeList& merges);

// Segments every token of the sequence; subword units of consecutive words
// are concatenated into one flat sequence.
Tokens apply_bpe(const Tokens& tokens, const MergeList& merges);

// Inverse of apply_bpe: concatenates subwords, splitting words at the marker.
Tokens unapply_bpe(const Tokens& subwords);

// One merge per line, `left<SPACE>right`, in learning order.
void save_merges(const MergeList& merges, const std::string& path);
MergeList load_merges(const std::string& path);

}  // namespace offtarget

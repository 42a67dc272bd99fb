#include "offtarget/subword.h"

#include <fstream>
#include <map>
#include <sstream>

namespace offtarget {

namespace {

using Sym = std::string;
using SymSeq = std::vector<Sym>;
using SymPair = std::pair<Sym, Sym>;

SymSeq char_split(const std::string& word) {
  SymSeq seq = utf8_chars(word);
  if (!seq.empty()) seq.back() += kEowMarker;
  return seq;
}

// Merges every adjacent (left, right) occurrence, scanning left to right.
SymSeq merge_pair(const SymSeq& seq, const SymPair& pair) {
  SymSeq out;
  out.reserve(seq.size());
  std::size_t i = 0;
  while (i < seq.size()) {
    if (i + 1 < seq.size() && seq[i] == pair.first && seq[i + 1] == pair.second) {
      out.push_back(seq[i] + seq[i + 1]);
      i += 2;
    } else {
      out.push_back(seq[i]);
      ++i;
    }
  }
  return out;
}

}  // namespace

MergeList learn_bpe(const std::vector<Corpus>& corpora, std::size_t num_merges) {
  // Word-type frequencies across all sides of all corpora.
  std::map<std::string, std::size_t> word_freq;
  for (const auto& corpus : corpora) {
    for (const auto& pair : corpus.pairs) {
      for (const auto& t : pair.src) ++word_freq[t];
      for (const auto& t : pair.tgt) ++word_freq[t];
    }
  }

  std::vector<SymSeq> words;
  std::vector<std::size_t> freqs;
  words.reserve(word_freq.size());
  for (const auto& [word, freq] : word_freq) {
    words.push_back(char_split(word));
    freqs.push_back(freq);
  }

  MergeList result;
  for (std::size_t step = 0; step < num_merges; ++step) {
    std::map<SymPair, std::size_t> pair_freq;
    for (std::size_t w = 0; w < words.size(); ++w) {
      const auto& seq = words[w];
      for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
        pair_freq[{seq[i], seq[i + 1]}] += freqs[w];
      }
    }
    // Most frequent pair; equal counts resolve to the lexicographically
    // smallest (left, right), which map iteration order gives us directly.
    SymPair best;
    std::size_t best_freq = 0;
    for (const auto& [p, f] : pair_freq) {
      if (f > best_freq) {
        best = p;
        best_freq = f;
      }
    }
    if (best_freq < 2) break;
    result.merges.push_back(best);
    for (auto& seq : words) seq = merge_pair(seq, best);
  }
  return result;
}

std::vector<std::string> segment_word(const std::string& word, const MergeList& merges) {
  SymSeq seq = char_split(word);
  for (const auto& m : merges.merges) {
    if (seq.size() < 2) break;
    seq = merge_pair(seq, m);
  }
  return seq;
}

Tokens apply_bpe(const Tokens& tokens, const MergeList& merges) {
  Tokens out;
  for (const auto& word : tokens) {
    auto units = segment_word(word, merges);
    out.insert(out.end(), units.begin(), units.end());
  }
  return out;
}

Tokens unapply_bpe(const Tokens& subwords) {
  Tokens out;
  std::string current;
  const std::string marker = kEowMarker;
  for (const auto& unit : subwords) {
    if (unit.size() >= marker.size() &&
        unit.compare(unit.size() - marker.size(), marker.size(), marker) == 0) {
      current += unit.substr(0, unit.size() - marker.size());
      out.push_back(current);
      current.clear();
    } else {
      current += unit;
    }
  }
  if (!current.empty()) out.push_back(current);  // unterminated word
  return out;
}

void save_merges(const MergeList& merges, const std::string& path) {
  std::ostringstream out;
  for (const auto& [left, right] : merges.merges) {
    out << left << ' ' << right << '\n';
  }
  write_file(path, out.str());
}

MergeList load_merges(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open merges file: " + path);
  MergeList merges;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::size_t space = line.find(' ');
    if (space == std::string::npos || space == 0 || space + 1 == line.size()) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": malformed merge line");
    }
    merges.merges.emplace_back(line.substr(0, space), line.substr(space + 1));
  }
  return merges;
}

}  // namespace offtarget

#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "offtarget/util.h"

namespace offtarget {

// Short language identifier, e.g. "de" or "synA". Non-empty, no whitespace.
struct LanguageTag {
  std::string code;

  LanguageTag() = default;
  explicit LanguageTag(std::string c);

  auto operator<=>(const LanguageTag&) const = default;
};

// Reserved source-side token that conditions the model on the target
// language, e.g. <2de>.
std::string tag_token(const LanguageTag& lang);

struct SentencePair {
  LanguageTag src_lang;
  LanguageTag tgt_lang;
  Tokens src;
  Tokens tgt;
};

// Throws std::invalid_argument on violated invariants (empty sides, empty or
// whitespace tokens, identical language tags).
void validate_pair(const SentencePair& pair);

struct Corpus {
  std::vector<SentencePair> pairs;
  std::set<LanguageTag> languages;

  std::size_t size() const { return pairs.size(); }
  bool empty() const { return pairs.empty(); }
};

void validate_corpus(const Corpus& corpus);

using Direction = std::pair<LanguageTag, LanguageTag>;

inline std::string direction_name(const Direction& d) {
  return d.first.code + "-" + d.second.code;
}

struct SyntheticSpec {
  std::vector<LanguageTag> languages;
  int concept_count = 0;
  double overlap_fraction = 0.0;
  int sentence_count = 0;  // per direction
  int min_len = 1;
  int max_len = 1;
  double zipf_exponent = 1.0;
  std::uint64_t seed = 0;
};

void validate_spec(const SyntheticSpec& spec);
SyntheticSpec load_synthetic_spec(const std::string& path);
std::string synthetic_spec_to_json(const SyntheticSpec& spec);
SyntheticSpec synthetic_spec_from_json(const std::string& text);

// One pair per non-empty line, `src-text<TAB>tgt-text`, whitespace-tokenized.
// Throws std::runtime_error naming the line number on malformed input.
Corpus load_parallel(const std::string& path, const LanguageTag& src_lang,
                     const LanguageTag& tgt_lang);

// Writes `src<TAB>tgt` lines (LF) plus a `<path>.meta.json` sidecar declaring
// the direction. load_parallel(save_parallel(c)) round-trips byte-identically.
void save_parallel(const Corpus& corpus, const std::string& path);

// Reads the sidecar written by save_parallel.
Direction read_sidecar(const std::string& corpus_path);

// Prefixes every source side with the reserved <2tgt> token (target-tag
// conditioning). Throws if any corpus token collides with a reserved tag.
Corpus tag_corpus(const Corpus& corpus);

// Deterministic synthetic parallel data: language l renders concept rank k as
// token `l_k`, except the first floor(overlap_fraction * concept_count)
// concepts which render as `sh_k` in every language. Every ordered pair of
// distinct languages gets sentence_count pairs; both sides of a pair render
// the same concept sequence, so a perfect reference translation exists.
std::map<Direction, Corpus> generate_synthetic(const SyntheticSpec& spec);

struct NoiseInjection {
  Corpus corpus;
  std::vector<std::size_t> copy_indices;      // tgt replaced by src verbatim
  std::vector<std::size_t> misalign_indices;  // tgt replaced by another pair's src
};

// Replaces floor(copy_ratio*N) targets with the source verbatim (Source-Copy)
// and floor(misalign_ratio*N) disjoint targets with a different pair's source
// side (Source-Misalign; the donor is chosen so the result is not a copy).
// Returns ground-truth index sets for oracle evaluation.
NoiseInjection inject_noise(const Corpus& corpus, double copy_ratio,
                            double misalign_ratio, std::uint64_t seed);

}  // namespace offtarget

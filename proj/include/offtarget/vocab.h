#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "offtarget/corpus.h"

namespace offtarget {

// Tokens observed for one language in training data, with counts.
struct Vocabulary {
  LanguageTag language;
  std::map<std::string, std::uint64_t> counts;

  bool contains(const std::string& token) const { return counts.contains(token); }
};

// Dense indexed token inventory shared by the model: EOS first, then UNK,
// then tag specials, then regular tokens in lexicographic order.
class JointVocab {
 public:
  static constexpr const char* kEos = "</s>";
  static constexpr const char* kUnk = "<unk>";

  JointVocab() = default;

  // `tag_langs` contributes one <2lang> special per language. If with_unk is
  // false the vocabulary has no UNK entry (useful for small test vocabs).
  static JointVocab build(const std::vector<std::string>& regular_tokens,
                          const std::vector<LanguageTag>& tag_langs = {}, bool with_unk = true);

  // Collects every distinct token of every side of every corpus.
  static JointVocab from_corpora(const std::vector<Corpus>& corpora,
                                 const std::vector<LanguageTag>& tag_langs);

  std::size_t size() const { return tokens_.size(); }
  const std::string& token(int id) const { return tokens_.at(static_cast<std::size_t>(id)); }
  const std::vector<std::string>& tokens() const { return tokens_; }

  int eos_id() const { return 0; }
  std::optional<int> unk_id() const { return unk_id_; }
  bool is_tag(int id) const;

  std::optional<int> id(const std::string& token) const;
  // Unknown tokens map to UNK; throws if the vocab has no UNK entry.
  int id_or_unk(const std::string& token) const;

  std::vector<int> encode(const Tokens& tokens) const;
  Tokens decode(const std::vector<int>& ids) const;

  // FNV-1a of the newline-joined token list; identifies the vocab in files.
  std::string checksum() const;

  std::string to_json() const;
  static JointVocab from_json(const std::string& text);

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> index_;
  std::optional<int> unk_id_;
  int first_regular_ = 1;  // ids below this (except EOS) are specials
  void rebuild_index();
};

// Boolean mask over JointVocab indices: true for V_T plus EOS.
struct VocabMask {
  LanguageTag target;
  std::vector<bool> allowed;

  std::size_t popcount() const;
};

// Token set of `lang` from all sides declared as that language, with counts.
// Tag specials are excluded. Throws if no side is declared as `lang`.
Vocabulary build_vocab(const std::vector<Corpus>& corpora, const LanguageTag& lang);

// allowed = V_T plus EOS; tag tokens and UNK disallowed. Vocabulary tokens
// missing from the joint vocab are reported through `missing` (never silently
// dropped). Throws if the resulting mask allows no regular token.
VocabMask build_mask(const Vocabulary& vocab, const JointVocab& joint,
                     std::vector<std::string>* missing = nullptr);

// `token<TAB>count` per line, descending count then token.
void save_vocab(const Vocabulary& vocab, const std::string& path);
Vocabulary load_vocab(const std::string& path, const LanguageTag& lang);

// JSON with language code, base64 bitset (LSB-first within each byte), and
// the joint-vocab checksum the mask was built against.
void save_mask(const VocabMask& mask, const JointVocab& joint, const std::string& path);
VocabMask load_mask(const std::string& path, const JointVocab& joint);

}  // namespace offtarget

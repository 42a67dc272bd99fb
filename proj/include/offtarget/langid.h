#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "offtarget/corpus.h"

namespace offtarget {

// Character n-gram naive Bayes language identifier. Plays the role the
// off-the-shelf langid tool has in corpus denoising and output-language
// detection.
class LangIdModel {
 public:
  struct Profile {
    std::map<std::string, std::uint64_t> ngram_counts;
    std::uint64_t total = 0;  // sum of ngram_counts
  };

  LangIdModel() = default;
  LangIdModel(int order, double alpha, std::map<LanguageTag, Profile> profiles);

  int order() const { return order_; }
  double alpha() const { return alpha_; }
  const std::map<LanguageTag, Profile>& profiles() const { return profiles_; }

  // Smoothed log-probability of one n-gram under `lang`. The event space is
  // the union of n-grams seen in any language plus one unseen bucket, so the
  // distribution sums to 1 exactly.
  double ngram_log_prob(const LanguageTag& lang, const std::string& gram) const;

  // Per-language log-scores (uniform prior + summed n-gram log-probs),
  // ordered by language code. Throws on empty (after trimming) text.
  std::vector<std::pair<LanguageTag, double>> scores(const std::string& text) const;

  // Argmax language and the best-minus-second-best margin. Ties break to the
  // lexicographically first language code.
  std::pair<LanguageTag, double> identify(const std::string& text) const;

  std::string to_json() const;
  static LangIdModel from_json(const std::string& text);
  void save(const std::string& path) const;
  static LangIdModel load(const std::string& path);

  // Character n-grams of `text` padded with order-1 sentinel characters at
  // each boundary.
  std::vector<std::string> extract_ngrams(const std::string& text) const;

 private:
  int order_ = 3;
  double alpha_ = 0.5;
  std::map<LanguageTag, Profile> profiles_;
  std::size_t event_space_ = 0;  // distinct n-grams across languages + unseen bucket
  void recompute_event_space();
};

// Additively smoothed character n-gram profiles with uniform priors.
// Requires at least two languages, each with at least one non-empty text.
LangIdModel train_profiles(const std::map<LanguageTag, std::vector<std::string>>& labeled,
                           int order = 3, double alpha = 0.5);

}  // namespace offtarget

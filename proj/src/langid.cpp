#include "offtarget/langid.h"

#include <cmath>
#include <set>

#include "json.hpp"

namespace offtarget {

namespace {
constexpr char kBoundary = '\x01';
}

LangIdModel::LangIdModel(int order, double alpha, std::map<LanguageTag, Profile> profiles)
    : order_(order), alpha_(alpha), profiles_(std::move(profiles)) {
  if (order_ < 1) throw std::invalid_argument("langid order must be >= 1");
  if (alpha_ <= 0.0) throw std::invalid_argument("langid smoothing must be > 0");
  recompute_event_space();
}

void LangIdModel::recompute_event_space() {
  std::set<std::string> grams;
  for (const auto& [lang, profile] : profiles_) {
    if (profile.ngram_counts.empty()) {
      throw std::invalid_argument("language '" + lang.code + "' has an empty training profile");
    }
    for (const auto& [gram, count] : profile.ngram_counts) {
      (void)count;
      grams.insert(gram);
    }
  }
  event_space_ = grams.size() + 1;  // +1: shared unseen bucket
}

std::vector<std::string> LangIdModel::extract_ngrams(const std::string& text) const {
  std::string padded(static_cast<std::size_t>(order_ - 1), kBoundary);
  padded += text;
  padded.append(static_cast<std::size_t>(order_ - 1), kBoundary);
  std::vector<std::string> grams;
  if (padded.size() < static_cast<std::size_t>(order_)) return grams;
  grams.reserve(padded.size() - static_cast<std::size_t>(order_) + 1);
  for (std::size_t i = 0; i + static_cast<std::size_t>(order_) <= padded.size(); ++i) {
    grams.push_back(padded.substr(i, static_cast<std::size_t>(order_)));
  }
  return grams;
}

double LangIdModel::ngram_log_prob(const LanguageTag& lang, const std::string& gram) const {
  auto pit = profiles_.find(lang);
  if (pit == profiles_.end()) {
    throw std::invalid_argument("unknown language: " + lang.code);
  }
  const Profile& profile = pit->second;
  std::uint64_t count = 0;
  auto git = profile.ngram_counts.find(gram);
  if (git != profile.ngram_counts.end()) count = git->second;
  const double denom =
      static_cast<double>(profile.total) + alpha_ * static_cast<double>(event_space_);
  return std::log((static_cast<double>(count) + alpha_) / denom);
}

std::vector<std::pair<LanguageTag, double>> LangIdModel::scores(const std::string& text) const {
  if (trim(text).empty()) {
    throw std::invalid_argument("cannot identify empty text");
  }
  const auto grams = extract_ngrams(text);
  const double log_prior = -std::log(static_cast<double>(profiles_.size()));
  std::vector<std::pair<LanguageTag, double>> out;
  out.reserve(profiles_.size());
  for (const auto& [lang, profile] : profiles_) {
    (void)profile;
    double score = log_prior;
    for (const auto& gram : grams) score += ngram_log_prob(lang, gram);
    out.emplace_back(lang, score);
  }
  return out;
}

std::pair<LanguageTag, double> LangIdModel::identify(const std::string& text) const {
  auto scored = scores(text);
  // scores() is ordered by language code, so keeping strict improvement
  // implements the lexicographic tie-break.
  std::size_t best = 0;
  for (std::size_t i = 1; i < scored.size(); ++i) {
    if (scored[i].second > scored[best].second) best = i;
  }
  double second = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < scored.size(); ++i) {
    if (i != best && scored[i].second > second) second = scored[i].second;
  }
  return {scored[best].first, scored[best].second - second};
}

std::string LangIdModel::to_json() const {
  nlohmann::json j;
  j["format"] = "offtarget-langid";
  j["version"] = 1;
  j["order"] = order_;
  j["alpha"] = alpha_;
  nlohmann::json profiles = nlohmann::json::object();
  for (const auto& [lang, profile] : profiles_) {
    nlohmann::json counts = nlohmann::json::object();
    for (const auto& [gram, count] : profile.ngram_counts) counts[gram] = count;
    profiles[lang.code] = counts;
  }
  j["profiles"] = profiles;
  return j.dump(2) + "\n";
}

LangIdModel LangIdModel::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  std::map<LanguageTag, Profile> profiles;
  for (const auto& [code, counts] : j.at("profiles").items()) {
    Profile p;
    for (const auto& [gram, count] : counts.items()) {
      p.ngram_counts[gram] = count.get<std::uint64_t>();
      p.total += count.get<std::uint64_t>();
    }
    profiles.emplace(LanguageTag(code), std::move(p));
  }
  return LangIdModel(j.at("order").get<int>(), j.at("alpha").get<double>(), std::move(profiles));
}

void LangIdModel::save(const std::string& path) const { write_file(path, to_json()); }

LangIdModel LangIdModel::load(const std::string& path) { return from_json(read_file(path)); }

LangIdModel train_profiles(const std::map<LanguageTag, std::vector<std::string>>& labeled,
                           int order, double alpha) {
  if (labeled.size() < 2) {
    throw std::invalid_argument("langid training needs at least 2 languages");
  }
  if (order < 1) throw std::invalid_argument("langid order must be >= 1");
  if (alpha <= 0.0) throw std::invalid_argument("langid smoothing must be > 0");

  // Temporary model carries order so extract_ngrams is shared with scoring.
  std::map<LanguageTag, LangIdModel::Profile> profiles;
  LangIdModel extractor(order, alpha,
                        std::map<LanguageTag, LangIdModel::Profile>{});
  for (const auto& [lang, texts] : labeled) {
    LangIdModel::Profile profile;
    for (const auto& text : texts) {
      if (trim(text).empty()) continue;
      for (const auto& gram : extractor.extract_ngrams(text)) {
        ++profile.ngram_counts[gram];
        ++profile.total;
      }
    }
    if (profile.ngram_counts.empty()) {
      throw std::invalid_argument("language '" + lang.code + "' has only empty training texts");
    }
    profiles.emplace(lang, std::move(profile));
  }
  return LangIdModel(order, alpha, std::move(profiles));
}

}  // namespace offtarget

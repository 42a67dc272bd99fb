#include "offtarget/corpus.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "offtarget/rng.h"

namespace offtarget {

namespace {

bool has_whitespace(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

void check_token(const std::string& token, const char* side, std::size_t pair_index) {
  if (token.empty() || has_whitespace(token)) {
    throw std::invalid_argument("pair " + std::to_string(pair_index) + ": " + side +
                                " token empty or contains whitespace");
  }
}

}  // namespace

LanguageTag::LanguageTag(std::string c) : code(std::move(c)) {
  if (code.empty() || has_whitespace(code)) {
    throw std::invalid_argument("language tag must be non-empty without whitespace: '" + code +
                                "'");
  }
}

std::string tag_token(const LanguageTag& lang) { return "<2" + lang.code + ">"; }

void validate_pair(const SentencePair& pair) {
  if (pair.src.empty() || pair.tgt.empty()) {
    throw std::invalid_argument("sentence pair has an empty side");
  }
  if (pair.src_lang == pair.tgt_lang) {
    throw std::invalid_argument("sentence pair declares identical source and target language: " +
                                pair.src_lang.code);
  }
  for (const auto& t : pair.src) check_token(t, "src", 0);
  for (const auto& t : pair.tgt) check_token(t, "tgt", 0);
}

void validate_corpus(const Corpus& corpus) {
  for (std::size_t i = 0; i < corpus.pairs.size(); ++i) {
    const auto& p = corpus.pairs[i];
    if (!corpus.languages.contains(p.src_lang) || !corpus.languages.contains(p.tgt_lang)) {
      throw std::invalid_argument("pair " + std::to_string(i) +
                                  " uses a language missing from the corpus language set");
    }
    validate_pair(p);
  }
}

void validate_spec(const SyntheticSpec& spec) {
  if (spec.languages.size() < 2) {
    throw std::invalid_argument("synthetic spec needs at least 2 languages");
  }
  std::set<LanguageTag> uniq(spec.languages.begin(), spec.languages.end());
  if (uniq.size() != spec.languages.size()) {
    throw std::invalid_argument("synthetic spec languages must be unique");
  }
  if (spec.concept_count <= 0) throw std::invalid_argument("concept_count must be positive");
  if (spec.sentence_count <= 0) throw std::invalid_argument("sentence_count must be positive");
  if (spec.min_len <= 0 || spec.max_len < spec.min_len) {
    throw std::invalid_argument("length range must satisfy 0 < min <= max");
  }
  if (spec.zipf_exponent <= 0.0) throw std::invalid_argument("zipf_exponent must be > 0");
  if (spec.overlap_fraction < 0.0 || spec.overlap_fraction > 1.0) {
    throw std::invalid_argument("overlap_fraction must be in [0,1]");
  }
  double shared = spec.overlap_fraction * spec.concept_count;
  if (std::fabs(shared - std::llround(shared)) > 1e-9) {
    throw std::invalid_argument("overlap_fraction * concept_count must be an integer");
  }
}

std::string synthetic_spec_to_json(const SyntheticSpec& spec) {
  nlohmann::json j;
  j["languages"] = nlohmann::json::array();
  for (const auto& l : spec.languages) j["languages"].push_back(l.code);
  j["concept_count"] = spec.concept_count;
  j["overlap_fraction"] = spec.overlap_fraction;
  j["sentence_count"] = spec.sentence_count;
  j["length_range"] = {spec.min_len, spec.max_len};
  j["zipf_exponent"] = spec.zipf_exponent;
  j["seed"] = spec.seed;
  return j.dump(2) + "\n";
}

SyntheticSpec synthetic_spec_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  SyntheticSpec spec;
  for (const auto& l : j.at("languages")) spec.languages.emplace_back(l.get<std::string>());
  spec.concept_count = j.at("concept_count").get<int>();
  spec.overlap_fraction = j.at("overlap_fraction").get<double>();
  spec.sentence_count = j.at("sentence_count").get<int>();
  spec.min_len = j.at("length_range").at(0).get<int>();
  spec.max_len = j.at("length_range").at(1).get<int>();
  spec.zipf_exponent = j.at("zipf_exponent").get<double>();
  spec.seed = j.at("seed").get<std::uint64_t>();
  validate_spec(spec);
  return spec;
}

SyntheticSpec load_synthetic_spec(const std::string& path) {
  return synthetic_spec_from_json(read_file(path));
}

Corpus load_parallel(const std::string& path, const LanguageTag& src_lang,
                     const LanguageTag& tgt_lang) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open corpus file: " + path);
  Corpus corpus;
  corpus.languages = {src_lang, tgt_lang};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!is_valid_utf8(line)) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": invalid UTF-8");
    }
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected exactly one tab separating source and target");
    }
    SentencePair pair;
    pair.src_lang = src_lang;
    pair.tgt_lang = tgt_lang;
    pair.src = split_whitespace(std::string_view(line).substr(0, tab));
    pair.tgt = split_whitespace(std::string_view(line).substr(tab + 1));
    if (pair.src.empty() || pair.tgt.empty()) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": empty source or target side");
    }
    corpus.pairs.push_back(std::move(pair));
  }
  return corpus;
}

void save_parallel(const Corpus& corpus, const std::string& path) {
  std::ostringstream out;
  for (const auto& p : corpus.pairs) {
    out << join(p.src) << '\t' << join(p.tgt) << '\n';
  }
  write_file(path, out.str());

  nlohmann::json meta;
  if (!corpus.pairs.empty()) {
    meta["src_lang"] = corpus.pairs.front().src_lang.code;
    meta["tgt_lang"] = corpus.pairs.front().tgt_lang.code;
  } else if (corpus.languages.size() == 2) {
    auto it = corpus.languages.begin();
    meta["src_lang"] = it->code;
    meta["tgt_lang"] = std::next(it)->code;
  }
  write_file(path + ".meta.json", meta.dump(2) + "\n");
}

Direction read_sidecar(const std::string& corpus_path) {
  nlohmann::json meta = nlohmann::json::parse(read_file(corpus_path + ".meta.json"));
  return {LanguageTag(meta.at("src_lang").get<std::string>()),
          LanguageTag(meta.at("tgt_lang").get<std::string>())};
}

Corpus tag_corpus(const Corpus& corpus) {
  std::set<std::string> reserved;
  for (const auto& l : corpus.languages) reserved.insert(tag_token(l));

  for (std::size_t i = 0; i < corpus.pairs.size(); ++i) {
    const auto& p = corpus.pairs[i];
    for (const auto& t : p.src) {
      if (reserved.contains(t)) {
        throw std::invalid_argument("pair " + std::to_string(i) + ": source token '" + t +
                                    "' collides with a reserved tag token");
      }
    }
    for (const auto& t : p.tgt) {
      if (reserved.contains(t)) {
        throw std::invalid_argument("pair " + std::to_string(i) + ": target token '" + t +
                                    "' collides with a reserved tag token");
      }
    }
  }

  Corpus tagged = corpus;
  for (auto& p : tagged.pairs) {
    p.src.insert(p.src.begin(), tag_token(p.tgt_lang));
  }
  return tagged;
}

namespace {

// Inclusive-prefix CDF over ranks 1..concept_count with p(k) proportional
// to k^-s.
std::vector<double> zipf_cdf(int concept_count, double exponent) {
  std::vector<double> cdf(static_cast<std::size_t>(concept_count));
  double total = 0.0;
  for (int k = 1; k <= concept_count; ++k) {
    total += std::pow(static_cast<double>(k), -exponent);
    cdf[static_cast<std::size_t>(k - 1)] = total;
  }
  for (auto& v : cdf) v /= total;
  cdf.back() = 1.0;
  return cdf;
}

int sample_concept(const std::vector<double>& cdf, double u) {
  auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
  if (it == cdf.end()) --it;
  return static_cast<int>(it - cdf.begin()) + 1;  // 1-based rank
}

std::string render_concept(const LanguageTag& lang, int rank, int shared_count) {
  if (rank <= shared_count) return "sh_" + std::to_string(rank);
  return lang.code + "_" + std::to_string(rank);
}

}  // namespace

std::map<Direction, Corpus> generate_synthetic(const SyntheticSpec& spec) {
  validate_spec(spec);
  const int shared_count =
      static_cast<int>(std::llround(spec.overlap_fraction * spec.concept_count));
  const auto cdf = zipf_cdf(spec.concept_count, spec.zipf_exponent);

  std::map<Direction, Corpus> out;
  for (const auto& src_lang : spec.languages) {
    for (const auto& tgt_lang : spec.languages) {
      if (src_lang == tgt_lang) continue;
      Direction dir{src_lang, tgt_lang};
      Corpus corpus;
      corpus.languages = {src_lang, tgt_lang};
      corpus.pairs.reserve(static_cast<std::size_t>(spec.sentence_count));
      const std::uint64_t dir_key = fnv1a64(direction_name(dir));
      for (int i = 0; i < spec.sentence_count; ++i) {
        SplitMix64 rng(mix_key(spec.seed, dir_key, static_cast<std::uint64_t>(i)));
        const int len =
            spec.min_len +
            static_cast<int>(rng.next_below(static_cast<std::uint64_t>(spec.max_len - spec.min_len + 1)));
        SentencePair pair;
        pair.src_lang = src_lang;
        pair.tgt_lang = tgt_lang;
        pair.src.reserve(static_cast<std::size_t>(len));
        pair.tgt.reserve(static_cast<std::size_t>(len));
        for (int t = 0; t < len; ++t) {
          int concept = sample_concept(cdf, rng.next_double());
          pair.src.push_back(render_concept(src_lang, concept, shared_count));
          pair.tgt.push_back(render_concept(tgt_lang, concept, shared_count));
        }
        corpus.pairs.push_back(std::move(pair));
      }
      out.emplace(std::move(dir), std::move(corpus));
    }
  }
  return out;
}

NoiseInjection inject_noise(const Corpus& corpus, double copy_ratio, double misalign_ratio,
                            std::uint64_t seed) {
  if (copy_ratio < 0.0 || misalign_ratio < 0.0 || copy_ratio + misalign_ratio > 1.0) {
    throw std::invalid_argument("noise ratios must be non-negative and sum to at most 1");
  }
  const std::size_t n = corpus.pairs.size();
  // Tolerant floor so ratios like 0.29 * 100 land on the intended count.
  const auto copy_count =
      static_cast<std::size_t>(std::floor(copy_ratio * static_cast<double>(n) + 1e-9));
  const auto misalign_count =
      static_cast<std::size_t>(std::floor(misalign_ratio * static_cast<double>(n) + 1e-9));

  // Seeded partial Fisher-Yates: the first copy_count positions become copies,
  // the next misalign_count become misalignments. Disjoint by construction.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  SplitMix64 rng(mix_key(seed, 0x6e6f697365ULL));  // "noise"
  for (std::size_t i = 0; i + 1 < n && i < copy_count + misalign_count; ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng.next_below(n - i));
    std::swap(order[i], order[j]);
  }

  NoiseInjection result;
  result.corpus = corpus;
  result.copy_indices.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(copy_count));
  result.misalign_indices.assign(order.begin() + static_cast<std::ptrdiff_t>(copy_count),
                                 order.begin() + static_cast<std::ptrdiff_t>(copy_count + misalign_count));
  std::sort(result.copy_indices.begin(), result.copy_indices.end());
  std::sort(result.misalign_indices.begin(), result.misalign_indices.end());

  for (std::size_t idx : result.copy_indices) {
    result.corpus.pairs[idx].tgt = result.corpus.pairs[idx].src;
  }
  for (std::size_t idx : result.misalign_indices) {
    // Donor source must differ from this pair's source, otherwise the result
    // would be indistinguishable from a copy.
    std::size_t donor = idx;
    bool found = false;
    for (int attempt = 0; attempt < 64; ++attempt) {
      std::size_t j = static_cast<std::size_t>(rng.next_below(n));
      if (j != idx && corpus.pairs[j].src != corpus.pairs[idx].src) {
        donor = j;
        found = true;
        break;
      }
    }
    if (!found) {
      for (std::size_t j = 0; j < n; ++j) {
        if (j != idx && corpus.pairs[j].src != corpus.pairs[idx].src) {
          donor = j;
          found = true;
          break;
        }
      }
    }
    if (!found) {
      throw std::runtime_error("cannot construct Source-Misalign noise: all sources identical");
    }
    result.corpus.pairs[idx].tgt = corpus.pairs[donor].src;
  }
  return result;
}

}  // namespace offtarget

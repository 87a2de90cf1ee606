#include "colorbasis/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "colorbasis/error.hpp"
#include "colorbasis/text.hpp"

namespace colorbasis {

namespace {

struct Path {
  double score = 0.0;
  std::vector<std::size_t> cuts;  // scalar index where each segment ends
};

std::vector<std::string_view> pieces(std::string_view word, const std::vector<std::size_t>& offsets,
                                     const std::vector<std::size_t>& cuts) {
  std::vector<std::string_view> out;
  out.reserve(cuts.size());
  std::size_t start = 0;
  for (auto end : cuts) {
    out.push_back(word.substr(offsets[start], offsets[end] - offsets[start]));
    start = end;
  }
  return out;
}

// Viterbi over scalar end positions. `logp` scores one segment.
template <typename LogProb>
Path best_path(std::string_view word, const std::vector<std::size_t>& offsets,
               std::size_t max_len, LogProb&& logp) {
  const std::size_t n = offsets.size() - 1;
  std::vector<Path> best(n + 1);
  for (std::size_t j = 1; j <= n; ++j) {
    const std::size_t lo = (max_len == 0 || j <= max_len) ? 0 : j - max_len;
    bool have = false;
    for (std::size_t i = lo; i < j; ++i) {
      Path cand;
      cand.score = best[i].score +
                   logp(word.substr(offsets[i], offsets[j] - offsets[i]));
      cand.cuts = best[i].cuts;
      cand.cuts.push_back(j);
      if (!have) {
        best[j] = std::move(cand);
        have = true;
        continue;
      }
      const Path& cur = best[j];
      bool better;
      if (!scores_tied(cand.score, cur.score)) {
        better = cand.score > cur.score;
      } else if (cand.cuts.size() != cur.cuts.size()) {
        better = cand.cuts.size() < cur.cuts.size();
      } else {
        better = pieces(word, offsets, cand.cuts) < pieces(word, offsets, cur.cuts);
      }
      if (better) best[j] = std::move(cand);
    }
  }
  return std::move(best[n]);
}

Segmentation to_segmentation(std::string_view word, const std::vector<std::size_t>& offsets,
                             const Path& path) {
  Segmentation seg;
  seg.word = std::string(word);
  seg.log_prob = path.score;
  for (auto p : pieces(word, offsets, path.cuts)) seg.segments.emplace_back(p);
  return seg;
}

void check_word(std::string_view word) {
  if (word.empty()) throw ConfigError("cannot segment an empty word");
  if (word.find_first_of(std::string(kBoundaryBegin) + std::string(kBoundaryEnd)) !=
      std::string_view::npos)
    throw DataError("word contains a reserved boundary marker");
}

}  // namespace

bool scores_tied(double a, double b) {
  if (a == b) return true;
  if (!std::isfinite(a) || !std::isfinite(b)) return false;
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= kScoreTieTolerance * scale;
}

SegmentModel SegmentModel::from_counts(LanguageCode language,
                                       std::map<std::string, std::int64_t> counts, double alpha,
                                       std::size_t vocab_size, std::size_t max_segment_len) {
  if (!(alpha > 0.0)) throw ConfigError("alpha must be positive");
  std::int64_t total = 0;
  for (auto it = counts.begin(); it != counts.end();) {
    if (it->second < 0) throw ConfigError("negative segment count for '" + it->first + "'");
    if (it->second == 0) {
      it = counts.erase(it);
      continue;
    }
    total += it->second;
    ++it;
  }
  if (vocab_size < std::max<std::size_t>(counts.size(), 1))
    throw ConfigError("vocabulary size smaller than the number of counted segments");
  SegmentModel m;
  m.kind_ = Kind::kCounts;
  m.language_ = std::move(language);
  m.alpha_ = alpha;
  m.vocab_size_ = vocab_size;
  m.total_ = total;
  m.max_segment_len_ = max_segment_len;
  m.counts_ = std::move(counts);
  return m;
}

SegmentModel SegmentModel::from_probabilities(std::map<std::string, double> probs, double unseen) {
  for (const auto& [s, p] : probs) {
    if (s.empty() || !(p > 0.0) || p > 1.0)
      throw ConfigError("segment probabilities must lie in (0, 1]");
  }
  if (unseen < 0.0 || unseen > 1.0) throw ConfigError("unseen probability must lie in [0, 1]");
  SegmentModel m;
  m.kind_ = Kind::kTable;
  m.table_ = std::move(probs);
  m.unseen_ = unseen;
  return m;
}

double SegmentModel::probability(std::string_view segment) const {
  switch (kind_) {
    case Kind::kCounts: {
      auto it = counts_.find(std::string(segment));
      const double c = it == counts_.end() ? 0.0 : static_cast<double>(it->second);
      return (c + alpha_) / (static_cast<double>(total_) + alpha_ * static_cast<double>(vocab_size_));
    }
    case Kind::kTable: {
      auto it = table_.find(std::string(segment));
      return it == table_.end() ? unseen_ : it->second;
    }
    case Kind::kEmpty:
      break;
  }
  throw ConfigError("segment model is untrained");
}

double SegmentModel::log_probability(std::string_view segment) const {
  const double p = probability(segment);
  return p > 0.0 ? std::log(p) : -std::numeric_limits<double>::infinity();
}

double segment_probability(const SegmentModel& model, std::string_view segment) {
  if (segment.empty()) throw ConfigError("segment must be non-empty");
  return model.probability(segment);
}

Segmentation viterbi_segment(const SegmentModel& model, std::string_view word) {
  if (word.empty()) throw ConfigError("cannot segment an empty word");
  if (model.empty()) throw ConfigError("segment model is untrained");
  const auto offsets = text::scalar_offsets(word);
  const Path path = best_path(word, offsets, model.max_segment_len(),
                              [&](std::string_view s) { return model.log_probability(s); });
  return to_segmentation(word, offsets, path);
}

SegmentModel train_segmenter(const std::vector<std::string>& words,
                             const SegmenterOptions& options, LanguageCode language) {
  if (words.empty()) throw ConfigError("cannot train a segmenter on an empty word list");
  if (!(options.alpha > 0.0)) throw ConfigError("alpha must be positive");
  if (options.max_iters < 1) throw ConfigError("max_iters must be at least 1");
  if (options.max_segment_len < 1) throw ConfigError("max_segment_len must be at least 1");

  struct Type {
    std::string word;
    std::vector<std::size_t> offsets;
    std::int64_t multiplicity = 0;
    std::vector<std::string> segments;  // current analysis
  };

  std::map<std::string, std::int64_t> multiplicity;
  for (const auto& w : words) {
    check_word(w);
    ++multiplicity[text::nfc(w)];
  }
  std::vector<Type> types;
  types.reserve(multiplicity.size());
  for (auto& [w, m] : multiplicity) types.push_back({w, text::scalar_offsets(w), m, {}});

  const std::size_t max_len = options.max_segment_len;
  auto substrings = [max_len](const Type& t) {
    std::vector<std::string> out;
    const std::size_t n = t.offsets.size() - 1;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j <= std::min(n, i + max_len); ++j)
        out.push_back(t.word.substr(t.offsets[i], t.offsets[j] - t.offsets[i]));
    return out;
  };

  std::set<std::string> universe;
  std::unordered_map<std::string, std::int64_t> counts;
  std::int64_t total = 0;
  for (const auto& t : types) {
    for (auto& s : substrings(t)) {
      counts[s] += t.multiplicity;
      total += t.multiplicity;
      universe.insert(std::move(s));
    }
  }
  const double alpha = options.alpha;
  const double alpha_v = alpha * static_cast<double>(universe.size());

  for (int iter = 0; iter < options.max_iters; ++iter) {
    std::unordered_map<std::string, std::int64_t> next_counts;
    std::int64_t next_total = 0;
    bool changed = false;
    for (auto& t : types) {
      // Hold out one token's own contribution from the current counts.
      std::unordered_map<std::string, std::int64_t> own;
      std::int64_t own_total = 0;
      for (auto& s : iter == 0 ? substrings(t) : t.segments) {
        ++own[s];
        ++own_total;
      }
      const double denom = static_cast<double>(total - own_total) + alpha_v;
      auto logp = [&](std::string_view seg) {
        const std::string key(seg);
        auto c = counts.find(key);
        double n = c == counts.end() ? 0.0 : static_cast<double>(c->second);
        if (auto o = own.find(key); o != own.end()) n -= static_cast<double>(o->second);
        return std::log((n + alpha) / denom);
      };
      const Path path = best_path(t.word, t.offsets, max_len, logp);
      std::vector<std::string> segs;
      for (auto p : pieces(t.word, t.offsets, path.cuts)) segs.emplace_back(p);
      if (iter == 0 || segs != t.segments) changed = true;
      t.segments = std::move(segs);
      for (const auto& s : t.segments) {
        next_counts[s] += t.multiplicity;
        next_total += t.multiplicity;
      }
    }
    counts = std::move(next_counts);
    total = next_total;
    if (!changed) break;
  }

  std::map<std::string, std::int64_t> final_counts(counts.begin(), counts.end());
  SegmentModel model = SegmentModel::from_counts(std::move(language), std::move(final_counts),
                                                 alpha, universe.size(), max_len);
  model.universe_ = std::move(universe);
  return model;
}

std::string_view to_string(AffixPosition p) {
  return p == AffixPosition::kPrefix ? "prefix" : "suffix";
}

std::string_view to_string(AffixClass c) {
  switch (c) {
    case AffixClass::kColorSpecific:
      return "color-specific";
    case AffixClass::kGeneralDerivational:
      return "general-derivational";
    case AffixClass::kNeither:
      break;
  }
  return "neither";
}

AffixClass classify_affix(double color_coverage, double global_coverage,
                          const AffixThresholds& t) {
  if (color_coverage < t.min_color_coverage) return AffixClass::kNeither;
  if (color_coverage / std::max(global_coverage, t.epsilon) >= t.specificity_ratio)
    return AffixClass::kColorSpecific;
  if (global_coverage >= t.min_global_coverage) return AffixClass::kGeneralDerivational;
  return AffixClass::kNeither;
}

std::vector<Affix> discover_affixes(const SegmentModel& model,
                                    const std::vector<std::string>& color_words,
                                    const std::vector<std::string>& all_words,
                                    const AffixThresholds& thresholds) {
  if (model.empty()) throw ConfigError("affix discovery needs a trained segment model");
  const std::set<std::string> colors(color_words.begin(), color_words.end());
  std::set<std::string> everything(all_words.begin(), all_words.end());
  everything.insert(colors.begin(), colors.end());
  if (colors.empty()) return {};

  using Key = std::pair<AffixPosition, std::string>;
  std::map<Key, std::size_t> color_hits, global_hits;
  for (const auto& w : everything) {
    const auto seg = viterbi_segment(model, w);
    if (seg.segments.size() < 2) continue;
    const bool is_color = colors.count(w) > 0;
    const Key pre{AffixPosition::kPrefix, seg.segments.front()};
    const Key suf{AffixPosition::kSuffix, seg.segments.back()};
    ++global_hits[pre];
    ++global_hits[suf];
    if (is_color) {
      ++color_hits[pre];
      ++color_hits[suf];
    }
  }

  std::vector<Affix> out;
  for (const auto& [key, n] : color_hits) {
    if (n < thresholds.min_support) continue;
    Affix a;
    a.position = key.first;
    a.form = key.second;
    a.language = model.language();
    a.color_count = n;
    a.global_count = global_hits[key];
    a.color_coverage = static_cast<double>(n) / static_cast<double>(colors.size());
    a.global_coverage = static_cast<double>(a.global_count) / static_cast<double>(everything.size());
    a.affix_class = classify_affix(a.color_coverage, a.global_coverage, thresholds);
    out.push_back(std::move(a));
  }
  std::sort(out.begin(), out.end(), [](const Affix& a, const Affix& b) {
    if (a.position != b.position) return a.position < b.position;
    if (a.color_count != b.color_count) return a.color_count > b.color_count;
    return a.form < b.form;
  });
  return out;
}

AffixPresence affix_presence_feature(const std::vector<ColorConcept>& colors,
                                     const std::map<LanguageCode, SegmentModel>& models,
                                     const TranslationTable& table,
                                     const std::vector<std::string>& bootstrap_ranking,
                                     const AffixPresenceOptions& options) {
  if (bootstrap_ranking.size() < options.top_n)
    throw DataError("bootstrap ranking has " + std::to_string(bootstrap_ranking.size()) +
                    " colors; affix presence needs the top " + std::to_string(options.top_n));
  const std::vector<std::string> top(bootstrap_ranking.begin(),
                                     bootstrap_ranking.begin() + static_cast<long>(options.top_n));
  const auto languages = table.languages();

  // Final segment of each (language, word), if the word has more than one.
  std::map<std::pair<LanguageCode, std::string>, std::optional<std::string>> suffix_of;
  auto suffix = [&](const LanguageCode& lang, const std::string& word) -> std::optional<std::string> {
    auto key = std::make_pair(lang, word);
    if (auto it = suffix_of.find(key); it != suffix_of.end()) return it->second;
    std::optional<std::string> s;
    if (auto m = models.find(lang); m != models.end() && !m->second.empty()) {
      auto seg = viterbi_segment(m->second, word);
      if (seg.segments.size() >= 2) s = seg.segments.back();
    }
    suffix_of.emplace(key, s);
    return s;
  };

  AffixPresence result;
  for (const auto& lang : languages) {
    std::map<std::string, std::set<std::string>> supporters;  // suffix -> top colors
    for (const auto& color : top) {
      for (const auto& w : table.forward(color, lang)) {
        if (auto s = suffix(lang, w)) supporters[*s].insert(color);
      }
    }
    for (const auto& [s, cs] : supporters) {
      if (cs.size() >= options.min_supporting_colors) result.strong_suffixes[lang].insert(s);
    }
  }

  for (const auto& c : colors) {
    std::size_t pairs = 0, hits = 0;
    for (const auto& lang : languages) {
      auto strong = result.strong_suffixes.find(lang);
      for (const auto& w : table.forward(c.term, lang)) {
        ++pairs;
        if (strong == result.strong_suffixes.end()) continue;
        if (auto s = suffix(lang, w); s && strong->second.count(*s)) ++hits;
      }
    }
    result.scores[c.term] =
        pairs == 0 ? std::nullopt
                   : std::optional<double>(static_cast<double>(hits) / static_cast<double>(pairs));
  }
  return result;
}

}  // namespace colorbasis

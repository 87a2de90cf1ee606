#pragma once

// Unigram morphological segmentation: words are split into segments whose
// probabilities are Dirichlet-smoothed estimates, decoded with Viterbi.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "colorbasis/lexicon.hpp"

namespace colorbasis {

struct SegmenterOptions {
  double alpha = 0.01;
  int max_iters = 20;
  std::size_t max_segment_len = 8;  // in Unicode scalars
};

class SegmentModel {
 public:
  SegmentModel() = default;

  // Smoothed estimate (count + alpha) / (total + alpha * vocab_size).
  // `max_segment_len` bounds decoding; 0 leaves it unbounded.
  static SegmentModel from_counts(LanguageCode language, std::map<std::string, std::int64_t> counts,
                                  double alpha, std::size_t vocab_size,
                                  std::size_t max_segment_len = 0);

  // A fixed probability table; segments outside it get `unseen` (0 allowed).
  static SegmentModel from_probabilities(std::map<std::string, double> probs, double unseen = 0.0);

  double probability(std::string_view segment) const;
  double log_probability(std::string_view segment) const;

  bool empty() const { return kind_ == Kind::kEmpty; }
  const LanguageCode& language() const { return language_; }
  double alpha() const { return alpha_; }
  std::size_t vocab_size() const { return vocab_size_; }
  std::int64_t total() const { return total_; }
  std::size_t max_segment_len() const { return max_segment_len_; }
  const std::map<std::string, std::int64_t>& counts() const { return counts_; }
  // Event space the Dirichlet prior ranges over; filled by training only.
  const std::set<std::string>& universe() const { return universe_; }

 private:
  friend SegmentModel train_segmenter(const std::vector<std::string>&, const SegmenterOptions&,
                                      LanguageCode);
  enum class Kind { kEmpty, kCounts, kTable };

  Kind kind_ = Kind::kEmpty;
  LanguageCode language_;
  double alpha_ = 0.0;
  std::size_t vocab_size_ = 0;
  std::int64_t total_ = 0;
  std::size_t max_segment_len_ = 0;
  std::map<std::string, std::int64_t> counts_;
  std::map<std::string, double> table_;
  double unseen_ = 0.0;
  std::set<std::string> universe_;
};

struct Segmentation {
  std::string word;
  std::vector<std::string> segments;
  double log_prob = 0.0;
};

// Characters reserved for the virtual word-boundary markers.
inline constexpr std::string_view kBoundaryBegin = "\x02";
inline constexpr std::string_view kBoundaryEnd = "\x03";

// Hard-EM training (Viterbi re-segmentation, then count re-estimation) until
// no segmentation changes or `max_iters` passes. Each word is decoded against
// counts with its own previous contribution held out.
SegmentModel train_segmenter(const std::vector<std::string>& words,
                             const SegmenterOptions& options = {}, LanguageCode language = {});

double segment_probability(const SegmentModel& model, std::string_view segment);

// Highest-probability segmentation. Ties (equal log-probability up to rounding)
// go to fewer segments, then to the lexicographically smaller segment list.
Segmentation viterbi_segment(const SegmentModel& model, std::string_view word);

// Relative tolerance under which two log-probabilities count as tied.
inline constexpr double kScoreTieTolerance = 1e-11;
bool scores_tied(double a, double b);

enum class AffixPosition { kPrefix, kSuffix };
enum class AffixClass { kColorSpecific, kGeneralDerivational, kNeither };

std::string_view to_string(AffixPosition p);
std::string_view to_string(AffixClass c);

struct AffixThresholds {
  std::size_t min_support = 2;  // color words carrying the affix
  double min_color_coverage = 0.2;
  double specificity_ratio = 5.0;
  double min_global_coverage = 0.1;
  double epsilon = 1e-9;
};

struct Affix {
  std::string form;
  AffixPosition position = AffixPosition::kSuffix;
  LanguageCode language;
  double color_coverage = 0.0;
  double global_coverage = 0.0;
  AffixClass affix_class = AffixClass::kNeither;
  std::size_t color_count = 0;
  std::size_t global_count = 0;
};

AffixClass classify_affix(double color_coverage, double global_coverage,
                          const AffixThresholds& thresholds = {});

// Affixes are the first (prefix) or last (suffix) Viterbi segment of a word
// with at least two segments. Color words are added to `all_words` if absent.
std::vector<Affix> discover_affixes(const SegmentModel& model,
                                    const std::vector<std::string>& color_words,
                                    const std::vector<std::string>& all_words,
                                    const AffixThresholds& thresholds = {});

struct AffixPresenceOptions {
  std::size_t top_n = 10;
  std::size_t min_supporting_colors = 2;
};

struct AffixPresence {
  std::map<std::string, std::optional<double>> scores;  // missing: no translations
  std::map<LanguageCode, std::set<std::string>> strong_suffixes;
};

// Fraction of each color's (language, translation) pairs whose segmentation
// ends in a suffix shared by the translations of at least two top-ranked
// colors in that language. Languages without a model contribute no matches.
AffixPresence affix_presence_feature(const std::vector<ColorConcept>& colors,
                                     const std::map<LanguageCode, SegmentModel>& models,
                                     const TranslationTable& table,
                                     const std::vector<std::string>& bootstrap_ranking,
                                     const AffixPresenceOptions& options = {});

}  // namespace colorbasis

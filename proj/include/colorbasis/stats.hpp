#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "colorbasis/features.hpp"
#include "colorbasis/lexicon.hpp"

namespace colorbasis {

struct GammaResult {
  double gamma = 0.0;
  std::size_t concordant = 0;
  std::size_t discordant = 0;
  std::size_t tied = 0;  // pairs tied in either series
};

// Goodman-Kruskal gamma over all unordered index pairs. Throws ConfigError on
// mismatched or too-short input and UndefinedError when every pair is tied.
GammaResult gamma(std::span<const double> x, std::span<const double> y);

enum class Direction { kPositive, kNegated };

using Directions = std::map<std::string, Direction, std::less<>>;

// Features where a smaller value indicates basicness are negated.
Directions default_directions();
Direction direction_of(const Directions& directions, std::string_view feature);

// Min-max scaling to [0, 1], flipped for negated features. Throws
// UndefinedError for a constant column.
std::vector<double> normalize_feature(std::span<const double> values, Direction direction);

struct AggregateOptions {
  // Columns passed through log1p before scaling.
  std::set<std::string, std::less<>> log1p_columns = {"ngram-frequency"};
};

struct AggregateRanking {
  std::vector<std::string> colors;  // best first
  std::vector<double> scores;       // aligned with `colors`, top = 1
  std::vector<double> row_scores;   // aligned with the matrix rows
  std::vector<std::string> features;
  std::vector<std::string> degenerate;  // constant columns, contributing 0
  Directions directions;
};

// Unweighted mean of the normalized `subset` columns, rescaled so the top
// color scores 1. Ties keep matrix row order.
AggregateRanking aggregate(const FeatureMatrix& matrix, const Directions& directions,
                           const std::vector<std::string>& subset,
                           const AggregateOptions& options = {});

struct TwoPassAggregate {
  AggregateRanking bootstrap;
  AggregateRanking final;
  FeatureMatrix matrix;  // all fourteen columns
};

// Produces the affix-presence column from the bootstrap ranking's color order.
using AffixColumnProvider = std::function<FeatureColumn(const std::vector<std::string>& ranking)>;

// Pass one ranks on every column of `base` except affix presence; its order
// parameterizes the affix column; pass two ranks on all fourteen.
TwoPassAggregate bootstrap_then_full_aggregate(const FeatureMatrix& base,
                                               const Directions& directions,
                                               const AffixColumnProvider& affix_column,
                                               const AggregateOptions& options = {});

// Negated acquisition stage: basic terms -1..-6, secondary terms -7.
inline constexpr int kSecondaryStage = 7;
std::vector<double> sequence_target(const std::vector<ColorConcept>& colors);
std::vector<double> basicness_target(const std::vector<ColorConcept>& colors);

// Concepts for the matrix rows, in row order.
std::vector<ColorConcept> concepts_for(const FeatureMatrix& matrix,
                                       const std::vector<ColorConcept>& colors);

struct RfeStep {
  std::string removed;  // empty for the starting set
  std::vector<std::string> features;
  double gamma = 0.0;
};

struct RfeResult {
  std::vector<RfeStep> trajectory;
  const RfeStep& best() const { return trajectory.back(); }
};

// Gamma of the aggregate over `features` against `target`; nullopt if undefined.
std::optional<double> subset_gamma(const FeatureMatrix& matrix, std::span<const double> target,
                                   const Directions& directions,
                                   const std::vector<std::string>& features,
                                   const AggregateOptions& options = {});

// Greedy backward elimination: drop the feature whose removal gives the highest
// gamma (ties: smallest name) while that strictly improves on the current set.
RfeResult rfe(const FeatureMatrix& matrix, std::span<const double> target,
              const Directions& directions, const AggregateOptions& options = {},
              std::size_t jobs = 1);

}  // namespace colorbasis

#include "colorbasis/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "colorbasis/error.hpp"
#include "colorbasis/parallel.hpp"

namespace colorbasis {

GammaResult gamma(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ConfigError("gamma: series lengths differ");
  if (x.size() < 2) throw ConfigError("gamma: need at least two observations");
  GammaResult r;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const double dx = x[i] - x[j];
      const double dy = y[i] - y[j];
      if (dx == 0.0 || dy == 0.0) {
        ++r.tied;
      } else if ((dx > 0.0) == (dy > 0.0)) {
        ++r.concordant;
      } else {
        ++r.discordant;
      }
    }
  }
  const auto s = static_cast<double>(r.concordant);
  const auto d = static_cast<double>(r.discordant);
  if (s + d == 0.0) throw UndefinedError("gamma undefined: every pair is tied");
  r.gamma = (s - d) / (s + d);
  return r;
}

Directions default_directions() {
  Directions d;
  for (auto name : kFeatureNames) d.emplace(std::string(name), Direction::kPositive);
  for (auto name : {"word-concreteness", "translation-concreteness", "word-length",
                    "compound-frequency", "borrowing"})
    d[name] = Direction::kNegated;
  return d;
}

Direction direction_of(const Directions& directions, std::string_view feature) {
  auto it = directions.find(feature);
  return it == directions.end() ? Direction::kPositive : it->second;
}

std::vector<double> normalize_feature(std::span<const double> values, Direction direction) {
  if (values.empty()) throw ConfigError("cannot normalize an empty column");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double min = *lo, max = *hi;
  if (!(max > min)) throw UndefinedError("cannot normalize a constant column");
  std::vector<double> out;
  out.reserve(values.size());
  for (double v : values) {
    const double scaled = (v - min) / (max - min);
    out.push_back(direction == Direction::kNegated ? 1.0 - scaled : scaled);
  }
  return out;
}

AggregateRanking aggregate(const FeatureMatrix& matrix, const Directions& directions,
                           const std::vector<std::string>& subset,
                           const AggregateOptions& options) {
  if (subset.empty()) throw ConfigError("aggregate: empty feature subset");
  if (matrix.rows() == 0) throw DataError("aggregate: empty feature matrix");
  AggregateRanking r;
  r.features = subset;
  r.row_scores.assign(matrix.rows(), 0.0);
  for (const auto& name : subset) {
    auto column = matrix.column(name);
    if (options.log1p_columns.count(name))
      for (auto& v : column) v = std::log1p(v);
    const Direction dir = direction_of(directions, name);
    r.directions[name] = dir;
    const auto [lo, hi] = std::minmax_element(column.begin(), column.end());
    if (!(*hi > *lo)) {
      r.degenerate.push_back(name);
      continue;
    }
    const auto norm = normalize_feature(column, dir);
    for (std::size_t i = 0; i < norm.size(); ++i) r.row_scores[i] += norm[i];
  }
  if (r.degenerate.size() == subset.size())
    throw UndefinedError("aggregate: every selected column is constant");
  for (auto& s : r.row_scores) s /= static_cast<double>(subset.size());
  const double top = *std::max_element(r.row_scores.begin(), r.row_scores.end());
  if (top > 0.0)
    for (auto& s : r.row_scores) s /= top;

  std::vector<std::size_t> order(matrix.rows());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return r.row_scores[a] > r.row_scores[b];
  });
  for (auto i : order) {
    r.colors.push_back(matrix.colors()[i]);
    r.scores.push_back(r.row_scores[i]);
  }
  return r;
}

TwoPassAggregate bootstrap_then_full_aggregate(const FeatureMatrix& base,
                                               const Directions& directions,
                                               const AffixColumnProvider& affix_column,
                                               const AggregateOptions& options) {
  std::vector<std::string> first;
  for (const auto& c : base.columns())
    if (c != kAffixPresence) first.push_back(c);
  TwoPassAggregate out;
  out.bootstrap = aggregate(base, directions, first, options);

  FeatureMatrix full = base;
  if (!base.has_column(kAffixPresence)) {
    const FeatureColumn column = affix_column(out.bootstrap.colors);
    if (column.name != kAffixPresence)
      throw DataError("affix provider returned column '" + column.name + "'");
    full = with_column(base, column);
  }
  if (!has_all_features(full))
    throw DataError("second aggregation pass needs all fourteen feature columns");
  out.final = aggregate(full, directions, full.columns(), options);
  out.matrix = std::move(full);
  return out;
}

std::vector<double> sequence_target(const std::vector<ColorConcept>& colors) {
  std::vector<double> out;
  out.reserve(colors.size());
  for (const auto& c : colors) {
    if (c.is_basic && !c.bk_stage)
      throw ConfigError("basic color '" + c.term + "' has no acquisition stage");
    out.push_back(-static_cast<double>(c.is_basic ? *c.bk_stage : kSecondaryStage));
  }
  return out;
}

std::vector<double> basicness_target(const std::vector<ColorConcept>& colors) {
  std::vector<double> out;
  out.reserve(colors.size());
  for (const auto& c : colors) out.push_back(c.is_basic ? 1.0 : 0.0);
  return out;
}

std::vector<ColorConcept> concepts_for(const FeatureMatrix& matrix,
                                       const std::vector<ColorConcept>& colors) {
  std::vector<ColorConcept> out;
  for (const auto& name : matrix.colors()) {
    auto it = std::find_if(colors.begin(), colors.end(),
                           [&](const ColorConcept& c) { return c.term == name; });
    if (it == colors.end()) throw DataError("color '" + name + "' is not in the seed list");
    out.push_back(*it);
  }
  return out;
}

std::optional<double> subset_gamma(const FeatureMatrix& matrix, std::span<const double> target,
                                   const Directions& directions,
                                   const std::vector<std::string>& features,
                                   const AggregateOptions& options) {
  try {
    const auto ranking = aggregate(matrix, directions, features, options);
    return gamma(ranking.row_scores, target).gamma;
  } catch (const UndefinedError&) {
    return std::nullopt;
  }
}

RfeResult rfe(const FeatureMatrix& matrix, std::span<const double> target,
              const Directions& directions, const AggregateOptions& options, std::size_t jobs) {
  if (target.size() != matrix.rows()) throw ConfigError("rfe: target length differs from matrix");
  std::vector<std::string> current = matrix.columns();
  if (current.size() < 2) throw ConfigError("rfe needs at least two features");
  auto start = subset_gamma(matrix, target, directions, current, options);
  if (!start) throw UndefinedError("rfe: gamma of the full feature set is undefined");

  RfeResult result;
  result.trajectory.push_back({"", current, *start});
  while (current.size() > 1) {
    std::vector<std::optional<double>> scores(current.size());
    parallel_for(current.size(), jobs, [&](std::size_t i) {
      std::vector<std::string> without;
      for (std::size_t j = 0; j < current.size(); ++j)
        if (j != i) without.push_back(current[j]);
      scores[i] = subset_gamma(matrix, target, directions, without, options);
    });
    std::optional<std::size_t> pick;
    for (std::size_t i = 0; i < current.size(); ++i) {
      if (!scores[i]) continue;
      if (!pick || *scores[i] > *scores[*pick] ||
          (*scores[i] == *scores[*pick] && current[i] < current[*pick]))
        pick = i;
    }
    if (!pick || !(*scores[*pick] > result.trajectory.back().gamma)) break;
    const std::string removed = current[*pick];
    current.erase(current.begin() + static_cast<long>(*pick));
    result.trajectory.push_back({removed, current, *scores[*pick]});
  }
  return result;
}

}  // namespace colorbasis

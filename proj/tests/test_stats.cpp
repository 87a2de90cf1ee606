#include <doctest.h>

#include <algorithm>
#include <random>

#include "colorbasis/error.hpp"
#include "colorbasis/stats.hpp"
#include "oracles.hpp"

using namespace colorbasis;

namespace {

FeatureMatrix matrix_of(std::vector<std::string> colors, std::vector<std::string> columns,
                        std::vector<std::vector<double>> rows) {
  std::vector<std::vector<bool>> mask(rows.size(), std::vector<bool>(columns.size(), false));
  return FeatureMatrix(std::move(colors), std::move(columns), std::move(rows), std::move(mask));
}

double gamma_of(std::vector<double> x, std::vector<double> y) { return gamma(x, y).gamma; }

}  // namespace

TEST_CASE("gamma closed cases") {
  CHECK(gamma_of({1, 1, 0, 0}, {4, 3, 2, 1}) == 1.0);
  CHECK(gamma_of({1, 2, 3, 4}, {4, 3, 2, 1}) == -1.0);
  const auto g = gamma(std::vector<double>{1, 0, 1, 0}, std::vector<double>{4, 3, 2, 1});
  CHECK(g.concordant == 3);
  CHECK(g.discordant == 1);
  CHECK(g.gamma == 0.5);
  CHECK_THROWS_AS(gamma_of({1, 1}, {5, 5}), UndefinedError);
  CHECK_THROWS_AS(gamma_of({1, 2}, {5}), ConfigError);
}

TEST_CASE("gamma matches pair counting on random tied series") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 30;
    std::vector<double> x(n), y(n);
    for (auto& v : x) v = static_cast<double>(rng() % 5);
    for (auto& v : y) v = static_cast<double>(rng() % 4);
    const auto want = oracle::count_pairs(x, y);
    if (want.concordant + want.discordant == 0) {
      CHECK_THROWS_AS(gamma(x, y), UndefinedError);
      continue;
    }
    const auto got = gamma(x, y);
    REQUIRE(static_cast<long>(got.concordant) == want.concordant);
    REQUIRE(static_cast<long>(got.discordant) == want.discordant);
    REQUIRE(got.gamma == static_cast<double>(want.concordant - want.discordant) /
                             static_cast<double>(want.concordant + want.discordant));
  }
}

TEST_CASE("min-max normalization") {
  const std::vector<double> v = {2, 4, 6};
  CHECK(normalize_feature(v, Direction::kPositive) == std::vector<double>{0, 0.5, 1});
  CHECK(normalize_feature(v, Direction::kNegated) == std::vector<double>{1, 0.5, 0});
  CHECK_THROWS_AS(normalize_feature(std::vector<double>{5, 5, 5}, Direction::kPositive),
                  UndefinedError);
}

TEST_CASE("default directions") {
  const auto d = default_directions();
  for (auto f : {"word-concreteness", "translation-concreteness", "word-length", "compound-frequency",
                 "borrowing"})
    CHECK(direction_of(d, f) == Direction::kNegated);
  for (auto f : {"ngram-frequency", "compound-count", "affix-presence", "cognate", "inheritance"})
    CHECK(direction_of(d, f) == Direction::kPositive);
}

TEST_CASE("aggregate of duplicate columns follows the column") {
  const auto m = matrix_of({"a", "b", "c", "d"}, {"cognate", "derivation"},
                           {{3, 3}, {1, 1}, {4, 4}, {2, 2}});
  const auto r = aggregate(m, {}, {"cognate", "derivation"});
  CHECK(r.colors == std::vector<std::string>{"c", "a", "d", "b"});
  CHECK(r.scores.front() == 1.0);
}

TEST_CASE("aggregate ranks an engineered fixture") {
  // white > black > red on every column once directions are applied.
  const auto m = matrix_of({"red", "black", "white", "teal"},
                           {"word-concreteness", "ngram-frequency", "cognate", "word-length"},
                           {{3, 100, 0.3, 4}, {2, 1000, 0.4, 3}, {1, 5000, 0.5, 2}, {4, 10, 0.1, 8}});
  const auto cols = m.columns();
  const auto r = aggregate(m, default_directions(), cols);
  REQUIRE(r.colors.size() == 4);
  CHECK(std::vector<std::string>(r.colors.begin(), r.colors.begin() + 3) ==
        std::vector<std::string>{"white", "black", "red"});
  CHECK(r.scores.front() == 1.0);

  std::vector<std::string> shuffled = {"cognate", "word-length", "ngram-frequency", "word-concreteness"};
  const auto r2 = aggregate(m, default_directions(), shuffled);
  CHECK(r2.colors == r.colors);
  for (std::size_t i = 0; i < r.scores.size(); ++i) CHECK(r2.scores[i] == doctest::Approx(r.scores[i]));
}

TEST_CASE("log1p is applied before scaling") {
  const auto m = matrix_of({"a", "b", "c"}, {"ngram-frequency"}, {{0}, {std::exp(1.0) - 1}, {std::exp(2.0) - 1}});
  const auto r = aggregate(m, {}, {"ngram-frequency"});
  CHECK(r.row_scores[1] == doctest::Approx(0.5));
  AggregateOptions raw;
  raw.log1p_columns.clear();
  const auto r2 = aggregate(m, {}, {"ngram-frequency"}, raw);
  CHECK(r2.row_scores[1] < 0.3);
}

TEST_CASE("constant columns contribute nothing and are listed") {
  const auto m = matrix_of({"a", "b", "c"}, {"cognate", "derivation"}, {{1, 7}, {3, 7}, {2, 7}});
  const auto r = aggregate(m, {}, {"cognate", "derivation"});
  CHECK(r.colors == std::vector<std::string>{"b", "c", "a"});
  CHECK(r.degenerate == std::vector<std::string>{"derivation"});
  const auto flat = matrix_of({"a", "b"}, {"cognate"}, {{1}, {1}});
  CHECK_THROWS_AS(aggregate(flat, {}, {"cognate"}), UndefinedError);
}

TEST_CASE("aggregate ties keep row order") {
  const auto m = matrix_of({"x", "y", "z"}, {"cognate"}, {{1}, {2}, {1}});
  CHECK(aggregate(m, {}, {"cognate"}).colors == std::vector<std::string>{"y", "x", "z"});
}

namespace {

// Thirteen base columns with values following the row order.
FeatureMatrix base_matrix(const std::vector<std::string>& colors,
                          const std::vector<double>& strength) {
  std::vector<std::string> cols;
  for (auto n : kFeatureNames)
    if (n != kAffixPresence) cols.emplace_back(n);
  const auto dirs = default_directions();
  std::vector<std::vector<double>> rows;
  for (double s : strength) {
    std::vector<double> row;
    for (const auto& c : cols) row.push_back(direction_of(dirs, c) == Direction::kNegated ? -s : s);
    rows.push_back(row);
  }
  return matrix_of(colors, cols, rows);
}

AffixColumnProvider constant_affix(double v) {
  return [v](const std::vector<std::string>& ranking) {
    FeatureColumn c{std::string(kAffixPresence), {}};
    for (const auto& color : ranking) c.values[color] = v;
    return c;
  };
}

}  // namespace

TEST_CASE("uniform affix column leaves the ranking unchanged") {
  const auto base = base_matrix({"a", "b", "c", "d", "e", "f"}, {6, 5, 4, 3, 2, 1});
  const auto two = bootstrap_then_full_aggregate(base, default_directions(), constant_affix(0.5));
  CHECK(two.final.colors == two.bootstrap.colors);
  CHECK(two.matrix.columns().size() == 14);
  CHECK(two.final.degenerate == std::vector<std::string>{std::string(kAffixPresence)});
}

TEST_CASE("affix column flipping two mid-rank colors") {
  const auto base = base_matrix({"a", "b", "c", "d", "e", "f"}, {6, 5, 4, 3.9, 2, 1});
  std::vector<std::string> seen;
  auto provider = [&](const std::vector<std::string>& ranking) {
    seen = ranking;
    FeatureColumn c{std::string(kAffixPresence), {}};
    for (const auto& color : ranking) c.values[color] = color == "d" ? 1.0 : 0.0;
    return c;
  };
  const auto two = bootstrap_then_full_aggregate(base, default_directions(), provider);
  CHECK(seen == std::vector<std::string>{"a", "b", "c", "d", "e", "f"});
  CHECK(two.bootstrap.colors == seen);
  CHECK(two.final.colors == std::vector<std::string>{"a", "b", "d", "c", "e", "f"});
}

TEST_CASE("second pass without an affix column is an error") {
  const auto base = base_matrix({"a", "b", "c"}, {3, 2, 1});
  auto wrong = [](const std::vector<std::string>&) { return FeatureColumn{"cognate", {}}; };
  CHECK_THROWS_AS(bootstrap_then_full_aggregate(base, default_directions(), wrong), DataError);
}

TEST_CASE("acquisition targets") {
  const auto colors = parse_seeds("white *\nblue *\npurple *\npink *\norange *\ngrey *\nteal\n");
  const auto seq = sequence_target(colors);
  CHECK(seq[0] == -1);
  CHECK(seq[1] == -4);
  CHECK(seq[6] == -7);
  // Stage-6 colors are all tied and skipped; every basic/secondary pair counts.
  const std::vector<double> x = {0, 0, 0, 0, 0, 0, 0};
  const auto stage6 = std::vector<double>(seq.begin() + 2, seq.begin() + 6);
  CHECK(std::all_of(stage6.begin(), stage6.end(), [](double v) { return v == -6; }));
  CHECK(basicness_target(colors) == std::vector<double>{1, 1, 1, 1, 1, 1, 0});
  const auto g = gamma(basicness_target(colors), std::vector<double>{7, 6, 5, 4, 3, 2, 1});
  CHECK(g.concordant == 6);
  CHECK(g.discordant == 0);
}

namespace {

// Columns named f1.. with random values, plus planted structure.
FeatureMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  std::vector<std::string> colors, names;
  for (std::size_t r = 0; r < rows; ++r) colors.push_back("c" + std::to_string(r));
  for (std::size_t c = 0; c < cols; ++c) names.push_back("f" + std::to_string(c));
  std::vector<std::vector<double>> values(rows, std::vector<double>(cols));
  for (auto& row : values)
    for (auto& v : row) v = static_cast<double>(rng() % 10);
  return matrix_of(colors, names, values);
}

}  // namespace

TEST_CASE("rfe steps match exhaustive single removals") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const auto m = random_matrix(rng, 12, 2 + rng() % 7);
    std::vector<double> target(12);
    for (auto& t : target) t = static_cast<double>(rng() % 3);
    if (!subset_gamma(m, target, {}, m.columns())) continue;
    const auto result = rfe(m, target, {});
    for (std::size_t s = 1; s < result.trajectory.size(); ++s) {
      const auto& prev = result.trajectory[s - 1].features;
      double best = -2;
      std::string best_name;
      for (const auto& f : prev) {
        std::vector<std::string> without;
        for (const auto& g : prev)
          if (g != f) without.push_back(g);
        const auto gm = subset_gamma(m, target, {}, without);
        if (gm && (*gm > best || (*gm == best && f < best_name))) {
          best = *gm;
          best_name = f;
        }
      }
      CHECK(result.trajectory[s].removed == best_name);
      CHECK(result.trajectory[s].gamma == best);
      CHECK(result.trajectory[s].gamma > result.trajectory[s - 1].gamma);
    }
  }
}

TEST_CASE("rfe removes a planted noise column first") {
  std::vector<std::string> colors;
  std::vector<double> target;
  std::vector<std::vector<double>> rows;
  std::mt19937_64 rng(2);
  for (int r = 0; r < 12; ++r) {
    colors.push_back("c" + std::to_string(r));
    target.push_back(r < 6 ? 1 : 0);
    const double s = 12 - r;
    rows.push_back({s, s * 2, s + 0.5, static_cast<double>(rng() % 100) * 10});
  }
  const auto m = matrix_of(colors, {"a", "b", "c", "noise"}, rows);
  const auto start = subset_gamma(m, target, {}, m.columns());
  REQUIRE(start.has_value());
  REQUIRE(*start < 1.0);
  const auto result = rfe(m, target, {});
  REQUIRE(result.trajectory.size() >= 2);
  CHECK(result.trajectory[1].removed == "noise");
  CHECK(result.best().gamma == 1.0);
}

TEST_CASE("rfe stops at once when nothing improves") {
  const auto m = matrix_of({"a", "b", "c", "d"}, {"x", "y", "z"},
                           {{4, 4, 4}, {3, 3, 3}, {2, 2, 2}, {1, 1, 1}});
  const std::vector<double> target = {1, 1, 0, 0};
  const auto result = rfe(m, target, {});
  CHECK(result.trajectory.size() == 1);
  CHECK(result.best().features.size() == 3);
}

TEST_CASE("rfe keeps a complementary pair") {
  // Each of p, q alone misorders one pair; their mean separates the classes.
  const auto m = matrix_of({"a", "b", "c", "d"}, {"p", "q", "r"},
                           {{4, 1, 0}, {1, 4, 0}, {2, 0, 5}, {0, 2, 5}});
  const std::vector<double> target = {1, 1, 0, 0};
  const auto result = rfe(m, target, {});
  CHECK(result.best().features == std::vector<std::string>{"p", "q"});
  CHECK(result.best().gamma == 1.0);
  for (const auto& f : {"p", "q"}) CHECK(*subset_gamma(m, target, {}, {f}) < 1.0);
}

TEST_CASE("rfe is independent of the worker count") {
  std::mt19937_64 rng(23);
  const auto m = random_matrix(rng, 15, 8);
  std::vector<double> target(15);
  for (auto& t : target) t = static_cast<double>(rng() % 2);
  const auto a = rfe(m, target, {}, {}, 1);
  const auto b = rfe(m, target, {}, {}, 8);
  REQUIRE(a.trajectory.size() == b.trajectory.size());
  for (std::size_t i = 0; i < a.trajectory.size(); ++i) {
    CHECK(a.trajectory[i].removed == b.trajectory[i].removed);
    CHECK(a.trajectory[i].gamma == b.trajectory[i].gamma);
  }
}

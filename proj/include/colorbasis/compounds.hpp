#pragma once

// Compound detection by three-way (left, glue, right) splits with glue of any
// length, and cross-lingual recipe mining over the component glosses.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "colorbasis/lexicon.hpp"

namespace colorbasis {

// Concept used for a right component matched against a derivational suffix.
inline constexpr std::string_view kAffixConcept = "<affix>";

struct SplitCandidate {
  std::string word;
  std::string left;
  std::string glue;
  std::string right;
  LanguageCode language;
  std::set<std::string> left_concepts;
  std::set<std::string> right_concepts;

  bool operator==(const SplitCandidate&) const = default;
};

// All splits with non-empty left and right, ordered by left length then glue
// length. A word of K scalars has K(K-1)/2 splits; fewer than 2 gives none.
std::vector<SplitCandidate> enumerate_splits(std::string_view word, LanguageCode language = {});

// Splits whose glue is at most `max_glue` scalars long.
std::vector<SplitCandidate> enumerate_splits_bounded(std::string_view word, std::size_t max_glue,
                                                     LanguageCode language = {});

// Splits of every word of `language` whose left part is a word of the same
// language and whose right part is a word or one of `suffixes`.
std::vector<SplitCandidate> extract_candidates(const TranslationTable& table,
                                               std::string_view language,
                                               const std::set<std::string>& suffixes = {});

struct Recipe {
  std::string left_concept;
  std::string right_concept;
  std::size_t support = 0;  // distinct languages
  std::set<LanguageCode> languages;

  bool operator==(const Recipe&) const = default;
};

// Groups candidates by every (left concept, right concept) pair they carry.
// Sorted by support, descending, then by concept pair.
std::vector<Recipe> build_recipes(const std::vector<SplitCandidate>& candidates);

struct CompoundAnalysis {
  SplitCandidate candidate;
  Recipe recipe;
  std::size_t score = 0;
  bool accepted = false;
};

// Two passes: score each candidate by the best-supported recipe among its
// concept pairs, keep those reaching `threshold`, rebuild recipes from the kept
// candidates' chosen pairs and score once more.
std::vector<CompoundAnalysis> score_and_filter(const std::vector<SplitCandidate>& candidates,
                                               const std::vector<Recipe>& recipes,
                                               std::size_t threshold = 2);

// Recipes backed by accepted analyses only.
std::vector<Recipe> accepted_recipes(const std::vector<CompoundAnalysis>& analyses);

std::map<std::size_t, std::size_t> glue_length_histogram(
    const std::vector<CompoundAnalysis>& analyses);

struct CompoundingFeature {
  std::optional<double> count;
  std::optional<double> frequency;
};

// count: accepted compounds among the color's (language, word) translations;
// frequency: count over the number of those translations.
std::map<std::string, CompoundingFeature> compounding_features(
    const std::vector<CompoundAnalysis>& analyses, const std::vector<ColorConcept>& colors,
    const TranslationTable& table);

}  // namespace colorbasis

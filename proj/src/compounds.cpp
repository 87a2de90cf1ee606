#include "colorbasis/compounds.hpp"

#include <algorithm>
#include <tuple>

#include "colorbasis/error.hpp"
#include "colorbasis/text.hpp"

namespace colorbasis {

namespace {

using ConceptPair = std::pair<std::string, std::string>;

std::vector<ConceptPair> concept_pairs(const SplitCandidate& c) {
  std::vector<ConceptPair> out;
  for (const auto& l : c.left_concepts)
    for (const auto& r : c.right_concepts) out.emplace_back(l, r);
  return out;
}

bool recipe_order(const Recipe& a, const Recipe& b) {
  if (a.support != b.support) return a.support > b.support;
  return std::tie(a.left_concept, a.right_concept) < std::tie(b.left_concept, b.right_concept);
}

using RecipeIndex = std::map<ConceptPair, const Recipe*>;

RecipeIndex index_recipes(const std::vector<Recipe>& recipes) {
  RecipeIndex idx;
  for (const auto& r : recipes) idx[{r.left_concept, r.right_concept}] = &r;
  return idx;
}

// Best-supported recipe among the candidate's pairs; ties go to the smaller pair.
std::optional<Recipe> best_recipe(const std::vector<ConceptPair>& pairs, const RecipeIndex& idx) {
  std::optional<Recipe> best;
  for (const auto& p : pairs) {
    auto it = idx.find(p);
    if (it == idx.end()) continue;
    if (!best || recipe_order(*it->second, *best)) best = *it->second;
  }
  return best;
}

std::vector<Recipe> finish(std::map<ConceptPair, std::set<LanguageCode>>& groups) {
  std::vector<Recipe> out;
  out.reserve(groups.size());
  for (auto& [pair, langs] : groups)
    out.push_back({pair.first, pair.second, langs.size(), std::move(langs)});
  std::sort(out.begin(), out.end(), recipe_order);
  return out;
}

}  // namespace

std::vector<SplitCandidate> enumerate_splits_bounded(std::string_view word, std::size_t max_glue,
                                                     LanguageCode language) {
  const auto off = text::scalar_offsets(word);
  const std::size_t k = off.size() - 1;
  std::vector<SplitCandidate> out;
  if (k < 2) return out;
  out.reserve(k * (k - 1) / 2);
  for (std::size_t i = 1; i < k; ++i) {
    for (std::size_t j = i; j < k && j - i <= max_glue; ++j) {
      SplitCandidate c;
      c.word = std::string(word);
      c.left = std::string(word.substr(0, off[i]));
      c.glue = std::string(word.substr(off[i], off[j] - off[i]));
      c.right = std::string(word.substr(off[j]));
      c.language = language;
      out.push_back(std::move(c));
    }
  }
  return out;
}

std::vector<SplitCandidate> enumerate_splits(std::string_view word, LanguageCode language) {
  return enumerate_splits_bounded(word, std::string_view::npos, std::move(language));
}

std::vector<SplitCandidate> extract_candidates(const TranslationTable& table,
                                               std::string_view language,
                                               const std::set<std::string>& suffixes) {
  std::vector<SplitCandidate> out;
  const std::string lang(language);
  for (const auto& word : table.words(language)) {
    for (auto& c : enumerate_splits(word, lang)) {
      const bool left_ok = table.contains_word(language, c.left);
      if (!left_ok) continue;
      const bool right_word = table.contains_word(language, c.right);
      const bool right_affix = suffixes.count(c.right) > 0;
      if (!right_word && !right_affix) continue;
      c.left_concepts = table.backward(c.left, language);
      if (right_word) c.right_concepts = table.backward(c.right, language);
      if (right_affix) c.right_concepts.insert(std::string(kAffixConcept));
      out.push_back(std::move(c));
    }
  }
  return out;
}

std::vector<Recipe> build_recipes(const std::vector<SplitCandidate>& candidates) {
  std::map<ConceptPair, std::set<LanguageCode>> groups;
  for (const auto& c : candidates)
    for (auto& p : concept_pairs(c)) groups[std::move(p)].insert(c.language);
  return finish(groups);
}

std::vector<CompoundAnalysis> score_and_filter(const std::vector<SplitCandidate>& candidates,
                                               const std::vector<Recipe>& recipes,
                                               std::size_t threshold) {
  if (threshold < 1) throw ConfigError("compound score threshold must be at least 1");

  std::vector<CompoundAnalysis> out;
  out.reserve(candidates.size());
  const RecipeIndex first = index_recipes(recipes);
  for (const auto& c : candidates) {
    CompoundAnalysis a;
    a.candidate = c;
    if (auto r = best_recipe(concept_pairs(c), first)) {
      a.recipe = *r;
      a.score = r->support;
    }
    a.accepted = a.score >= threshold;
    out.push_back(std::move(a));
  }

  // Second pass: only kept candidates vote, each for the pair it was scored by.
  std::map<ConceptPair, std::set<LanguageCode>> groups;
  for (const auto& a : out) {
    if (a.accepted)
      groups[{a.recipe.left_concept, a.recipe.right_concept}].insert(a.candidate.language);
  }
  const std::vector<Recipe> second = finish(groups);
  const RecipeIndex idx = index_recipes(second);
  for (auto& a : out) {
    if (!a.accepted) continue;
    auto r = best_recipe(concept_pairs(a.candidate), idx);
    a.recipe = *r;  // its own pass-one pair is always present
    a.score = r->support;
    a.accepted = a.score >= threshold;
  }
  return out;
}

std::vector<Recipe> accepted_recipes(const std::vector<CompoundAnalysis>& analyses) {
  std::map<ConceptPair, std::set<LanguageCode>> groups;
  for (const auto& a : analyses) {
    if (a.accepted)
      groups[{a.recipe.left_concept, a.recipe.right_concept}].insert(a.candidate.language);
  }
  return finish(groups);
}

std::map<std::size_t, std::size_t> glue_length_histogram(
    const std::vector<CompoundAnalysis>& analyses) {
  std::map<std::size_t, std::size_t> hist;
  for (const auto& a : analyses)
    if (a.accepted) ++hist[text::scalar_length(a.candidate.glue)];
  return hist;
}

std::map<std::string, CompoundingFeature> compounding_features(
    const std::vector<CompoundAnalysis>& analyses, const std::vector<ColorConcept>& colors,
    const TranslationTable& table) {
  std::set<std::pair<LanguageCode, std::string>> compounds;
  for (const auto& a : analyses)
    if (a.accepted) compounds.emplace(a.candidate.language, a.candidate.word);

  std::map<std::string, CompoundingFeature> out;
  const auto langs = table.languages();
  for (const auto& c : colors) {
    std::size_t pairs = 0, hits = 0;
    for (const auto& lang : langs) {
      for (const auto& w : table.forward(c.term, lang)) {
        ++pairs;
        hits += compounds.count({lang, w});
      }
    }
    CompoundingFeature f;
    if (pairs > 0) {
      f.count = static_cast<double>(hits);
      f.frequency = static_cast<double>(hits) / static_cast<double>(pairs);
    }
    out[c.term] = f;
  }
  return out;
}

}  // namespace colorbasis

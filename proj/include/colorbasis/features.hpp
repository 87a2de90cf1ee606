#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "colorbasis/lexicon.hpp"

namespace colorbasis {

// Canonical column order of the feature matrix.
inline constexpr std::array<std::string_view, 14> kFeatureNames = {
    "word-concreteness", "translation-concreteness", "ngram-frequency",  "ngram-pct-adj",
    "penntb-pct-adj",    "compound-count",           "compound-frequency", "affix-presence",
    "borrowing",         "cognate",                  "derivation",       "suffix-derivation",
    "inheritance",       "word-length"};

inline constexpr std::string_view kAffixPresence = "affix-presence";

bool is_feature_name(std::string_view name);

// English lemma -> concreteness rating on a 1..5 scale.
using ConcretenessLexicon = std::map<std::string, double, std::less<>>;

// `word<TAB>rating`; ratings outside [1, 5] are a data error.
ConcretenessLexicon load_concreteness(const std::filesystem::path& path);

enum class CorpusSource { kNgram, kTreebank };

struct CorpusCounts {
  std::int64_t total = 0;
  std::int64_t adj = 0;
  std::int64_t noun = 0;
};

struct CorpusSummary {
  CorpusSource source = CorpusSource::kNgram;
  std::map<std::string, CorpusCounts, std::less<>> words;
};

// `word<TAB>total<TAB>adj<TAB>noun`.
CorpusSummary load_corpus_summary(const std::filesystem::path& path, CorpusSource source);

enum class EtymologyProcess { kInheritance, kDerivation, kSuffixDerivation, kCognate, kBorrowing, kNone };

std::optional<EtymologyProcess> parse_etymology_process(std::string_view s);
std::string_view to_string(EtymologyProcess p);

struct EtymologyTable {
  std::map<std::string, std::map<EtymologyProcess, std::int64_t>, std::less<>> counts;
  std::map<std::string, std::int64_t, std::less<>> totals;  // foreign words recorded per color
};

// `color<TAB>process<TAB>count<TAB>total`. The total must agree across a
// color's rows, and suffix derivations may not exceed derivations.
EtymologyTable load_etymology(const std::filesystem::path& path);
void validate_etymology(const EtymologyTable& table);

std::optional<double> word_concreteness(std::string_view color, const ConcretenessLexicon& lex);

// Number of languages whose round-trip set for the color contains each gloss.
std::map<std::string, std::size_t> back_translation_weights(
    const std::vector<RoundTripRecord>& records, std::string_view color);

// Weighted mean rating over the rated glosses; missing when none is rated.
std::optional<double> weighted_concreteness(const std::map<std::string, std::size_t>& weights,
                                            const ConcretenessLexicon& lex);

std::optional<double> translation_concreteness(std::string_view color,
                                               const std::vector<RoundTripRecord>& records,
                                               const ConcretenessLexicon& lex);

struct PosFeature {
  std::optional<double> frequency;  // present when the word is in the corpus
  std::optional<double> pct_adj;    // adj / (adj + noun); missing when both are zero
};

PosFeature pos_features(std::string_view color, const CorpusSummary& corpus);

struct EtymologyFeature {
  std::optional<double> borrowing;
  std::optional<double> cognate;
  std::optional<double> derivation;
  std::optional<double> suffix_derivation;
  std::optional<double> inheritance;
};

EtymologyFeature etymology_features(std::string_view color, const EtymologyTable& table,
                                    std::int64_t total_foreign_words);
// Uses the total recorded in the table for the color.
EtymologyFeature etymology_features(std::string_view color, const EtymologyTable& table);

// Mean scalar length of the color's translations over every language.
std::optional<double> word_length_feature(std::string_view color, const TranslationTable& table);

struct FeatureColumn {
  std::string name;
  std::map<std::string, std::optional<double>> values;  // color -> value
};

class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::vector<std::string> colors, std::vector<std::string> columns,
                std::vector<std::vector<double>> values, std::vector<std::vector<bool>> imputed);

  const std::vector<std::string>& colors() const { return colors_; }
  const std::vector<std::string>& columns() const { return columns_; }
  std::size_t rows() const { return colors_.size(); }
  double at(std::size_t row, std::size_t col) const { return values_[row][col]; }
  bool imputed(std::size_t row, std::size_t col) const { return imputed_[row][col]; }

  bool has_column(std::string_view name) const;
  std::size_t column_index(std::string_view name) const;  // throws DataError
  std::vector<double> column(std::string_view name) const;

 private:
  std::vector<std::string> colors_;
  std::vector<std::string> columns_;
  std::vector<std::vector<double>> values_;
  std::vector<std::vector<bool>> imputed_;
};

struct AssemblyReport {
  std::vector<std::string> dropped;  // colors missing more than half the columns
  std::size_t imputed_cells = 0;
};

struct AssembledMatrix {
  FeatureMatrix matrix;
  AssemblyReport report;
};

double median(std::vector<double> values);

// Joins columns (any subset of the canonical names, in any order) into a matrix
// with rows in `colors` order and columns in canonical order. Colors missing
// more than half the columns are dropped; remaining gaps take the column median.
AssembledMatrix assemble_feature_matrix(const std::vector<FeatureColumn>& columns,
                                        const std::vector<ColorConcept>& colors);

// Adds one column for the matrix's colors, imputing gaps with its median.
FeatureMatrix with_column(const FeatureMatrix& matrix, const FeatureColumn& column);

bool has_all_features(const FeatureMatrix& matrix);

std::string feature_matrix_csv(const FeatureMatrix& matrix);
FeatureMatrix parse_feature_matrix_csv(std::string_view content);

}  // namespace colorbasis

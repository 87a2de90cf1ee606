#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace colorbasis {

using LanguageCode = std::string;

// One directed dictionary edge: `word` in `language` is glossed as `gloss`.
struct LexEntry {
  LanguageCode language;
  std::string word;
  std::string gloss;

  auto operator<=>(const LexEntry&) const = default;
};

// Immutable after construction. Every edge is indexed both ways so forward and
// backward lookups always agree.
class TranslationTable {
 public:
  TranslationTable() = default;
  // Normalizes (NFC, lowercased glosses) and deduplicates. Entries with an
  // empty field after normalization are dropped.
  explicit TranslationTable(std::vector<LexEntry> entries);

  const std::vector<LexEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  // Every word of `language` glossed as `gloss`.
  const std::set<std::string>& forward(std::string_view gloss, std::string_view language) const;
  // All glosses of (`language`, `word`).
  const std::set<std::string>& backward(std::string_view word, std::string_view language) const;

  std::vector<LanguageCode> languages() const;
  // Distinct words of one language, sorted.
  const std::set<std::string>& words(std::string_view language) const;
  bool contains_word(std::string_view language, std::string_view word) const;

 private:
  using Key = std::pair<std::string, std::string>;
  std::vector<LexEntry> entries_;
  std::map<Key, std::set<std::string>> by_gloss_;  // (lang, gloss) -> words
  std::map<Key, std::set<std::string>> by_word_;  // (lang, word) -> glosses
  std::map<std::string, std::set<std::string>, std::less<>> words_;
};

struct LexiconLoadReport {
  std::size_t rows_read = 0;
  std::size_t rows_skipped = 0;
  std::size_t duplicates = 0;
  std::size_t entries = 0;
  std::vector<std::string> warnings;
};

struct LexiconLoad {
  TranslationTable table;
  LexiconLoadReport report;
};

// Tab-separated `language<TAB>word<TAB>gloss`, no header. Extra columns are
// ignored; rows with fewer than three are skipped with a warning.
LexiconLoad load_lexicon(const std::filesystem::path& path);

struct ColorConcept {
  std::string term;
  bool is_basic = false;
  std::optional<int> bk_stage;  // set iff is_basic, 1..6

  bool operator==(const ColorConcept&) const = default;
};

// Stage of a basic term in the acquisition order, if it is one of the eleven.
std::optional<int> default_bk_stage(std::string_view term);

// One term per line. `*` marks a basic term, `@N` gives its stage; a basic term
// without `@N` takes the stage of its English name. Blank lines and `#`
// comments are ignored.
std::vector<ColorConcept> parse_seeds(std::string_view text);
std::vector<ColorConcept> load_seeds(const std::filesystem::path& path);

// Throws ConfigError unless exactly eleven concepts are basic and stages are
// set exactly on the basic ones.
void validate_seeds(const std::vector<ColorConcept>& colors);

struct RoundTripRecord {
  std::string color;
  LanguageCode language;
  std::string word;
  std::set<std::string> back_translations;

  bool operator==(const RoundTripRecord&) const = default;
};

std::set<std::string> translate(const TranslationTable& table, std::string_view color,
                                std::string_view language);
std::set<std::string> back_translate(const TranslationTable& table, std::string_view word,
                                     std::string_view language);

// One record per translation of `color` in `language`, ordered by word.
std::vector<RoundTripRecord> round_trip(const TranslationTable& table, std::string_view color,
                                        std::string_view language);

// Union of the records' back-translations.
std::set<std::string> round_trip_set(const std::vector<RoundTripRecord>& records);

// Records for every color over every language of the table, ordered by
// (color in input order, language, word).
std::vector<RoundTripRecord> round_trip_all(const TranslationTable& table,
                                            const std::vector<ColorConcept>& colors);

}  // namespace colorbasis

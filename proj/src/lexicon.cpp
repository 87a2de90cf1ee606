#include "colorbasis/lexicon.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "colorbasis/error.hpp"
#include "colorbasis/text.hpp"

namespace colorbasis {

namespace {

const std::set<std::string>& empty_set() {
  static const std::set<std::string> empty;
  return empty;
}

std::optional<LexEntry> normalize(std::string_view language, std::string_view word,
                                  std::string_view gloss) {
  LexEntry e{text::nfc(text::trim(language)), text::nfc(text::trim(word)),
             text::lower(text::nfc(text::trim(gloss)))};
  if (e.language.empty() || e.word.empty() || e.gloss.empty()) return std::nullopt;
  return e;
}

}  // namespace

TranslationTable::TranslationTable(std::vector<LexEntry> entries) {
  entries_.reserve(entries.size());
  for (auto& raw : entries) {
    if (auto e = normalize(raw.language, raw.word, raw.gloss)) entries_.push_back(std::move(*e));
  }
  std::sort(entries_.begin(), entries_.end());
  entries_.erase(std::unique(entries_.begin(), entries_.end()), entries_.end());
  for (const auto& e : entries_) {
    by_gloss_[{e.language, e.gloss}].insert(e.word);
    by_word_[{e.language, e.word}].insert(e.gloss);
    words_[e.language].insert(e.word);
  }
}

const std::set<std::string>& TranslationTable::forward(std::string_view gloss,
                                                       std::string_view language) const {
  auto it = by_gloss_.find({std::string(language), std::string(gloss)});
  return it == by_gloss_.end() ? empty_set() : it->second;
}

const std::set<std::string>& TranslationTable::backward(std::string_view word,
                                                        std::string_view language) const {
  auto it = by_word_.find({std::string(language), std::string(word)});
  return it == by_word_.end() ? empty_set() : it->second;
}

std::vector<LanguageCode> TranslationTable::languages() const {
  std::vector<LanguageCode> out;
  out.reserve(words_.size());
  for (const auto& [lang, _] : words_) out.push_back(lang);
  return out;
}

const std::set<std::string>& TranslationTable::words(std::string_view language) const {
  auto it = words_.find(language);
  return it == words_.end() ? empty_set() : it->second;
}

bool TranslationTable::contains_word(std::string_view language, std::string_view word) const {
  const auto& ws = words(language);
  return ws.find(std::string(word)) != ws.end();
}

LexiconLoad load_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read lexicon file " + path.string());

  LexiconLoadReport report;
  std::vector<LexEntry> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty()) continue;
    ++report.rows_read;
    const auto cols = text::split(line, '\t');
    std::optional<LexEntry> e;
    if (cols.size() >= 3) {
      try {
        e = normalize(cols[0], cols[1], cols[2]);
      } catch (const DataError&) {
        e.reset();
      }
    }
    if (!e) {
      ++report.rows_skipped;
      report.warnings.push_back(path.filename().string() + ":" + std::to_string(lineno) +
                                ": malformed row skipped");
      continue;
    }
    rows.push_back(std::move(*e));
  }
  if (in.bad()) throw DataError("I/O error while reading " + path.string());
  if (rows.empty()) throw DataError("empty lexicon: no valid rows in " + path.string());

  const std::size_t valid = rows.size();
  TranslationTable table(std::move(rows));
  report.entries = table.size();
  report.duplicates = valid - table.size();
  return {std::move(table), std::move(report)};
}

std::optional<int> default_bk_stage(std::string_view term) {
  static const std::map<std::string, int, std::less<>> stages = {
      {"white", 1}, {"black", 1}, {"red", 2},    {"green", 3}, {"yellow", 3}, {"blue", 4},
      {"brown", 5}, {"purple", 6}, {"pink", 6},  {"orange", 6}, {"grey", 6},  {"gray", 6}};
  auto it = stages.find(term);
  if (it == stages.end()) return std::nullopt;
  return it->second;
}

std::vector<ColorConcept> parse_seeds(std::string_view content) {
  std::vector<ColorConcept> colors;
  std::set<std::string> seen;
  std::size_t lineno = 0;
  for (auto raw : text::split(content, '\n')) {
    ++lineno;
    auto line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    ColorConcept c;
    if (auto at = line.rfind('@'); at != std::string_view::npos) {
      const auto digits = text::trim(line.substr(at + 1));
      int stage = 0;
      auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), stage);
      if (ec != std::errc() || p != digits.data() + digits.size() || stage < 1 || stage > 6)
        throw ConfigError("seed list line " + std::to_string(lineno) + ": bad stage");
      c.bk_stage = stage;
      line = text::trim(line.substr(0, at));
    }
    if (!line.empty() && line.back() == '*') {
      c.is_basic = true;
      line = text::trim(line.substr(0, line.size() - 1));
    }
    c.term = text::lower(text::nfc(line));
    if (c.term.empty())
      throw ConfigError("seed list line " + std::to_string(lineno) + ": empty term");
    if (c.is_basic && !c.bk_stage) c.bk_stage = default_bk_stage(c.term);
    if (c.is_basic && !c.bk_stage)
      throw ConfigError("seed list: basic term '" + c.term + "' has no stage");
    if (!c.is_basic && c.bk_stage)
      throw ConfigError("seed list: secondary term '" + c.term + "' has a stage");
    if (!seen.insert(c.term).second)
      throw ConfigError("seed list: duplicate term '" + c.term + "'");
    colors.push_back(std::move(c));
  }
  return colors;
}

std::vector<ColorConcept> load_seeds(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read seed list " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_seeds(ss.str());
}

void validate_seeds(const std::vector<ColorConcept>& colors) {
  std::size_t basic = 0;
  for (const auto& c : colors) {
    if (c.is_basic != c.bk_stage.has_value())
      throw ConfigError("color '" + c.term + "': stage must be set iff the term is basic");
    if (c.bk_stage && (*c.bk_stage < 1 || *c.bk_stage > 6))
      throw ConfigError("color '" + c.term + "': stage out of range");
    basic += c.is_basic;
  }
  if (basic != 11)
    throw ConfigError("seed list must mark exactly 11 basic terms, found " + std::to_string(basic));
}

std::set<std::string> translate(const TranslationTable& table, std::string_view color,
                                std::string_view language) {
  return table.forward(color, language);
}

std::set<std::string> back_translate(const TranslationTable& table, std::string_view word,
                                     std::string_view language) {
  return table.backward(word, language);
}

std::vector<RoundTripRecord> round_trip(const TranslationTable& table, std::string_view color,
                                        std::string_view language) {
  std::vector<RoundTripRecord> records;
  for (const auto& word : table.forward(color, language)) {
    records.push_back({std::string(color), std::string(language), word,
                       table.backward(word, language)});
  }
  return records;
}

std::set<std::string> round_trip_set(const std::vector<RoundTripRecord>& records) {
  std::set<std::string> out;
  for (const auto& r : records) out.insert(r.back_translations.begin(), r.back_translations.end());
  return out;
}

std::vector<RoundTripRecord> round_trip_all(const TranslationTable& table,
                                            const std::vector<ColorConcept>& colors) {
  std::vector<RoundTripRecord> out;
  const auto langs = table.languages();
  for (const auto& c : colors) {
    for (const auto& lang : langs) {
      auto recs = round_trip(table, c.term, lang);
      std::move(recs.begin(), recs.end(), std::back_inserter(out));
    }
  }
  return out;
}

}  // namespace colorbasis

#include "colorbasis/features.hpp"

#include <algorithm>
#include <set>

#include "colorbasis/error.hpp"
#include "colorbasis/table_io.hpp"
#include "colorbasis/text.hpp"

namespace colorbasis {

namespace {

std::string where(const std::filesystem::path& p, std::size_t line) {
  return p.filename().string() + ":" + std::to_string(line);
}

std::size_t canonical_index(std::string_view name) {
  for (std::size_t i = 0; i < kFeatureNames.size(); ++i)
    if (kFeatureNames[i] == name) return i;
  throw ConfigError("unknown feature '" + std::string(name) + "'");
}

}  // namespace

bool is_feature_name(std::string_view name) {
  return std::find(kFeatureNames.begin(), kFeatureNames.end(), name) != kFeatureNames.end();
}

ConcretenessLexicon load_concreteness(const std::filesystem::path& path) {
  ConcretenessLexicon lex;
  for (const auto& row : io::read_tsv(path)) {
    if (row.cols.size() < 2) throw DataError(where(path, row.line) + ": expected word and rating");
    const double r = io::parse_double(row.cols[1], where(path, row.line));
    if (r < 1.0 || r > 5.0) throw DataError(where(path, row.line) + ": rating outside [1, 5]");
    lex[text::lower(text::nfc(text::trim(row.cols[0])))] = r;
  }
  return lex;
}

CorpusSummary load_corpus_summary(const std::filesystem::path& path, CorpusSource source) {
  CorpusSummary summary;
  summary.source = source;
  for (const auto& row : io::read_tsv(path)) {
    if (row.cols.size() < 4)
      throw DataError(where(path, row.line) + ": expected word, total, adj, noun");
    const auto at = where(path, row.line);
    CorpusCounts c{io::parse_integer(row.cols[1], at), io::parse_integer(row.cols[2], at),
                   io::parse_integer(row.cols[3], at)};
    if (c.total < 0 || c.adj < 0 || c.noun < 0) throw DataError(at + ": negative count");
    if (c.adj + c.noun > c.total) throw DataError(at + ": adj + noun exceeds total");
    summary.words[text::lower(text::nfc(text::trim(row.cols[0])))] = c;
  }
  return summary;
}

std::optional<EtymologyProcess> parse_etymology_process(std::string_view s) {
  static const std::map<std::string_view, EtymologyProcess> names = {
      {"inheritance", EtymologyProcess::kInheritance},
      {"derivation", EtymologyProcess::kDerivation},
      {"suffix-derivation", EtymologyProcess::kSuffixDerivation},
      {"cognate", EtymologyProcess::kCognate},
      {"borrowing", EtymologyProcess::kBorrowing},
      {"none", EtymologyProcess::kNone}};
  auto it = names.find(s);
  if (it == names.end()) return std::nullopt;
  return it->second;
}

std::string_view to_string(EtymologyProcess p) {
  switch (p) {
    case EtymologyProcess::kInheritance: return "inheritance";
    case EtymologyProcess::kDerivation: return "derivation";
    case EtymologyProcess::kSuffixDerivation: return "suffix-derivation";
    case EtymologyProcess::kCognate: return "cognate";
    case EtymologyProcess::kBorrowing: return "borrowing";
    case EtymologyProcess::kNone: break;
  }
  return "none";
}

EtymologyTable load_etymology(const std::filesystem::path& path) {
  EtymologyTable table;
  for (const auto& row : io::read_tsv(path)) {
    const auto at = where(path, row.line);
    if (row.cols.size() < 4) throw DataError(at + ": expected color, process, count, total");
    const auto color = text::lower(text::nfc(text::trim(row.cols[0])));
    const auto process = parse_etymology_process(text::trim(row.cols[1]));
    if (!process) throw DataError(at + ": unknown process '" + row.cols[1] + "'");
    const auto count = io::parse_integer(row.cols[2], at);
    const auto total = io::parse_integer(row.cols[3], at);
    if (count < 0 || total < 0) throw DataError(at + ": negative count");
    if (auto [it, fresh] = table.totals.emplace(color, total); !fresh && it->second != total)
      throw DataError(at + ": total for '" + color + "' disagrees with an earlier row");
    table.counts[color][*process] += count;
  }
  validate_etymology(table);
  return table;
}

void validate_etymology(const EtymologyTable& table) {
  for (const auto& [color, procs] : table.counts) {
    auto get = [&](EtymologyProcess p) {
      auto it = procs.find(p);
      return it == procs.end() ? 0 : it->second;
    };
    if (get(EtymologyProcess::kSuffixDerivation) > get(EtymologyProcess::kDerivation))
      throw DataError("etymology: suffix derivations exceed derivations for '" + color + "'");
    auto total = table.totals.find(color);
    if (total == table.totals.end()) continue;
    for (const auto& [p, n] : procs)
      if (n > total->second)
        throw DataError("etymology: count exceeds total for '" + color + "'");
  }
}

std::optional<double> word_concreteness(std::string_view color, const ConcretenessLexicon& lex) {
  auto it = lex.find(color);
  if (it == lex.end()) return std::nullopt;
  return it->second;
}

std::map<std::string, std::size_t> back_translation_weights(
    const std::vector<RoundTripRecord>& records, std::string_view color) {
  std::map<std::string, std::set<LanguageCode>> langs;
  for (const auto& r : records) {
    if (r.color != color) continue;
    for (const auto& b : r.back_translations) langs[b].insert(r.language);
  }
  std::map<std::string, std::size_t> weights;
  for (const auto& [b, ls] : langs) weights[b] = ls.size();
  return weights;
}

std::optional<double> weighted_concreteness(const std::map<std::string, std::size_t>& weights,
                                            const ConcretenessLexicon& lex) {
  double num = 0.0, den = 0.0;
  for (const auto& [gloss, w] : weights) {
    auto it = lex.find(gloss);
    if (it == lex.end() || w == 0) continue;
    num += static_cast<double>(w) * it->second;
    den += static_cast<double>(w);
  }
  if (den == 0.0) return std::nullopt;
  return num / den;
}

std::optional<double> translation_concreteness(std::string_view color,
                                               const std::vector<RoundTripRecord>& records,
                                               const ConcretenessLexicon& lex) {
  return weighted_concreteness(back_translation_weights(records, color), lex);
}

PosFeature pos_features(std::string_view color, const CorpusSummary& corpus) {
  PosFeature f;
  auto it = corpus.words.find(color);
  if (it == corpus.words.end()) return f;
  const auto& c = it->second;
  f.frequency = static_cast<double>(c.total);
  if (c.adj + c.noun > 0)
    f.pct_adj = static_cast<double>(c.adj) / static_cast<double>(c.adj + c.noun);
  return f;
}

EtymologyFeature etymology_features(std::string_view color, const EtymologyTable& table,
                                    std::int64_t total) {
  EtymologyFeature f;
  if (total <= 0) return f;
  const std::map<EtymologyProcess, std::int64_t> none;
  auto it = table.counts.find(color);
  const auto& procs = it == table.counts.end() ? none : it->second;
  auto frac = [&](EtymologyProcess p) {
    auto c = procs.find(p);
    const double n = c == procs.end() ? 0.0 : static_cast<double>(c->second);
    return n / static_cast<double>(total);
  };
  f.borrowing = frac(EtymologyProcess::kBorrowing);
  f.cognate = frac(EtymologyProcess::kCognate);
  f.derivation = frac(EtymologyProcess::kDerivation);
  f.suffix_derivation = frac(EtymologyProcess::kSuffixDerivation);
  f.inheritance = frac(EtymologyProcess::kInheritance);
  return f;
}

EtymologyFeature etymology_features(std::string_view color, const EtymologyTable& table) {
  auto it = table.totals.find(color);
  return etymology_features(color, table, it == table.totals.end() ? 0 : it->second);
}

std::optional<double> word_length_feature(std::string_view color, const TranslationTable& table) {
  std::size_t n = 0, scalars = 0;
  for (const auto& lang : table.languages()) {
    for (const auto& w : table.forward(color, lang)) {
      ++n;
      scalars += text::scalar_length(w);
    }
  }
  if (n == 0) return std::nullopt;
  return static_cast<double>(scalars) / static_cast<double>(n);
}

FeatureMatrix::FeatureMatrix(std::vector<std::string> colors, std::vector<std::string> columns,
                             std::vector<std::vector<double>> values,
                             std::vector<std::vector<bool>> imputed)
    : colors_(std::move(colors)),
      columns_(std::move(columns)),
      values_(std::move(values)),
      imputed_(std::move(imputed)) {
  if (values_.size() != colors_.size() || imputed_.size() != colors_.size())
    throw Error(4, "feature matrix row count mismatch");
  for (std::size_t r = 0; r < values_.size(); ++r)
    if (values_[r].size() != columns_.size() || imputed_[r].size() != columns_.size())
      throw Error(4, "feature matrix column count mismatch");
}

bool FeatureMatrix::has_column(std::string_view name) const {
  return std::find(columns_.begin(), columns_.end(), name) != columns_.end();
}

std::size_t FeatureMatrix::column_index(std::string_view name) const {
  auto it = std::find(columns_.begin(), columns_.end(), name);
  if (it == columns_.end())
    throw DataError("feature matrix has no column '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - columns_.begin());
}

std::vector<double> FeatureMatrix::column(std::string_view name) const {
  const auto c = column_index(name);
  std::vector<double> out;
  out.reserve(rows());
  for (const auto& row : values_) out.push_back(row[c]);
  return out;
}

double median(std::vector<double> v) {
  if (v.empty()) throw DataError("median of an empty column");
  std::sort(v.begin(), v.end());
  const auto n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

AssembledMatrix assemble_feature_matrix(const std::vector<FeatureColumn>& columns,
                                        const std::vector<ColorConcept>& colors) {
  std::vector<const FeatureColumn*> ordered;
  std::set<std::string> seen;
  for (const auto& c : columns) {
    canonical_index(c.name);
    if (!seen.insert(c.name).second) throw ConfigError("duplicate feature column '" + c.name + "'");
    ordered.push_back(&c);
  }
  std::sort(ordered.begin(), ordered.end(), [](const FeatureColumn* a, const FeatureColumn* b) {
    return canonical_index(a->name) < canonical_index(b->name);
  });
  if (ordered.empty()) throw ConfigError("no feature columns to assemble");

  auto lookup = [](const FeatureColumn& col, const std::string& color) -> std::optional<double> {
    auto it = col.values.find(color);
    return it == col.values.end() ? std::nullopt : it->second;
  };

  AssemblyReport report;
  std::vector<std::string> kept;
  for (const auto& c : colors) {
    std::size_t missing = 0;
    for (const auto* col : ordered) missing += !lookup(*col, c.term).has_value();
    if (2 * missing > ordered.size())
      report.dropped.push_back(c.term);
    else
      kept.push_back(c.term);
  }
  if (kept.size() < 2)
    throw DataError("fewer than two colors survive feature assembly (" +
                    std::to_string(report.dropped.size()) + " dropped)");

  std::vector<std::string> names;
  std::vector<double> medians;
  for (const auto* col : ordered) {
    names.push_back(col->name);
    std::vector<double> present;
    for (const auto& color : kept)
      if (auto v = lookup(*col, color)) present.push_back(*v);
    if (present.empty()) throw DataError("feature '" + col->name + "' has no values");
    medians.push_back(median(std::move(present)));
  }

  std::vector<std::vector<double>> values;
  std::vector<std::vector<bool>> imputed;
  for (const auto& color : kept) {
    std::vector<double> row;
    std::vector<bool> mask;
    for (std::size_t j = 0; j < ordered.size(); ++j) {
      auto v = lookup(*ordered[j], color);
      row.push_back(v ? *v : medians[j]);
      mask.push_back(!v.has_value());
      report.imputed_cells += !v.has_value();
    }
    values.push_back(std::move(row));
    imputed.push_back(std::move(mask));
  }
  return {FeatureMatrix(std::move(kept), std::move(names), std::move(values), std::move(imputed)),
          std::move(report)};
}

FeatureMatrix with_column(const FeatureMatrix& matrix, const FeatureColumn& column) {
  canonical_index(column.name);
  if (matrix.has_column(column.name))
    throw ConfigError("feature matrix already has column '" + column.name + "'");
  std::vector<double> present;
  for (const auto& color : matrix.colors()) {
    auto it = column.values.find(color);
    if (it != column.values.end() && it->second) present.push_back(*it->second);
  }
  if (present.empty()) throw DataError("feature '" + column.name + "' has no values");
  const double fill = median(present);

  std::vector<std::string> names = matrix.columns();
  names.push_back(column.name);
  std::sort(names.begin(), names.end(), [](const std::string& a, const std::string& b) {
    return canonical_index(a) < canonical_index(b);
  });
  std::vector<std::vector<double>> values;
  std::vector<std::vector<bool>> imputed;
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    std::vector<double> row;
    std::vector<bool> mask;
    for (const auto& name : names) {
      if (name == column.name) {
        auto it = column.values.find(matrix.colors()[r]);
        const bool have = it != column.values.end() && it->second.has_value();
        row.push_back(have ? *it->second : fill);
        mask.push_back(!have);
      } else {
        const auto c = matrix.column_index(name);
        row.push_back(matrix.at(r, c));
        mask.push_back(matrix.imputed(r, c));
      }
    }
    values.push_back(std::move(row));
    imputed.push_back(std::move(mask));
  }
  return FeatureMatrix(matrix.colors(), std::move(names), std::move(values), std::move(imputed));
}

bool has_all_features(const FeatureMatrix& matrix) {
  if (matrix.columns().size() != kFeatureNames.size()) return false;
  for (std::size_t i = 0; i < kFeatureNames.size(); ++i)
    if (matrix.columns()[i] != kFeatureNames[i]) return false;
  return true;
}

std::string feature_matrix_csv(const FeatureMatrix& matrix) {
  std::vector<std::string> header{"color"};
  header.insert(header.end(), matrix.columns().begin(), matrix.columns().end());
  std::string out = io::csv_line(header);
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    std::vector<std::string> fields{matrix.colors()[r]};
    for (std::size_t c = 0; c < matrix.columns().size(); ++c)
      fields.push_back(io::format_exact(matrix.at(r, c)));
    out += io::csv_line(fields);
  }
  return out;
}

FeatureMatrix parse_feature_matrix_csv(std::string_view content) {
  const auto csv = io::parse_csv(content);
  if (csv.header.empty() || csv.header.front() != "color")
    throw DataError("feature matrix CSV must start with a 'color' column");
  std::vector<std::string> columns(csv.header.begin() + 1, csv.header.end());
  for (const auto& c : columns)
    if (!is_feature_name(c)) throw DataError("feature matrix CSV: unknown column '" + c + "'");
  std::vector<std::string> colors;
  std::vector<std::vector<double>> values;
  std::vector<std::vector<bool>> imputed;
  for (const auto& row : csv.rows) {
    if (row.size() != csv.header.size()) throw DataError("feature matrix CSV: ragged row");
    colors.push_back(row.front());
    std::vector<double> v;
    for (std::size_t i = 1; i < row.size(); ++i) v.push_back(io::parse_double(row[i], row.front()));
    values.push_back(std::move(v));
    imputed.emplace_back(columns.size(), false);
  }
  return FeatureMatrix(std::move(colors), std::move(columns), std::move(values), std::move(imputed));
}

}  // namespace colorbasis

#include "colorbasis/pipeline.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "colorbasis/compounds.hpp"
#include "colorbasis/error.hpp"
#include "colorbasis/features.hpp"
#include "colorbasis/lexicon.hpp"
#include "colorbasis/parallel.hpp"
#include "colorbasis/segmentation.hpp"
#include "colorbasis/stats.hpp"
#include "colorbasis/table_io.hpp"
#include "colorbasis/wcs.hpp"

namespace colorbasis {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::vector<std::pair<Stage, std::string_view>>& stage_names() {
  static const std::vector<std::pair<Stage, std::string_view>> names = {
      {Stage::kIngest, "ingest"},     {Stage::kSegment, "segment"},
      {Stage::kCompounds, "compounds"}, {Stage::kFeatures, "features"},
      {Stage::kAggregate, "aggregate"}, {Stage::kGamma, "gamma"},
      {Stage::kRfe, "rfe"},           {Stage::kWcs, "wcs"},
      {Stage::kReport, "report"}};
  return names;
}

std::string tsv_line(std::initializer_list<std::string_view> fields) {
  std::string out;
  bool first = true;
  for (auto f : fields) {
    if (!first) out += '\t';
    out += f;
    first = false;
  }
  out += '\n';
  return out;
}

std::map<LanguageCode, SegmentModel> parse_models(const std::string& content) {
  json doc;
  try {
    doc = json::parse(content);
  } catch (const json::exception& e) {
    throw DataError(std::string("segments.json: ") + e.what());
  }
  std::map<LanguageCode, SegmentModel> models;
  try {
    const double alpha = doc.at("alpha").get<double>();
    const auto max_len = doc.at("max_segment_len").get<std::size_t>();
    for (const auto& [lang, m] : doc.at("languages").items()) {
      std::map<std::string, std::int64_t> counts = m.at("counts");
      models.emplace(lang, SegmentModel::from_counts(lang, std::move(counts), alpha,
                                                     m.at("vocab_size").get<std::size_t>(),
                                                     max_len));
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("segments.json: ") + e.what());
  }
  return models;
}

std::map<LanguageCode, std::set<std::string>> derivational_suffixes(const io::CsvTable& affixes) {
  const auto lang = affixes.column("language", "affixes.csv");
  const auto form = affixes.column("affix", "affixes.csv");
  const auto pos = affixes.column("position", "affixes.csv");
  const auto cls = affixes.column("class", "affixes.csv");
  std::map<LanguageCode, std::set<std::string>> out;
  for (const auto& row : affixes.rows) {
    if (row.size() != affixes.header.size()) throw DataError("affixes.csv: ragged row");
    if (row[pos] == "suffix" && row[cls] != "neither") out[row[lang]].insert(row[form]);
  }
  return out;
}

std::string ranking_csv(const AggregateRanking& ranking, const std::vector<ColorConcept>& colors) {
  std::string out = io::csv_line({"color", "rank", "basic", "bk_stage", "score"});
  for (std::size_t i = 0; i < ranking.colors.size(); ++i) {
    const auto& name = ranking.colors[i];
    const auto it = std::find_if(colors.begin(), colors.end(),
                                 [&](const ColorConcept& c) { return c.term == name; });
    const bool basic = it != colors.end() && it->is_basic;
    out += io::csv_line({name, std::to_string(i + 1), basic ? "yes" : "no",
                         basic ? std::to_string(*it->bk_stage) : "",
                         io::format_fixed(ranking.scores[i], 4)});
  }
  return out;
}

FeatureMatrix select_rows(const FeatureMatrix& m, const std::vector<std::size_t>& rows) {
  std::vector<std::string> colors;
  std::vector<std::vector<double>> values;
  std::vector<std::vector<bool>> imputed;
  for (auto r : rows) {
    colors.push_back(m.colors()[r]);
    std::vector<double> v;
    std::vector<bool> mask;
    for (std::size_t c = 0; c < m.columns().size(); ++c) {
      v.push_back(m.at(r, c));
      mask.push_back(m.imputed(r, c));
    }
    values.push_back(std::move(v));
    imputed.push_back(std::move(mask));
  }
  return FeatureMatrix(std::move(colors), m.columns(), std::move(values), std::move(imputed));
}

std::optional<double> try_gamma(std::span<const double> x, std::span<const double> y) {
  try {
    return gamma(x, y).gamma;
  } catch (const UndefinedError&) {
    return std::nullopt;
  }
}

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw ConfigError("output_dir: cannot create " + dir.string() + ": " + ec.message());
  const fs::path probe = dir / ".write-probe";
  std::ofstream(probe) << "";
  if (!fs::exists(probe)) throw ConfigError("output_dir: " + dir.string() + " is not writable");
  fs::remove(probe);
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

// Rethrows the active exception with the stage name in front, keeping its type.
[[noreturn]] void rethrow_in_stage(const std::string& stage) {
  const std::string prefix = "stage " + stage + ": ";
  try {
    throw;
  } catch (const DependencyError& e) {
    throw DependencyError(prefix + e.what());
  } catch (const UndefinedError& e) {
    throw UndefinedError(prefix + e.what());
  } catch (const DataError& e) {
    throw DataError(prefix + e.what());
  } catch (const ConfigError& e) {
    throw ConfigError(prefix + e.what());
  } catch (const Error& e) {
    throw Error(e.exit_code(), prefix + e.what());
  } catch (const std::exception& e) {
    throw Error(4, prefix + e.what());
  }
}

}  // namespace

std::optional<Stage> parse_stage(std::string_view name) {
  for (const auto& [s, n] : stage_names())
    if (n == name) return s;
  return std::nullopt;
}

std::string_view to_string(Stage stage) {
  for (const auto& [s, n] : stage_names())
    if (s == stage) return n;
  return "unknown";
}

const std::vector<Stage>& all_stages() {
  static const std::vector<Stage> stages = [] {
    std::vector<Stage> v;
    for (const auto& [s, _] : stage_names()) v.push_back(s);
    return v;
  }();
  return stages;
}

std::vector<std::string> RunManifest::dropped_colors() const {
  if (!doc.contains("dropped_colors")) return {};
  return doc.at("dropped_colors").get<std::vector<std::string>>();
}

struct Pipeline::StageRun {
  std::vector<fs::path> written;
};

Pipeline::Pipeline(PipelineConfig config, std::ostream* log)
    : config_(std::move(config)), log_(log), config_hash_(config_hash(config_)) {
  if (config_.output_dir.empty()) throw ConfigError("output_dir: required field is missing");
}

fs::path Pipeline::out(std::string_view name) const { return config_.output_dir / name; }

void Pipeline::require(std::string_view name) const {
  if (!fs::exists(out(name)))
    throw DependencyError("missing upstream artifact " + out(name).string());
}

void Pipeline::write(StageRun& run, std::string_view name, std::string_view content) const {
  io::write_file(out(name), content);
  run.written.push_back(out(name));
}

void Pipeline::say(const std::string& line) const {
  if (log_) *log_ << line << '\n';
}

std::vector<fs::path> Pipeline::stage_inputs(Stage stage) const {
  const auto& in = config_.inputs;
  auto a = [&](std::string_view n) { return out(n); };
  switch (stage) {
    case Stage::kIngest: return {in.lexicon, in.seeds};
    case Stage::kSegment: return {a(artifact::kLexicon), in.seeds};
    case Stage::kCompounds: return {a(artifact::kLexicon), a(artifact::kAffixes)};
    case Stage::kFeatures:
      return {a(artifact::kLexicon), a(artifact::kCompounds), in.seeds, in.concreteness,
              in.ngram, in.treebank, in.etymology};
    case Stage::kAggregate:
      return {a(artifact::kFeaturesBase), a(artifact::kSegments), a(artifact::kLexicon), in.seeds};
    case Stage::kGamma: return {a(artifact::kFeatures), in.seeds};
    case Stage::kRfe: return {a(artifact::kFeatures), in.seeds};
    case Stage::kWcs:
      if (in.wcs) return {*in.wcs};
      return {};
    case Stage::kReport: return {a(artifact::kRanking), a(artifact::kGamma)};
  }
  return {};
}

std::vector<std::string_view> Pipeline::stage_outputs(Stage stage) const {
  using namespace artifact;
  switch (stage) {
    case Stage::kIngest: return {kLexicon, kRoundTrip};
    case Stage::kSegment: return {kSegments, kAffixes};
    case Stage::kCompounds: return {kCompounds, kRecipes};
    case Stage::kFeatures: return {kFeaturesRaw, kFeaturesBase};
    case Stage::kAggregate: return {kFeatures, kBootstrapRanking, kRanking, artifact::kAffixPresence};
    case Stage::kGamma: return {kGamma};
    case Stage::kRfe: return {kRfe};
    case Stage::kWcs: return {kConsensus, kInventory, kHeterogeneity};
    case Stage::kReport: return {kReport};
  }
  return {};
}

std::string Pipeline::stage_key(Stage stage) const {
  std::string material = config_hash_ + "\n" + std::string(to_string(stage)) + "\n";
  for (const auto& p : stage_inputs(stage)) {
    material += p.filename().string() + " ";
    material += fs::exists(p) ? file_digest(p) : std::string("absent");
    material += "\n";
  }
  // The report also summarizes optional artifacts when they exist.
  if (stage == Stage::kReport) {
    for (auto n : {artifact::kRfe, artifact::kInventory})
      material += std::string(n) + " " + (fs::exists(out(n)) ? file_digest(out(n)) : "absent") + "\n";
  }
  return sha256_hex(material);
}

json Pipeline::execute(Stage stage, StageRun& run) {
  switch (stage) {
    case Stage::kIngest: return ingest(run);
    case Stage::kSegment: return segment(run);
    case Stage::kCompounds: return compounds(run);
    case Stage::kFeatures: return features(run);
    case Stage::kAggregate: return aggregate(run);
    case Stage::kGamma: return gamma(run);
    case Stage::kRfe: return rfe(run);
    case Stage::kWcs: return wcs(run);
    case Stage::kReport: return report(run);
  }
  throw Error(4, "unknown stage");
}

RunManifest Pipeline::run() {
  ensure_directory(out(".cache"));
  StageRun run;
  json timing = json::object();
  for (Stage stage : all_stages()) {
    const std::string name(to_string(stage));
    if (stage == Stage::kWcs && !config_.inputs.wcs) {
      say("[wcs] skipped: no wcs input configured");
      continue;
    }
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const std::string key = stage_key(stage);
      const fs::path cache = out(".cache") / (name + ".json");
      bool fresh = true;
      if (fs::exists(cache)) {
        const json cached = json::parse(io::read_file(cache), nullptr, false);
        bool outputs = true;
        for (auto o : stage_outputs(stage)) outputs = outputs && fs::exists(out(o));
        if (!cached.is_discarded() && cached.value("key", "") == key && outputs) fresh = false;
      }
      if (fresh) {
        json stats = execute(stage, run);
        io::write_file(cache, json{{"key", key}, {"stats", stats}}.dump(1) + "\n");
        run.written.push_back(cache);
        say("[" + name + "] done");
      } else {
        say("[" + name + "] cached");
      }
    } catch (...) {
      for (const auto& p : run.written) fs::remove(p);
      rethrow_in_stage(name);
    }
    timing[name] = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
  }
  return write_manifest(timing);
}

RunManifest Pipeline::run_stage(Stage stage) {
  ensure_directory(out(".cache"));
  const std::string name(to_string(stage));
  StageRun run;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    json stats = execute(stage, run);
    io::write_file(out(".cache") / (name + ".json"),
                   json{{"key", stage_key(stage)}, {"stats", stats}}.dump(1) + "\n");
  } catch (...) {
    for (const auto& p : run.written) fs::remove(p);
    rethrow_in_stage(name);
  }
  say("[" + name + "] done");
  json timing = json::object();
  timing[name] = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - t0)
                     .count();
  return write_manifest(timing);
}

RunManifest Pipeline::write_manifest(const json& timing) {
  RunManifest m;
  m.doc["tool_version"] = kToolVersion;
  m.doc["config_hash"] = config_hash_;
  json inputs = json::object();
  const auto& w = config_.inputs_as_written;
  const auto& r = config_.inputs;
  auto add = [&](const char* key, const fs::path& written, const fs::path& resolved) {
    inputs[key] = {{"path", written.generic_string()},
                   {"sha256", fs::exists(resolved) ? file_digest(resolved) : "absent"}};
  };
  add("lexicon", w.lexicon, r.lexicon);
  add("seeds", w.seeds, r.seeds);
  add("concreteness", w.concreteness, r.concreteness);
  add("ngram", w.ngram, r.ngram);
  add("treebank", w.treebank, r.treebank);
  add("etymology", w.etymology, r.etymology);
  if (w.wcs) add("wcs", *w.wcs, *r.wcs);
  m.doc["inputs"] = inputs;
  json stages = json::object();
  for (Stage s : all_stages()) {
    const fs::path cache = out(".cache") / (std::string(to_string(s)) + ".json");
    if (!fs::exists(cache)) continue;
    const json cached = json::parse(io::read_file(cache), nullptr, false);
    if (!cached.is_discarded() && cached.contains("stats"))
      stages[std::string(to_string(s))] = cached.at("stats");
  }
  m.doc["stages"] = stages;
  m.doc["dropped_colors"] = json::array();
  if (stages.contains("features") && stages["features"].contains("dropped_colors"))
    m.doc["dropped_colors"] = stages["features"]["dropped_colors"];
  m.doc["timing_ms"] = timing;
  io::write_file(out(artifact::kManifest), m.doc.dump(1) + "\n");
  return m;
}

json Pipeline::ingest(StageRun& run) {
  auto load = load_lexicon(config_.inputs.lexicon);
  const auto colors = load_seeds(config_.inputs.seeds);
  validate_seeds(colors);
  for (const auto& w : load.report.warnings) say("[ingest] " + w);

  std::string lex;
  for (const auto& e : load.table.entries()) lex += tsv_line({e.language, e.word, e.gloss});
  write(run, artifact::kLexicon, lex);

  std::string rt = tsv_line({"color", "language", "word", "back_translation"});
  std::size_t tuples = 0;
  json untranslated = json::array();
  for (const auto& c : colors) {
    std::size_t n = 0;
    for (const auto& r : round_trip_all(load.table, {c})) {
      ++n;
      for (const auto& b : r.back_translations) {
        rt += tsv_line({r.color, r.language, r.word, b});
        ++tuples;
      }
    }
    if (n == 0) untranslated.push_back(c.term);
  }
  write(run, artifact::kRoundTrip, rt);

  return {{"rows_read", load.report.rows_read},
          {"rows_skipped", load.report.rows_skipped},
          {"duplicates", load.report.duplicates},
          {"entries", load.report.entries},
          {"languages", load.table.languages().size()},
          {"colors", colors.size()},
          {"roundtrip_tuples", tuples},
          {"untranslated_colors", untranslated}};
}

json Pipeline::segment(StageRun& run) {
  require(artifact::kLexicon);
  const auto table = load_lexicon(out(artifact::kLexicon)).table;
  const auto colors = load_seeds(config_.inputs.seeds);
  const auto langs = table.languages();

  std::vector<SegmentModel> models(langs.size());
  std::vector<std::vector<Affix>> affixes(langs.size());
  parallel_for(langs.size(), config_.jobs, [&](std::size_t i) {
    const auto& lang = langs[i];
    const auto& ws = table.words(lang);
    std::vector<std::string> words(ws.begin(), ws.end());
    std::set<std::string> color_words;
    for (const auto& c : colors)
      for (const auto& w : table.forward(c.term, lang)) color_words.insert(w);
    models[i] = train_segmenter(words, config_.segmenter, lang);
    affixes[i] = discover_affixes(models[i], {color_words.begin(), color_words.end()}, words,
                                  config_.affix_thresholds);
  });

  json doc;
  doc["alpha"] = config_.segmenter.alpha;
  doc["max_segment_len"] = config_.segmenter.max_segment_len;
  json languages = json::object();
  std::size_t segment_types = 0;
  for (std::size_t i = 0; i < langs.size(); ++i) {
    languages[langs[i]] = {{"vocab_size", models[i].vocab_size()},
                           {"total", models[i].total()},
                           {"counts", models[i].counts()}};
    segment_types += models[i].counts().size();
  }
  doc["languages"] = languages;
  write(run, artifact::kSegments, doc.dump(1) + "\n");

  std::string csv = io::csv_line(
      {"language", "affix", "position", "class", "color_coverage", "global_coverage"});
  std::map<std::string, std::size_t> by_class;
  std::size_t total_affixes = 0;
  for (const auto& list : affixes) {
    for (const auto& a : list) {
      csv += io::csv_line({a.language, a.form, std::string(to_string(a.position)),
                           std::string(to_string(a.affix_class)),
                           io::format_fixed(a.color_coverage, 6),
                           io::format_fixed(a.global_coverage, 6)});
      ++by_class[std::string(to_string(a.affix_class))];
      ++total_affixes;
    }
  }
  write(run, artifact::kAffixes, csv);
  return {{"languages", langs.size()},
          {"segment_types", segment_types},
          {"affixes", total_affixes},
          {"affix_classes", by_class}};
}

json Pipeline::compounds(StageRun& run) {
  require(artifact::kLexicon);
  require(artifact::kAffixes);
  const auto table = load_lexicon(out(artifact::kLexicon)).table;
  const auto suffixes = derivational_suffixes(io::read_csv(out(artifact::kAffixes)));
  const auto langs = table.languages();

  std::vector<std::vector<SplitCandidate>> per_lang(langs.size());
  parallel_for(langs.size(), config_.jobs, [&](std::size_t i) {
    static const std::set<std::string> none;
    auto it = suffixes.find(langs[i]);
    per_lang[i] = extract_candidates(table, langs[i], it == suffixes.end() ? none : it->second);
  });
  std::vector<SplitCandidate> candidates;
  for (auto& v : per_lang) std::move(v.begin(), v.end(), std::back_inserter(candidates));

  const auto analyses = score_and_filter(candidates, build_recipes(candidates),
                                         config_.compound_threshold);
  std::string csv = io::csv_line({"language", "word", "left", "glue", "right", "left_concept",
                                  "right_concept", "support", "accepted"});
  std::size_t accepted = 0;
  for (const auto& a : analyses) {
    const auto& c = a.candidate;
    csv += io::csv_line({c.language, c.word, c.left, c.glue, c.right, a.recipe.left_concept,
                         a.recipe.right_concept, std::to_string(a.score),
                         a.accepted ? "true" : "false"});
    accepted += a.accepted;
  }
  write(run, artifact::kCompounds, csv);

  const auto recipes = accepted_recipes(analyses);
  std::string rcsv = io::csv_line({"left_concept", "right_concept", "support", "languages"});
  for (const auto& r : recipes) {
    std::string langs_joined;
    for (const auto& l : r.languages) langs_joined += (langs_joined.empty() ? "" : " ") + l;
    rcsv += io::csv_line({r.left_concept, r.right_concept, std::to_string(r.support), langs_joined});
  }
  write(run, artifact::kRecipes, rcsv);

  json glue = json::object();
  for (const auto& [len, n] : glue_length_histogram(analyses)) glue[std::to_string(len)] = n;
  return {{"candidates", analyses.size()},
          {"accepted", accepted},
          {"recipes", recipes.size()},
          {"glue_lengths", glue}};
}

json Pipeline::features(StageRun& run) {
  require(artifact::kLexicon);
  require(artifact::kCompounds);
  const auto table = load_lexicon(out(artifact::kLexicon)).table;
  const auto colors = load_seeds(config_.inputs.seeds);
  const auto concreteness = load_concreteness(config_.inputs.concreteness);
  const auto ngram = load_corpus_summary(config_.inputs.ngram, CorpusSource::kNgram);
  const auto treebank = load_corpus_summary(config_.inputs.treebank, CorpusSource::kTreebank);
  const auto etymology = load_etymology(config_.inputs.etymology);

  std::vector<CompoundAnalysis> accepted;
  {
    const auto csv = io::read_csv(out(artifact::kCompounds));
    const auto lang = csv.column("language", "compounds.csv");
    const auto word = csv.column("word", "compounds.csv");
    const auto acc = csv.column("accepted", "compounds.csv");
    for (const auto& row : csv.rows) {
      if (row.size() != csv.header.size()) throw DataError("compounds.csv: ragged row");
      if (row[acc] != "true") continue;
      CompoundAnalysis a;
      a.candidate.language = row[lang];
      a.candidate.word = row[word];
      a.accepted = true;
      accepted.push_back(std::move(a));
    }
  }
  const auto records = round_trip_all(table, colors);
  const auto compounding = compounding_features(accepted, colors, table);

  std::map<std::string, FeatureColumn> cols;
  for (auto name : kFeatureNames)
    if (name != kAffixPresence) cols[std::string(name)].name = name;
  for (const auto& c : colors) {
    const auto& t = c.term;
    cols["word-concreteness"].values[t] = word_concreteness(t, concreteness);
    cols["translation-concreteness"].values[t] = translation_concreteness(t, records, concreteness);
    const auto ng = pos_features(t, ngram);
    cols["ngram-frequency"].values[t] = ng.frequency;
    cols["ngram-pct-adj"].values[t] = ng.pct_adj;
    cols["penntb-pct-adj"].values[t] = pos_features(t, treebank).pct_adj;
    const auto& comp = compounding.at(t);
    cols["compound-count"].values[t] = comp.count;
    cols["compound-frequency"].values[t] = comp.frequency;
    const auto ety = etymology_features(t, etymology);
    cols["borrowing"].values[t] = ety.borrowing;
    cols["cognate"].values[t] = ety.cognate;
    cols["derivation"].values[t] = ety.derivation;
    cols["suffix-derivation"].values[t] = ety.suffix_derivation;
    cols["inheritance"].values[t] = ety.inheritance;
    cols["word-length"].values[t] = word_length_feature(t, table);
  }

  std::vector<std::string> header{"color"};
  std::vector<FeatureColumn> columns;
  for (auto name : kFeatureNames) {
    if (name == kAffixPresence) continue;
    header.emplace_back(name);
    columns.push_back(cols.at(std::string(name)));
  }
  std::string raw = io::csv_line(header);
  for (const auto& c : colors) {
    std::vector<std::string> fields{c.term};
    for (const auto& col : columns) fields.push_back(io::format_optional(col.values.at(c.term)));
    raw += io::csv_line(fields);
  }
  write(run, artifact::kFeaturesRaw, raw);

  const auto assembled = assemble_feature_matrix(columns, colors);
  for (const auto& d : assembled.report.dropped) say("[features] dropped color: " + d);
  write(run, artifact::kFeaturesBase, feature_matrix_csv(assembled.matrix));
  return {{"colors_kept", assembled.matrix.rows()},
          {"dropped_colors", assembled.report.dropped},
          {"imputed_cells", assembled.report.imputed_cells},
          {"roundtrip_records", records.size()}};
}

json Pipeline::aggregate(StageRun& run) {
  require(artifact::kFeaturesBase);
  require(artifact::kSegments);
  require(artifact::kLexicon);
  const auto base = parse_feature_matrix_csv(io::read_file(out(artifact::kFeaturesBase)));
  const auto colors = load_seeds(config_.inputs.seeds);
  const auto concepts = concepts_for(base, colors);
  const auto models = parse_models(io::read_file(out(artifact::kSegments)));
  const auto table = load_lexicon(out(artifact::kLexicon)).table;

  AffixPresence presence;
  const auto provider = [&](const std::vector<std::string>& ranking) {
    presence = affix_presence_feature(concepts, models, table, ranking, config_.affix_presence);
    FeatureColumn col;
    col.name = kAffixPresence;
    col.values = presence.scores;
    return col;
  };
  const auto result =
      bootstrap_then_full_aggregate(base, config_.directions, provider, config_.aggregate);

  write(run, artifact::kFeatures, feature_matrix_csv(result.matrix));
  write(run, artifact::kBootstrapRanking, ranking_csv(result.bootstrap, colors));
  write(run, artifact::kRanking, ranking_csv(result.final, colors));

  json strong = json::object();
  for (const auto& [lang, s] : presence.strong_suffixes) strong[lang] = s;
  const std::vector<std::string> top(
      result.bootstrap.colors.begin(),
      result.bootstrap.colors.begin() +
          static_cast<long>(std::min(config_.affix_presence.top_n, result.bootstrap.colors.size())));
  write(run, artifact::kAffixPresence,
        json{{"bootstrap_top", top}, {"strong_suffixes", strong}}.dump(1) + "\n");

  return {{"colors", result.final.colors.size()},
          {"top_color", result.final.colors.front()},
          {"top_score", result.final.scores.front()},
          {"degenerate_columns", result.final.degenerate}};
}

json Pipeline::gamma(StageRun& run) {
  require(artifact::kFeatures);
  const auto matrix = parse_feature_matrix_csv(io::read_file(out(artifact::kFeatures)));
  if (!has_all_features(matrix)) throw DataError("features.csv must carry all fourteen features");
  const auto concepts = concepts_for(matrix, load_seeds(config_.inputs.seeds));
  const auto basic = basicness_target(concepts);
  const auto sequence = sequence_target(concepts);
  std::vector<std::size_t> seq_rows;
  for (std::size_t i = 0; i < concepts.size(); ++i)
    if (!config_.sequence_basic_only || concepts[i].is_basic) seq_rows.push_back(i);

  auto pick = [&](const std::vector<double>& v) {
    std::vector<double> out;
    for (auto i : seq_rows) out.push_back(v[i]);
    return out;
  };
  const auto seq_target = pick(sequence);

  std::string csv = io::csv_line({"feature", "gamma_basic", "gamma_sequence"});
  json stats = json::object();
  for (const auto& name : matrix.columns()) {
    auto v = matrix.column(name);
    if (direction_of(config_.directions, name) == Direction::kNegated)
      for (auto& x : v) x = -x;
    const auto gb = try_gamma(v, basic);
    const auto gs = try_gamma(pick(v), seq_target);
    csv += io::csv_line({name, io::format_optional(gb, 6), io::format_optional(gs, 6)});
  }
  const auto agg =
      colorbasis::aggregate(matrix, config_.directions, matrix.columns(), config_.aggregate).row_scores;
  const auto gb = try_gamma(agg, basic);
  const auto gs = try_gamma(pick(agg), seq_target);
  csv += io::csv_line({"aggregate", io::format_optional(gb, 6), io::format_optional(gs, 6)});
  write(run, artifact::kGamma, csv);
  return {{"aggregate_basic", optional_json(gb)}, {"aggregate_sequence", optional_json(gs)}};
}

json Pipeline::rfe(StageRun& run) {
  require(artifact::kFeatures);
  if (!config_.rfe_enabled) {
    write(run, artifact::kRfe, json{{"enabled", false}}.dump(1) + "\n");
    return {{"enabled", false}};
  }
  const auto matrix = parse_feature_matrix_csv(io::read_file(out(artifact::kFeatures)));
  const auto concepts = concepts_for(matrix, load_seeds(config_.inputs.seeds));

  auto trajectory = [&](const FeatureMatrix& m, const std::vector<double>& target) {
    const auto result = colorbasis::rfe(m, target, config_.directions, config_.aggregate,
                                        config_.jobs);
    json steps = json::array();
    for (const auto& s : result.trajectory)
      steps.push_back({{"removed_feature", s.removed.empty() ? json(nullptr) : json(s.removed)},
                       {"gamma", s.gamma},
                       {"features", s.features}});
    return json{{"trajectory", steps},
                {"best_features", result.best().features},
                {"best_gamma", result.best().gamma}};
  };

  json doc;
  doc["enabled"] = true;
  doc["basicness"] = trajectory(matrix, basicness_target(concepts));
  if (config_.sequence_basic_only) {
    std::vector<std::size_t> rows;
    std::vector<ColorConcept> basic;
    for (std::size_t i = 0; i < concepts.size(); ++i)
      if (concepts[i].is_basic) {
        rows.push_back(i);
        basic.push_back(concepts[i]);
      }
    doc["sequence"] = trajectory(select_rows(matrix, rows), sequence_target(basic));
  } else {
    doc["sequence"] = trajectory(matrix, sequence_target(concepts));
  }
  write(run, artifact::kRfe, doc.dump(1) + "\n");
  return {{"enabled", true},
          {"basicness_best_gamma", doc["basicness"]["best_gamma"]},
          {"basicness_features", doc["basicness"]["best_features"].size()},
          {"sequence_best_gamma", doc["sequence"]["best_gamma"]},
          {"sequence_features", doc["sequence"]["best_features"].size()}};
}

json Pipeline::wcs(StageRun& run) {
  if (!config_.inputs.wcs) throw ConfigError("inputs.wcs: not configured");
  const auto table = load_wcs(*config_.inputs.wcs);
  const auto report = heterogeneity_report(table, config_.wcs_sample_stddev);
  write(run, artifact::kConsensus, consensus_csv(report));
  write(run, artifact::kInventory, inventory_csv(report));
  write(run, artifact::kHeterogeneity, heterogeneity_svg(report));
  return {{"rows", table.rows.size()},
          {"conflicts", table.conflicts},
          {"skipped", table.skipped},
          {"languages", report.size()}};
}

json Pipeline::report(StageRun& run) {
  require(artifact::kRanking);
  require(artifact::kGamma);
  const auto ranking = io::read_csv(out(artifact::kRanking));
  const auto gammas = io::read_csv(out(artifact::kGamma));
  std::ostringstream md;
  md << "# Color term basicness report\n\n";
  md << "Config hash: `" << config_hash_ << "`\n\n";
  md << "## Aggregate ranking\n\n| Rank | Color | Basic | Stage | Score |\n|---:|---|---|---:|---:|\n";
  const auto rc = ranking.column("rank"), cc = ranking.column("color"),
             bc = ranking.column("basic"), sc = ranking.column("bk_stage"),
             vc = ranking.column("score");
  for (const auto& row : ranking.rows) {
    const bool basic = row[bc] == "yes";
    md << "| " << row[rc] << " | " << (basic ? "**" + row[cc] + "**" : row[cc]) << " | "
       << row[bc] << " | " << row[sc] << " | " << row[vc] << " |\n";
  }
  md << "\n## Gamma\n\n| Feature | Basic | Sequence |\n|---|---:|---:|\n";
  for (const auto& row : gammas.rows)
    md << "| " << row.at(0) << " | " << row.at(1) << " | " << row.at(2) << " |\n";

  if (fs::exists(out(artifact::kRfe))) {
    const json rfe = json::parse(io::read_file(out(artifact::kRfe)), nullptr, false);
    if (!rfe.is_discarded() && rfe.value("enabled", false)) {
      md << "\n## Recursive feature elimination\n\n";
      for (const char* target : {"basicness", "sequence"}) {
        const auto& t = rfe.at(target);
        md << "- " << target << ": gamma " << io::format_fixed(t.at("best_gamma").get<double>(), 3)
           << " with " << t.at("best_features").size() << " features (";
        bool first = true;
        for (const auto& f : t.at("best_features")) {
          md << (first ? "" : ", ") << f.get<std::string>();
          first = false;
        }
        md << ")\n";
      }
    }
  }
  if (fs::exists(out(artifact::kInventory))) {
    const auto inv = io::read_csv(out(artifact::kInventory));
    md << "\n## Elicitation inventories\n\n| Language | Speakers | Terms | Mean | SD |\n"
          "|---|---:|---:|---:|---:|\n";
    for (const auto& row : inv.rows)
      md << "| " << row.at(0) << " | " << row.at(1) << " | " << row.at(2) << " | " << row.at(3)
         << " | " << row.at(4) << " |\n";
  }
  write(run, artifact::kReport, md.str());
  return {{"ranked_colors", ranking.rows.size()}};
}

RunManifest run_pipeline(const PipelineConfig& config, std::ostream* log) {
  Pipeline p(config, log);
  return p.run();
}

}  // namespace colorbasis

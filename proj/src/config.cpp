#include "colorbasis/config.hpp"

#include <openssl/evp.h>

#include <json.hpp>
#include <set>

#include "colorbasis/error.hpp"
#include "colorbasis/table_io.hpp"

namespace colorbasis {

using nlohmann::json;

namespace {

class Reader {
 public:
  Reader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw ConfigError(name() + ": expected an object");
  }

  // Every key must have been consumed by the time the section is finished.
  void finish() const {
    for (const auto& [k, _] : obj_.items())
      if (!used_.count(k)) throw ConfigError(field(k) + ": unknown key");
  }

  bool has(const std::string& k) {
    used_.insert(k);
    return obj_.contains(k);
  }

  Reader section(const std::string& k) {
    used_.insert(k);
    static const json empty = json::object();
    return Reader(obj_.contains(k) ? obj_.at(k) : empty, field(k));
  }

  std::string string(const std::string& k) {
    if (!has(k)) throw ConfigError(field(k) + ": required field is missing");
    const auto& v = obj_.at(k);
    if (!v.is_string() || v.get<std::string>().empty())
      throw ConfigError(field(k) + ": expected a non-empty string");
    return v.get<std::string>();
  }

  double number(const std::string& k, double fallback, double lo, double hi) {
    if (!has(k)) return fallback;
    const auto& v = obj_.at(k);
    if (!v.is_number()) throw ConfigError(field(k) + ": expected a number");
    const double d = v.get<double>();
    if (!(d >= lo && d <= hi))
      throw ConfigError(field(k) + ": value out of range [" + io::format_exact(lo) + ", " +
                        io::format_exact(hi) + "]");
    return d;
  }

  std::int64_t integer(const std::string& k, std::int64_t fallback, std::int64_t lo,
                       std::int64_t hi) {
    if (!has(k)) return fallback;
    const auto& v = obj_.at(k);
    if (!v.is_number_integer()) throw ConfigError(field(k) + ": expected an integer");
    const auto i = v.get<std::int64_t>();
    if (i < lo || i > hi)
      throw ConfigError(field(k) + ": value out of range [" + std::to_string(lo) + ", " +
                        std::to_string(hi) + "]");
    return i;
  }

  bool boolean(const std::string& k, bool fallback) {
    if (!has(k)) return fallback;
    const auto& v = obj_.at(k);
    if (!v.is_boolean()) throw ConfigError(field(k) + ": expected true or false");
    return v.get<bool>();
  }

  const json& raw(const std::string& k) {
    used_.insert(k);
    return obj_.at(k);
  }

  std::string field(const std::string& k) const { return path_.empty() ? k : path_ + "." + k; }
  std::string name() const { return path_.empty() ? "config" : path_; }

 private:
  const json& obj_;
  std::string path_;
  std::set<std::string> used_;
};

std::string sha256_bytes(const void* data, std::size_t size) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data, size, md, &len, EVP_sha256(), nullptr) != 1)
    throw Error(4, "SHA-256 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 0xf];
  }
  return out;
}

}  // namespace

PipelineConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  PipelineConfig cfg;
  Reader root(doc, "");

  {
    Reader in = root.section("inputs");
    auto& w = cfg.inputs_as_written;
    w.lexicon = in.string("lexicon");
    w.seeds = in.string("seeds");
    w.concreteness = in.string("concreteness");
    w.ngram = in.string("ngram");
    w.treebank = in.string("treebank");
    w.etymology = in.string("etymology");
    if (in.has("wcs")) w.wcs = in.string("wcs");
    in.finish();
  }
  auto resolve = [&](const std::filesystem::path& p) {
    return p.is_absolute() ? p : (base_dir / p).lexically_normal();
  };
  const auto& w = cfg.inputs_as_written;
  cfg.inputs = {resolve(w.lexicon),   resolve(w.seeds),     resolve(w.concreteness),
                resolve(w.ngram),     resolve(w.treebank),  resolve(w.etymology),
                w.wcs ? std::optional(resolve(*w.wcs)) : std::nullopt};
  {
    std::set<std::filesystem::path> distinct;
    std::size_t n = 0;
    for (const auto* p : {&cfg.inputs.lexicon, &cfg.inputs.seeds, &cfg.inputs.concreteness,
                          &cfg.inputs.ngram, &cfg.inputs.treebank, &cfg.inputs.etymology}) {
      distinct.insert(*p);
      ++n;
    }
    if (cfg.inputs.wcs) {
      distinct.insert(*cfg.inputs.wcs);
      ++n;
    }
    if (distinct.size() != n) throw ConfigError("inputs: every input path must be distinct");
  }

  if (root.has("output_dir")) cfg.output_dir = resolve(root.string("output_dir"));
  cfg.jobs = static_cast<std::size_t>(root.integer("jobs", 1, 1, 1024));
  cfg.seed = static_cast<std::uint64_t>(root.integer("seed", 20190601, 0, INT64_MAX));

  {
    Reader seg = root.section("segmentation");
    cfg.segmenter.alpha = seg.number("alpha", 0.01, 1e-12, 1e12);
    cfg.segmenter.max_iters = static_cast<int>(seg.integer("max_iters", 20, 1, 10000));
    cfg.segmenter.max_segment_len =
        static_cast<std::size_t>(seg.integer("max_segment_len", 8, 1, 64));
    Reader affix = seg.section("affix");
    auto& t = cfg.affix_thresholds;
    t.min_support = static_cast<std::size_t>(affix.integer("min_support", 2, 1, 1000000));
    t.min_color_coverage = affix.number("min_color_coverage", 0.2, 0.0, 1.0);
    t.specificity_ratio = affix.number("specificity_ratio", 5.0, 1.0, 1e9);
    t.min_global_coverage = affix.number("min_global_coverage", 0.1, 0.0, 1.0);
    affix.finish();
    seg.finish();
  }
  {
    Reader ap = root.section("affix_presence");
    cfg.affix_presence.top_n = static_cast<std::size_t>(ap.integer("top_n", 10, 1, 1000));
    cfg.affix_presence.min_supporting_colors =
        static_cast<std::size_t>(ap.integer("min_supporting_colors", 2, 1, 1000));
    ap.finish();
  }
  {
    Reader comp = root.section("compounds");
    cfg.compound_threshold = static_cast<std::size_t>(comp.integer("threshold", 2, 1, 1000000));
    comp.finish();
  }
  if (root.has("directions")) {
    const auto& d = root.raw("directions");
    if (!d.is_object()) throw ConfigError("directions: expected an object");
    for (const auto& [k, v] : d.items()) {
      if (!is_feature_name(k)) throw ConfigError("directions." + k + ": unknown feature");
      if (v == "positive")
        cfg.directions[k] = Direction::kPositive;
      else if (v == "negated")
        cfg.directions[k] = Direction::kNegated;
      else
        throw ConfigError("directions." + k + ": expected \"positive\" or \"negated\"");
    }
  }
  {
    Reader agg = root.section("aggregate");
    if (agg.has("log1p")) {
      const auto& l = agg.raw("log1p");
      if (!l.is_array()) throw ConfigError("aggregate.log1p: expected an array of feature names");
      cfg.aggregate.log1p_columns.clear();
      for (const auto& v : l) {
        if (!v.is_string() || !is_feature_name(v.get<std::string>()))
          throw ConfigError("aggregate.log1p: unknown feature " + v.dump());
        cfg.aggregate.log1p_columns.insert(v.get<std::string>());
      }
    }
    agg.finish();
  }
  {
    Reader rfe = root.section("rfe");
    cfg.rfe_enabled = rfe.boolean("enabled", true);
    rfe.finish();
  }
  {
    Reader g = root.section("gamma");
    cfg.sequence_basic_only = g.boolean("sequence_basic_only", false);
    g.finish();
  }
  {
    Reader wcs = root.section("wcs");
    cfg.wcs_sample_stddev = wcs.boolean("sample_stddev", false);
    wcs.finish();
  }
  root.finish();
  return cfg;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::string content;
  try {
    content = io::read_file(path);
  } catch (const DataError&) {
    throw ConfigError("cannot read config file " + path.string());
  }
  return parse_config(content, path.parent_path());
}

std::string config_hash(const PipelineConfig& c) {
  json doc;
  const auto& w = c.inputs_as_written;
  doc["inputs"] = {{"lexicon", w.lexicon.generic_string()},
                   {"seeds", w.seeds.generic_string()},
                   {"concreteness", w.concreteness.generic_string()},
                   {"ngram", w.ngram.generic_string()},
                   {"treebank", w.treebank.generic_string()},
                   {"etymology", w.etymology.generic_string()},
                   {"wcs", w.wcs ? w.wcs->generic_string() : ""}};
  doc["segmentation"] = {{"alpha", c.segmenter.alpha},
                         {"max_iters", c.segmenter.max_iters},
                         {"max_segment_len", c.segmenter.max_segment_len},
                         {"min_support", c.affix_thresholds.min_support},
                         {"min_color_coverage", c.affix_thresholds.min_color_coverage},
                         {"specificity_ratio", c.affix_thresholds.specificity_ratio},
                         {"min_global_coverage", c.affix_thresholds.min_global_coverage}};
  doc["affix_presence"] = {{"top_n", c.affix_presence.top_n},
                           {"min_supporting_colors", c.affix_presence.min_supporting_colors}};
  doc["compounds"] = {{"threshold", c.compound_threshold}};
  json dirs = json::object();
  for (const auto& [k, v] : c.directions)
    dirs[k] = v == Direction::kNegated ? "negated" : "positive";
  doc["directions"] = dirs;
  doc["log1p"] = std::vector<std::string>(c.aggregate.log1p_columns.begin(),
                                          c.aggregate.log1p_columns.end());
  doc["rfe"] = c.rfe_enabled;
  doc["sequence_basic_only"] = c.sequence_basic_only;
  doc["wcs_sample_stddev"] = c.wcs_sample_stddev;
  doc["seed"] = c.seed;
  return sha256_hex(doc.dump());
}

std::string sha256_hex(std::string_view data) { return sha256_bytes(data.data(), data.size()); }

std::string file_digest(const std::filesystem::path& path) {
  return sha256_hex(io::read_file(path));
}

}  // namespace colorbasis

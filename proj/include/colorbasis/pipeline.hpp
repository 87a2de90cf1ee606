#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "colorbasis/config.hpp"

namespace colorbasis {

inline constexpr std::string_view kToolVersion = "colorbasis 1.0.0";

enum class Stage { kIngest, kSegment, kCompounds, kFeatures, kAggregate, kGamma, kRfe, kWcs, kReport };

std::optional<Stage> parse_stage(std::string_view name);
std::string_view to_string(Stage stage);
// Stages in dependency order.
const std::vector<Stage>& all_stages();

// Artifact names inside the output directory.
namespace artifact {
inline constexpr std::string_view kLexicon = "lexicon.tsv";
inline constexpr std::string_view kRoundTrip = "roundtrip.tsv";
inline constexpr std::string_view kSegments = "segments.json";
inline constexpr std::string_view kAffixes = "affixes.csv";
inline constexpr std::string_view kCompounds = "compounds.csv";
inline constexpr std::string_view kRecipes = "recipes.csv";
inline constexpr std::string_view kFeaturesRaw = "features_raw.csv";
inline constexpr std::string_view kFeaturesBase = "features_base.csv";
inline constexpr std::string_view kFeatures = "features.csv";
inline constexpr std::string_view kBootstrapRanking = "bootstrap_ranking.csv";
inline constexpr std::string_view kRanking = "ranking.csv";
inline constexpr std::string_view kAffixPresence = "affix_presence.json";
inline constexpr std::string_view kGamma = "gamma.csv";
inline constexpr std::string_view kRfe = "rfe.json";
inline constexpr std::string_view kConsensus = "consensus.csv";
inline constexpr std::string_view kInventory = "inventory.csv";
inline constexpr std::string_view kHeterogeneity = "heterogeneity.svg";
inline constexpr std::string_view kReport = "report.md";
inline constexpr std::string_view kManifest = "manifest.json";
}  // namespace artifact

// Per-stage row counts, dropped colors, input digests and timing. Everything
// except "timing_ms" is reproducible from identical config and inputs.
struct RunManifest {
  nlohmann::json doc;
  std::vector<std::string> dropped_colors() const;
};

class Pipeline {
 public:
  // `log` receives progress lines when non-null.
  explicit Pipeline(PipelineConfig config, std::ostream* log = nullptr);

  // Every stage in order; stages whose cache key and outputs are unchanged are
  // skipped. On failure, files written by this call are removed.
  RunManifest run();

  // One stage from upstream artifacts already in the output directory. Throws
  // DependencyError naming the first missing artifact.
  RunManifest run_stage(Stage stage);

  const PipelineConfig& config() const { return config_; }

 private:
  struct StageRun;

  nlohmann::json execute(Stage stage, StageRun& run);
  nlohmann::json ingest(StageRun& run);
  nlohmann::json segment(StageRun& run);
  nlohmann::json compounds(StageRun& run);
  nlohmann::json features(StageRun& run);
  nlohmann::json aggregate(StageRun& run);
  nlohmann::json gamma(StageRun& run);
  nlohmann::json rfe(StageRun& run);
  nlohmann::json wcs(StageRun& run);
  nlohmann::json report(StageRun& run);

  std::vector<std::filesystem::path> stage_inputs(Stage stage) const;
  std::vector<std::string_view> stage_outputs(Stage stage) const;
  std::string stage_key(Stage stage) const;
  std::filesystem::path out(std::string_view name) const;
  void require(std::string_view name) const;
  void write(StageRun& run, std::string_view name, std::string_view content) const;
  RunManifest write_manifest(const nlohmann::json& timing);
  void say(const std::string& line) const;

  PipelineConfig config_;
  std::ostream* log_;
  std::string config_hash_;
};

RunManifest run_pipeline(const PipelineConfig& config, std::ostream* log = nullptr);

}  // namespace colorbasis

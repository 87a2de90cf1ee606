#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "colorbasis/config.hpp"
#include "colorbasis/error.hpp"
#include "colorbasis/pipeline.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Color term basicness pipeline"};
  app.set_version_flag("--version", std::string(colorbasis::kToolVersion));
  app.require_subcommand(1);

  std::string config_path;
  std::string output_dir;
  std::size_t jobs = 0;
  bool verbose = false;

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"run", "run every stage, reusing cached ones"},
      {"ingest", "normalize the lexicon and build round-trip sets"},
      {"segment", "train per-language segmenters and classify affixes"},
      {"compounds", "mine compound candidates and recipes"},
      {"features", "compute the thirteen base features"},
      {"aggregate", "bootstrap ranking, affix presence, final ranking"},
      {"gamma", "per-feature and aggregate gamma table"},
      {"rfe", "recursive feature elimination trajectories"},
      {"wcs", "elicitation consensus and inventory reports"},
      {"report", "markdown summary of existing outputs"}};
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "pipeline config (JSON)")->required();
    sub->add_option("--output-dir", output_dir, "overrides output_dir from the config");
    sub->add_option("--jobs", jobs, "worker threads (overrides config)")->check(CLI::Range(1, 256));
    sub->add_flag("--verbose,-v", verbose, "progress on stderr");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    auto config = colorbasis::load_config(config_path);
    if (!output_dir.empty()) config.output_dir = output_dir;
    if (jobs > 0) config.jobs = jobs;
    colorbasis::Pipeline pipeline(std::move(config), verbose ? &std::cerr : nullptr);

    const std::string name = app.get_subcommands().front()->get_name();
    colorbasis::RunManifest manifest;
    if (name == "run") {
      manifest = pipeline.run();
    } else {
      manifest = pipeline.run_stage(*colorbasis::parse_stage(name));
    }
    for (const auto& c : manifest.dropped_colors())
      std::cerr << "dropped color (too many missing features): " << c << '\n';
    return 0;
  } catch (const colorbasis::Error& e) {
    std::cerr << "colorbasis: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "colorbasis: internal error: " << e.what() << '\n';
    return 4;
  }
}

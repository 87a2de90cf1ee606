#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include "colorbasis/config.hpp"
#include "colorbasis/error.hpp"
#include "colorbasis/pipeline.hpp"
#include "colorbasis/table_io.hpp"
#include "helpers.hpp"

using namespace colorbasis;
namespace fs = std::filesystem;

namespace {

const fs::path kE2E = FIXTURE_DIR "/e2e";

PipelineConfig e2e_config(const fs::path& out, std::size_t jobs = 1) {
  auto c = load_config(kE2E / "config.json");
  c.output_dir = out;
  c.jobs = jobs;
  return c;
}

std::vector<std::string> column(const io::CsvTable& t, std::string_view name) {
  std::vector<std::string> out;
  const auto i = t.column(name);
  for (const auto& r : t.rows) out.push_back(r[i]);
  return out;
}

std::vector<fs::path> artifacts(const fs::path& dir) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file()) out.push_back(e.path().filename());
  std::sort(out.begin(), out.end());
  return out;
}

int run_cli(const std::string& args) {
  const int rc = std::system((std::string(CLI_PATH) + " " + args + " 2>/dev/null").c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

}  // namespace

TEST_CASE("end-to-end fixture ranking") {
  testing::TempDir dir("e2e");
  const auto manifest = run_pipeline(e2e_config(dir.path()));
  const auto ranking = io::read_csv(dir.path() / "ranking.csv");
  const auto colors = column(ranking, "color");
  REQUIRE(colors.size() == 20);
  CHECK(std::vector<std::string>(colors.begin(), colors.begin() + 6) ==
        std::vector<std::string>{"white", "black", "red", "green", "yellow", "blue"});
  CHECK(column(ranking, "score").front() == "1.0000");
  CHECK(column(ranking, "rank").back() == "20");

  const auto gamma = io::read_csv(dir.path() / "gamma.csv");
  CHECK(gamma.rows.back() == std::vector<std::string>{"aggregate", "1.000000", "1.000000"});
  CHECK(gamma.rows.size() == 15);

  for (auto name : {"features.csv", "rfe.json", "consensus.csv", "inventory.csv", "heterogeneity.svg",
                    "report.md", "manifest.json", "affixes.csv", "compounds.csv"})
    CHECK_MESSAGE(fs::exists(dir.path() / name), name);

  CHECK(manifest.doc.at("tool_version") == kToolVersion);
  CHECK(manifest.dropped_colors().empty());
  CHECK(manifest.doc.at("stages").at("ingest").at("languages") == 6);
  CHECK(manifest.doc.at("stages").at("ingest").at("colors") == 20);
  CHECK(manifest.doc.contains("timing_ms"));
}

TEST_CASE("serial and parallel runs write identical bytes") {
  testing::TempDir a("serial"), b("parallel");
  auto ma = run_pipeline(e2e_config(a.path(), 1));
  auto mb = run_pipeline(e2e_config(b.path(), 8));
  REQUIRE(artifacts(a.path()) == artifacts(b.path()));
  for (const auto& f : artifacts(a.path())) {
    if (f == "manifest.json") continue;
    CHECK_MESSAGE(testing::slurp(a.path() / f) == testing::slurp(b.path() / f), f.string());
  }
  ma.doc.erase("timing_ms");
  mb.doc.erase("timing_ms");
  CHECK(ma.doc == mb.doc);
}

TEST_CASE("rerun reuses cached stages and reproduces outputs") {
  testing::TempDir dir("cache");
  run_pipeline(e2e_config(dir.path()));
  const auto first = testing::slurp(dir.path() / "ranking.csv");
  std::ostringstream log;
  Pipeline(e2e_config(dir.path()), &log).run();
  CHECK(log.str().find("[aggregate] cached") != std::string::npos);
  CHECK(log.str().find("done") == std::string::npos);
  CHECK(testing::slurp(dir.path() / "ranking.csv") == first);

  // A changed parameter invalidates the stages that depend on it.
  auto changed = e2e_config(dir.path());
  changed.compound_threshold = 3;
  std::ostringstream log2;
  Pipeline(changed, &log2).run();
  CHECK(log2.str().find("[compounds] done") != std::string::npos);
}

TEST_CASE("single stage reruns from upstream artifacts") {
  testing::TempDir dir("stage");
  run_pipeline(e2e_config(dir.path()));
  const auto ranking = fs::last_write_time(dir.path() / "ranking.csv");
  const auto gamma_before = testing::slurp(dir.path() / "gamma.csv");
  fs::remove(dir.path() / "gamma.csv");
  Pipeline(e2e_config(dir.path())).run_stage(Stage::kGamma);
  CHECK(testing::slurp(dir.path() / "gamma.csv") == gamma_before);
  CHECK(fs::last_write_time(dir.path() / "ranking.csv") == ranking);

  fs::remove(dir.path() / "report.md");
  Pipeline(e2e_config(dir.path())).run_stage(Stage::kReport);
  const auto report = testing::slurp(dir.path() / "report.md");
  CHECK(report.find("| 1 | **white** |") != std::string::npos);
  CHECK(report.find("aggregate") != std::string::npos);
}

TEST_CASE("missing upstream artifact") {
  testing::TempDir dir("dep");
  Pipeline p(e2e_config(dir.path()));
  try {
    p.run_stage(Stage::kRfe);
    FAIL("expected a dependency error");
  } catch (const DependencyError& e) {
    CHECK(std::string(e.what()).find("features.csv") != std::string::npos);
    CHECK(std::string(e.what()).find("stage rfe") != std::string::npos);
  }
}

TEST_CASE("a failing stage removes its partial outputs") {
  testing::TempDir dir("fail");
  for (const auto& e : fs::directory_iterator(kE2E))
    if (e.is_regular_file()) fs::copy_file(e.path(), dir.path() / e.path().filename());
  dir.write("etymology.tsv", "white\tcalque\t1\t10\n");
  auto c = load_config(dir.path() / "config.json");
  try {
    run_pipeline(c);
    FAIL("expected a data error");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("stage features") != std::string::npos);
  }
  CHECK_FALSE(fs::exists(c.output_dir / "features_raw.csv"));
  CHECK_FALSE(fs::exists(c.output_dir / "lexicon.tsv"));
}

TEST_CASE("stage names") {
  for (auto s : all_stages()) CHECK(parse_stage(to_string(s)) == s);
  CHECK_FALSE(parse_stage("run").has_value());
  CHECK(all_stages().size() == 9);
}

TEST_CASE("command line exit codes") {
  testing::TempDir dir("cli");
  const auto cfg = (kE2E / "config.json").string();
  const auto out = (dir.path() / "out").string();
  CHECK(run_cli("run --config " + cfg + " --output-dir " + out + " --jobs 2") == 0);
  CHECK(fs::exists(dir.path() / "out" / "ranking.csv"));
  CHECK(run_cli("gamma --config " + cfg + " --output-dir " + out) == 0);
  CHECK(run_cli("rfe --config " + cfg + " --output-dir " + (dir.path() / "empty").string()) == 3);
  CHECK(run_cli("run --config " + (dir.path() / "missing.json").string()) == 2);
  CHECK(run_cli("bogus") == 2);
  const auto bad = dir.write("bad.json", "{\"inputs\": {\"seeds\": \"s\"}}");
  CHECK(run_cli("run --config " + bad.string()) == 2);
}

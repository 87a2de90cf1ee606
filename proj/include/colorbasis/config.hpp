#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "colorbasis/segmentation.hpp"
#include "colorbasis/stats.hpp"

namespace colorbasis {

struct InputPaths {
  std::filesystem::path lexicon;
  std::filesystem::path seeds;
  std::filesystem::path concreteness;
  std::filesystem::path ngram;
  std::filesystem::path treebank;
  std::filesystem::path etymology;
  std::optional<std::filesystem::path> wcs;
};

struct PipelineConfig {
  InputPaths inputs;  // resolved against the config file's directory
  InputPaths inputs_as_written;
  std::filesystem::path output_dir;
  SegmenterOptions segmenter;
  AffixThresholds affix_thresholds;
  AffixPresenceOptions affix_presence;
  std::size_t compound_threshold = 2;
  Directions directions = default_directions();
  AggregateOptions aggregate;
  bool rfe_enabled = true;
  bool sequence_basic_only = false;
  bool wcs_sample_stddev = false;
  std::size_t jobs = 1;
  std::uint64_t seed = 20190601;
};

// JSON document; unknown keys, wrong types, out-of-range values and missing
// required inputs raise ConfigError naming the offending field.
PipelineConfig load_config(const std::filesystem::path& path);
PipelineConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir);

// Hex SHA-256 over the fields that can change results (not jobs or output dir).
std::string config_hash(const PipelineConfig& config);

std::string sha256_hex(std::string_view data);
std::string file_digest(const std::filesystem::path& path);

}  // namespace colorbasis

#pragma once

// Within-language consensus and inventory variability for color-naming
// elicitation data (language, speaker, chip, term).

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace colorbasis {

struct Elicitation {
  std::string language;
  std::string speaker;
  std::string chip;
  std::string term;
};

struct ElicitationTable {
  std::vector<Elicitation> rows;
  std::size_t conflicts = 0;  // later responses for an already-answered chip
  std::size_t skipped = 0;    // rows with missing fields or an empty term

  std::vector<std::string> languages() const;
};

// Trims and NFC-normalizes every field; keeps the first response per
// (language, speaker, chip).
ElicitationTable make_elicitation_table(std::vector<Elicitation> rows);
ElicitationTable load_wcs(const std::filesystem::path& path);

struct TermConsensus {
  std::string term;
  std::size_t speakers = 0;
  double fraction = 0.0;
};

// Distinct speakers using each term over the language's distinct speakers,
// ordered by fraction descending, then term.
std::vector<TermConsensus> term_consensus(const ElicitationTable& table, std::string_view language);

struct InventoryStats {
  std::size_t speakers = 0;
  std::size_t distinct_terms = 0;
  double mean = 0.0;
  double stddev = 0.0;
};

// Per-speaker distinct-term counts; population standard deviation unless
// `sample` is set.
InventoryStats inventory_stats(const ElicitationTable& table, std::string_view language,
                               bool sample = false);

struct LanguageHeterogeneity {
  std::string language;
  InventoryStats inventory;
  std::vector<TermConsensus> terms;
};

// Languages ordered by distinct-term count, descending, then by id.
std::vector<LanguageHeterogeneity> heterogeneity_report(const ElicitationTable& table,
                                                        bool sample = false);

std::string consensus_csv(const std::vector<LanguageHeterogeneity>& report);
std::string inventory_csv(const std::vector<LanguageHeterogeneity>& report);
// Stacked columns: height is the distinct-term count, shading the consensus.
std::string heterogeneity_svg(const std::vector<LanguageHeterogeneity>& report);

}  // namespace colorbasis

#include "colorbasis/wcs.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <tuple>

#include "colorbasis/error.hpp"
#include "colorbasis/table_io.hpp"
#include "colorbasis/text.hpp"

namespace colorbasis {

namespace {

std::vector<const Elicitation*> rows_of(const ElicitationTable& table, std::string_view language) {
  std::vector<const Elicitation*> out;
  for (const auto& r : table.rows)
    if (r.language == language) out.push_back(&r);
  if (out.empty()) throw DataError("unknown language '" + std::string(language) + "'");
  return out;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Light (#fff5f0) to deep red (#cb181d) by consensus fraction.
std::string shade(double fraction) {
  auto mix = [fraction](int lo, int hi) {
    return static_cast<int>(std::lround(lo + (hi - lo) * fraction));
  };
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", mix(0xff, 0xcb), mix(0xf5, 0x18), mix(0xf0, 0x1d));
  return buf;
}

}  // namespace

std::vector<std::string> ElicitationTable::languages() const {
  std::set<std::string> langs;
  for (const auto& r : rows) langs.insert(r.language);
  return {langs.begin(), langs.end()};
}

ElicitationTable make_elicitation_table(std::vector<Elicitation> input) {
  ElicitationTable table;
  std::set<std::tuple<std::string, std::string, std::string>> answered;
  for (auto& r : input) {
    Elicitation e{text::nfc(text::trim(r.language)), text::nfc(text::trim(r.speaker)),
                  text::nfc(text::trim(r.chip)), text::nfc(text::trim(r.term))};
    if (e.language.empty() || e.speaker.empty() || e.chip.empty() || e.term.empty()) {
      ++table.skipped;
      continue;
    }
    if (!answered.emplace(e.language, e.speaker, e.chip).second) {
      ++table.conflicts;
      continue;
    }
    table.rows.push_back(std::move(e));
  }
  return table;
}

ElicitationTable load_wcs(const std::filesystem::path& path) {
  std::vector<Elicitation> rows;
  std::size_t malformed = 0;
  for (auto& row : io::read_tsv(path)) {
    if (row.cols.size() < 4) {
      ++malformed;
      continue;
    }
    rows.push_back({std::move(row.cols[0]), std::move(row.cols[1]), std::move(row.cols[2]),
                    std::move(row.cols[3])});
  }
  auto table = make_elicitation_table(std::move(rows));
  table.skipped += malformed;
  return table;
}

std::vector<TermConsensus> term_consensus(const ElicitationTable& table, std::string_view language) {
  const auto rows = rows_of(table, language);
  std::set<std::string> speakers;
  std::map<std::string, std::set<std::string>> users;
  for (const auto* r : rows) {
    speakers.insert(r->speaker);
    users[r->term].insert(r->speaker);
  }
  std::vector<TermConsensus> out;
  for (const auto& [term, who] : users)
    out.push_back({term, who.size(),
                   static_cast<double>(who.size()) / static_cast<double>(speakers.size())});
  std::stable_sort(out.begin(), out.end(), [](const TermConsensus& a, const TermConsensus& b) {
    return a.speakers > b.speakers;
  });
  return out;
}

InventoryStats inventory_stats(const ElicitationTable& table, std::string_view language,
                               bool sample) {
  const auto rows = rows_of(table, language);
  std::map<std::string, std::set<std::string>> inventory;
  std::set<std::string> terms;
  for (const auto* r : rows) {
    inventory[r->speaker].insert(r->term);
    terms.insert(r->term);
  }
  InventoryStats s;
  s.speakers = inventory.size();
  s.distinct_terms = terms.size();
  double sum = 0.0;
  for (const auto& [_, ts] : inventory) sum += static_cast<double>(ts.size());
  s.mean = sum / static_cast<double>(s.speakers);
  double ss = 0.0;
  for (const auto& [_, ts] : inventory) {
    const double d = static_cast<double>(ts.size()) - s.mean;
    ss += d * d;
  }
  const double dof = static_cast<double>(s.speakers) - (sample ? 1.0 : 0.0);
  s.stddev = dof > 0.0 ? std::sqrt(ss / dof) : 0.0;
  return s;
}

std::vector<LanguageHeterogeneity> heterogeneity_report(const ElicitationTable& table, bool sample) {
  std::vector<LanguageHeterogeneity> out;
  for (const auto& lang : table.languages())
    out.push_back({lang, inventory_stats(table, lang, sample), term_consensus(table, lang)});
  std::stable_sort(out.begin(), out.end(),
                   [](const LanguageHeterogeneity& a, const LanguageHeterogeneity& b) {
                     return a.inventory.distinct_terms > b.inventory.distinct_terms;
                   });
  return out;
}

std::string consensus_csv(const std::vector<LanguageHeterogeneity>& report) {
  std::string out = io::csv_line({"language", "term", "speakers", "fraction"});
  for (const auto& lang : report)
    for (const auto& t : lang.terms)
      out += io::csv_line({lang.language, t.term, std::to_string(t.speakers),
                           io::format_fixed(t.fraction, 6)});
  return out;
}

std::string inventory_csv(const std::vector<LanguageHeterogeneity>& report) {
  std::string out = io::csv_line({"language", "speakers", "distinct_terms", "mean", "stddev"});
  for (const auto& lang : report)
    out += io::csv_line({lang.language, std::to_string(lang.inventory.speakers),
                         std::to_string(lang.inventory.distinct_terms),
                         io::format_fixed(lang.inventory.mean, 6),
                         io::format_fixed(lang.inventory.stddev, 6)});
  return out;
}

std::string heterogeneity_svg(const std::vector<LanguageHeterogeneity>& report) {
  constexpr int kCell = 6, kColumn = 14, kGap = 4, kMargin = 30, kLabel = 40;
  std::size_t tallest = 1;
  for (const auto& l : report) tallest = std::max(tallest, l.inventory.distinct_terms);
  const int plot_h = static_cast<int>(tallest) * kCell;
  const int width = 2 * kMargin + static_cast<int>(report.size()) * (kColumn + kGap);
  const int height = 2 * kMargin + plot_h + kLabel;
  const int base = kMargin + plot_h;

  std::string svg;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" "
                "viewBox=\"0 0 %d %d\">\n",
                width, height, width, height);
  svg += buf;
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  for (std::size_t i = 0; i < report.size(); ++i) {
    const auto& lang = report[i];
    const int x = kMargin + static_cast<int>(i) * (kColumn + kGap);
    svg += "<g class=\"language\" data-language=\"" + xml_escape(lang.language) +
           "\" data-terms=\"" + std::to_string(lang.inventory.distinct_terms) + "\">\n";
    for (std::size_t k = 0; k < lang.terms.size(); ++k) {
      const auto& t = lang.terms[k];
      const int y = base - static_cast<int>(k + 1) * kCell;
      std::snprintf(buf, sizeof buf,
                    "<rect x=\"%d\" y=\"%d\" width=\"%d\" height=\"%d\" fill=\"%s\">", x, y,
                    kColumn, kCell, shade(t.fraction).c_str());
      svg += buf;
      svg += "<title>" + xml_escape(t.term) + " " + io::format_fixed(t.fraction, 3) +
             "</title></rect>\n";
    }
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%d\" y=\"%d\" font-size=\"8\" transform=\"rotate(90 %d %d)\">",
                  x + 3, base + 4, x + 3, base + 4);
    svg += buf;
    svg += xml_escape(lang.language) + "</text>\n</g>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace colorbasis

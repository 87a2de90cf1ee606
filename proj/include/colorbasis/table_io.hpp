#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace colorbasis::io {

struct TsvRow {
  std::size_t line = 0;
  std::vector<std::string> cols;
};

// Non-blank lines split on tabs, CR stripped. Throws DataError if unreadable.
std::vector<TsvRow> read_tsv(const std::filesystem::path& path);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Index of a header column; throws DataError naming `source` when absent.
  std::size_t column(std::string_view name, std::string_view source = "csv") const;
};

CsvTable read_csv(const std::filesystem::path& path);
CsvTable parse_csv(std::string_view content);

std::string csv_field(std::string_view value);
std::string csv_line(const std::vector<std::string>& fields);

// Shortest text that parses back to the same double.
std::string format_exact(double v);
std::string format_fixed(double v, int decimals);
std::string format_optional(const std::optional<double>& v, int decimals = -1);
std::optional<double> parse_optional(std::string_view s);
double parse_double(std::string_view s, std::string_view what);
long long parse_integer(std::string_view s, std::string_view what);

// Writes through a temporary file in the same directory, then renames.
void write_file(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

}  // namespace colorbasis::io

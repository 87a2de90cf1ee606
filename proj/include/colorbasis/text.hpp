#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace colorbasis::text {

// Canonical composition (NFC). Throws DataError on malformed UTF-8.
std::string nfc(std::string_view s);

// Full Unicode lowercase mapping (root locale).
std::string lower(std::string_view s);

std::string_view trim(std::string_view s);

// Byte offsets of every code point start, plus s.size() as a final sentinel.
// A string of K scalars yields K + 1 offsets.
std::vector<std::size_t> scalar_offsets(std::string_view s);

std::size_t scalar_length(std::string_view s);

std::vector<std::string_view> split(std::string_view s, char sep);

}  // namespace colorbasis::text

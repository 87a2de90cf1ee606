#include "colorbasis/text.hpp"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include "colorbasis/error.hpp"

namespace colorbasis::text {

namespace {

icu::UnicodeString decode(std::string_view s) {
  // Validate first; fromUTF8 silently substitutes U+FFFD.
  const auto* bytes = reinterpret_cast<const uint8_t*>(s.data());
  int32_t i = 0;
  const auto n = static_cast<int32_t>(s.size());
  while (i < n) {
    UChar32 c;
    U8_NEXT(bytes, i, n, c);
    if (c < 0) throw DataError("malformed UTF-8 in \"" + std::string(s) + "\"");
  }
  return icu::UnicodeString::fromUTF8(icu::StringPiece(s.data(), n));
}

}  // namespace

std::string nfc(std::string_view s) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* norm = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw Error(4, "ICU NFC normalizer unavailable");
  icu::UnicodeString u = decode(s);
  if (norm->isNormalized(u, status) && U_SUCCESS(status)) return std::string(s);
  status = U_ZERO_ERROR;
  icu::UnicodeString out = norm->normalize(u, status);
  if (U_FAILURE(status)) throw DataError("NFC normalization failed");
  std::string result;
  out.toUTF8String(result);
  return result;
}

std::string lower(std::string_view s) {
  icu::UnicodeString u = decode(s);
  u.toLower(icu::Locale::getRoot());
  std::string result;
  u.toUTF8String(result);
  return result;
}

std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n\f\v";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::size_t> scalar_offsets(std::string_view s) {
  std::vector<std::size_t> offsets;
  offsets.reserve(s.size() + 1);
  const auto* bytes = reinterpret_cast<const uint8_t*>(s.data());
  int32_t i = 0;
  const auto n = static_cast<int32_t>(s.size());
  while (i < n) {
    offsets.push_back(static_cast<std::size_t>(i));
    U8_FWD_1(bytes, i, n);
  }
  offsets.push_back(s.size());
  return offsets;
}

std::size_t scalar_length(std::string_view s) {
  return scalar_offsets(s).size() - 1;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace colorbasis::text

#include "coocnet/text.hpp"

#include <unicode/bytestream.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <algorithm>

#include "coocnet/types.hpp"

namespace coocnet::text {
namespace {

bool is_ascii(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return static_cast<unsigned char>(c) < 0x80; });
}

bool is_joiner(UChar32 c) {
  return c == '-' || c == '\'' || c == 0x2019 || c == 0x2010 || c == 0x2011;
}

bool is_word(UChar32 c) { return u_isalnum(c); }

bool is_mark(UChar32 c) { return (U_GET_GC_MASK(c) & U_GC_M_MASK) != 0; }

}  // namespace

bool is_valid_utf8(std::string_view bytes) {
  if (is_ascii(bytes)) return true;
  const auto* s = reinterpret_cast<const uint8_t*>(bytes.data());
  const auto length = static_cast<int32_t>(bytes.size());
  int32_t i = 0;
  while (i < length) {
    UChar32 c;
    U8_NEXT(s, i, length, c);
    if (c < 0) return false;
  }
  return true;
}

std::string to_nfc(std::string_view utf8) {
  if (is_ascii(utf8)) return std::string(utf8);
  if (!is_valid_utf8(utf8)) throw DecodeError("invalid UTF-8");
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw DataError(std::string("ICU NFC unavailable: ") + u_errorName(status));
  const icu::StringPiece piece(utf8.data(), static_cast<int32_t>(utf8.size()));
  if (nfc->isNormalizedUTF8(piece, status) && U_SUCCESS(status)) return std::string(utf8);
  status = U_ZERO_ERROR;
  std::string result;
  icu::StringByteSink<std::string> sink(&result);
  nfc->normalizeUTF8(0, piece, sink, nullptr, status);
  if (U_FAILURE(status)) throw DecodeError(std::string("NFC normalization failed: ") + u_errorName(status));
  return result;
}

void tokenize(std::string_view utf8, std::vector<std::string>& out) {
  out.clear();
  const auto* s = reinterpret_cast<const uint8_t*>(utf8.data());
  const auto length = static_cast<int32_t>(utf8.size());
  int32_t i = 0;
  int32_t token_begin = -1;
  while (i < length) {
    const int32_t at = i;
    UChar32 c;
    U8_NEXT(s, i, length, c);
    if (c < 0) throw DecodeError("invalid UTF-8");
    const bool in_token = token_begin >= 0;
    if (is_word(c) || (in_token && is_mark(c))) {
      if (!in_token) token_begin = at;
      continue;
    }
    if (in_token && is_joiner(c) && i < length) {
      int32_t j = i;
      UChar32 next;
      U8_NEXT(s, j, length, next);
      if (next >= 0 && is_word(next)) continue;
    }
    if (in_token) {
      out.emplace_back(utf8.substr(token_begin, at - token_begin));
      token_begin = -1;
    }
  }
  if (token_begin >= 0) out.emplace_back(utf8.substr(token_begin));
}

std::vector<std::string> tokenize(std::string_view utf8) {
  std::vector<std::string> out;
  tokenize(utf8, out);
  return out;
}

std::string_view trim_right(std::string_view utf8) {
  const auto* s = reinterpret_cast<const uint8_t*>(utf8.data());
  const auto length = static_cast<int32_t>(utf8.size());
  int32_t i = 0;
  int32_t keep = 0;
  while (i < length) {
    UChar32 c;
    U8_NEXT(s, i, length, c);
    if (c < 0 || !u_isUWhiteSpace(c)) keep = i;
  }
  return utf8.substr(0, keep);
}

}  // namespace coocnet::text

#pragma once

#include <string>
#include <string_view>
#include <vector>

// UTF-8 text primitives shared by the lexicon and corpus readers.
namespace coocnet::text {

bool is_valid_utf8(std::string_view bytes);

/// Unicode NFC of `utf8`. Throws DecodeError on malformed input.
std::string to_nfc(std::string_view utf8);

/// Splits into tokens: maximal runs of Unicode letters/digits (with their
/// combining marks), keeping a hyphen or apostrophe only between two such
/// characters. Everything else separates tokens. Input must be valid UTF-8.
void tokenize(std::string_view utf8, std::vector<std::string>& out);
std::vector<std::string> tokenize(std::string_view utf8);

/// Removes trailing whitespace (ASCII and Unicode White_Space).
std::string_view trim_right(std::string_view utf8);

}  // namespace coocnet::text

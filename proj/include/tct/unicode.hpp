#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

// Minimal UTF-8 codec. Inputs are expected to be well-formed UTF-8; invalid
// byte sequences decode to U+FFFD so downstream code never sees garbage.
namespace tct::unicode {

inline constexpr char32_t kReplacement = 0xFFFD;
inline constexpr char32_t kZwnj = 0x200C;

std::u32string decode_utf8(std::string_view s);
std::string encode_utf8(const std::u32string& s);
std::string encode_utf8(char32_t cp);

bool is_whitespace(char32_t cp);

// Letters, digits, and the ZWNJ joiner count as word characters.
// Everything else (punctuation, symbols, controls) is a token boundary.
bool is_word_char(char32_t cp);

bool is_digit(char32_t cp);

}  // namespace tct::unicode

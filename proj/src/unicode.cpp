#include "tct/unicode.hpp"

namespace tct::unicode {

std::u32string decode_utf8(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) {
    unsigned char b0 = static_cast<unsigned char>(s[i]);
    char32_t cp = kReplacement;
    size_t len = 1;
    if (b0 < 0x80) {
      cp = b0;
    } else if ((b0 & 0xE0) == 0xC0) {
      len = 2;
      if (i + 1 < s.size() && (s[i + 1] & 0xC0) == 0x80) {
        cp = (char32_t(b0 & 0x1F) << 6) | (s[i + 1] & 0x3F);
        if (cp < 0x80) cp = kReplacement;
      }
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3;
      if (i + 2 < s.size() && (s[i + 1] & 0xC0) == 0x80 && (s[i + 2] & 0xC0) == 0x80) {
        cp = (char32_t(b0 & 0x0F) << 12) | (char32_t(s[i + 1] & 0x3F) << 6) | (s[i + 2] & 0x3F);
        if (cp < 0x800 || (cp >= 0xD800 && cp <= 0xDFFF)) cp = kReplacement;
      }
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4;
      if (i + 3 < s.size() && (s[i + 1] & 0xC0) == 0x80 && (s[i + 2] & 0xC0) == 0x80 &&
          (s[i + 3] & 0xC0) == 0x80) {
        cp = (char32_t(b0 & 0x07) << 18) | (char32_t(s[i + 1] & 0x3F) << 12) |
             (char32_t(s[i + 2] & 0x3F) << 6) | (s[i + 3] & 0x3F);
        if (cp < 0x10000 || cp > 0x10FFFF) cp = kReplacement;
      }
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

std::string encode_utf8(char32_t cp) {
  std::string out;
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
  return out;
}

std::string encode_utf8(const std::u32string& s) {
  std::string out;
  out.reserve(s.size() * 2);
  for (char32_t cp : s) out += encode_utf8(cp);
  return out;
}

bool is_whitespace(char32_t cp) {
  switch (cp) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
    case 0x85: case 0xA0: case 0x1680:
    case 0x2028: case 0x2029: case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return (cp >= 0x2000 && cp <= 0x200A);
  }
}

bool is_digit(char32_t cp) {
  if (cp >= '0' && cp <= '9') return true;
  if (cp >= 0x0660 && cp <= 0x0669) return true;  // Arabic-Indic
  if (cp >= 0x06F0 && cp <= 0x06F9) return true;  // Extended Arabic-Indic (Persian)
  return false;
}

namespace {

bool is_letter(char32_t cp) {
  if ((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z')) return true;
  // Latin-1 letters and Latin extended blocks.
  if (cp >= 0xC0 && cp <= 0x24F && cp != 0xD7 && cp != 0xF7) return true;
  // Arabic block: letters only; skip Arabic punctuation, tatweel and
  // combining marks (harakat) so they act as boundaries / are dropped.
  if (cp >= 0x0600 && cp <= 0x06FF) {
    if (cp == 0x060C || cp == 0x061B || cp == 0x061F) return false;  // ، ؛ ؟
    if (cp == 0x0640) return false;                                  // tatweel
    if (cp >= 0x064B && cp <= 0x065F) return false;                  // harakat
    if (cp >= 0x06D4 && cp <= 0x06ED && cp != 0x06D5) return false;  // marks
    if (is_digit(cp)) return true;
    return cp >= 0x0620;
  }
  if (cp >= 0x0750 && cp <= 0x077F) return true;  // Arabic Supplement
  if (cp >= 0xFB50 && cp <= 0xFDFF) return true;  // presentation forms A
  if (cp >= 0xFE70 && cp <= 0xFEFF && cp != 0xFEFF) return true;  // forms B
  // Greek, Cyrillic, Hebrew: letters for test corpora in other scripts.
  if (cp >= 0x0370 && cp <= 0x03FF) return true;
  if (cp >= 0x0400 && cp <= 0x04FF) return true;
  if (cp >= 0x05D0 && cp <= 0x05EA) return true;
  return false;
}

}  // namespace

bool is_word_char(char32_t cp) {
  return cp == kZwnj || is_letter(cp) || is_digit(cp);
}

}  // namespace tct::unicode

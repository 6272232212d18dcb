#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace translod::text {

/// Validates UTF-8 (rejects overlong forms, surrogates and values past
/// U+10FFFF). On failure stores the byte offset of the offending sequence.
inline bool utf8_valid(std::string_view s, std::size_t* bad_pos = nullptr) {
  std::size_t i = 0;
  auto fail = [&](std::size_t at) {
    if (bad_pos) *bad_pos = at;
    return false;
  };
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    std::size_t len;
    std::uint32_t cp;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return fail(i);
    }
    if (i + len > s.size()) return fail(i);
    for (std::size_t k = 1; k < len; ++k) {
      unsigned char cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xC0) != 0x80) return fail(i);
      cp = (cp << 6) | (cc & 0x3F);
    }
    if (len == 2 && cp < 0x80) return fail(i);
    if (len == 3 && cp < 0x800) return fail(i);
    if (len == 4 && cp < 0x10000) return fail(i);
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return fail(i);
    i += len;
  }
  return true;
}

/// Decodes UTF-8 into code points; malformed bytes become U+FFFD.
inline std::vector<char32_t> utf8_decode(std::string_view s) {
  std::vector<char32_t> out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    std::size_t len = c < 0x80 ? 1 : (c & 0xE0) == 0xC0 ? 2 : (c & 0xF0) == 0xE0 ? 3 : (c & 0xF8) == 0xF0 ? 4 : 0;
    if (len == 0 || i + len > s.size()) {
      out.push_back(0xFFFD);
      ++i;
      continue;
    }
    char32_t cp = len == 1 ? c : c & (0x7F >> len);
    bool ok = true;
    for (std::size_t k = 1; k < len; ++k) {
      unsigned char cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xC0) != 0x80) {
        ok = false;
        break;
      }
      cp = (cp << 6) | (cc & 0x3F);
    }
    if (!ok) {
      out.push_back(0xFFFD);
      ++i;
      continue;
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

inline void utf8_encode(char32_t cp, std::string& out) {
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
}

/// ASCII replacement for one accented code point, or nullptr when unmapped.
/// Covers the Latin-1 supplement letters plus Œ/œ and Š/š/Ž/ž.
inline const char* accent_to_ascii(char32_t cp) {
  switch (cp) {
    case U'À': case U'Á': case U'Â': case U'Ã': case U'Ä': case U'Å': return "A";
    case U'à': case U'á': case U'â': case U'ã': case U'ä': case U'å': return "a";
    case U'Æ': return "AE";
    case U'æ': return "ae";
    case U'Ç': return "C";
    case U'ç': return "c";
    case U'È': case U'É': case U'Ê': case U'Ë': return "E";
    case U'è': case U'é': case U'ê': case U'ë': return "e";
    case U'Ì': case U'Í': case U'Î': case U'Ï': return "I";
    case U'ì': case U'í': case U'î': case U'ï': return "i";
    case U'Ñ': return "N";
    case U'ñ': return "n";
    case U'Ò': case U'Ó': case U'Ô': case U'Õ': case U'Ö': case U'Ø': return "O";
    case U'ò': case U'ó': case U'ô': case U'õ': case U'ö': case U'ø': return "o";
    case U'Œ': return "OE";
    case U'œ': return "oe";
    case U'Š': return "S";
    case U'š': return "s";
    case U'Ù': case U'Ú': case U'Û': case U'Ü': return "U";
    case U'ù': case U'ú': case U'û': case U'ü': return "u";
    case U'Ý': return "Y";
    case U'ý': case U'ÿ': return "y";
    case U'Ž': return "Z";
    case U'ž': return "z";
    case U'ß': return "ss";
    default: return nullptr;
  }
}

/// Replaces accented letters by their ASCII base; other code points pass
/// through unchanged.
inline std::string fold_accents(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char32_t cp : utf8_decode(s)) {
    if (const char* rep = accent_to_ascii(cp)) {
      out += rep;
    } else {
      utf8_encode(cp, out);
    }
  }
  return out;
}

inline std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r' || s[b] == '\n')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r' || s[e - 1] == '\n')) --e;
  return std::string(s.substr(b, e - b));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.emplace_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

/// Stable identifier segment: lowercase, accents folded, every other
/// non-alphanumeric run collapsed to a single '-', no edge dashes.
inline std::string slug(std::string_view s) {
  std::string folded = to_lower_ascii(fold_accents(s));
  std::string out;
  out.reserve(folded.size());
  bool pending_dash = false;
  for (char c : folded) {
    bool alnum = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
    if (alnum) {
      if (pending_dash && !out.empty()) out.push_back('-');
      pending_dash = false;
      out.push_back(c);
    } else {
      pending_dash = true;
    }
  }
  return out;
}

}  // namespace translod::text

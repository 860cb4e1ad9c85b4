#include "lexalign/tokenizer.hpp"

#include <cstdint>

namespace lexalign {
namespace {

struct CodePoint {
  char32_t value;
  std::size_t begin;  // byte offset
  std::size_t end;
};

// Lenient UTF-8 decoder; invalid bytes decode as themselves (Latin-1).
std::vector<CodePoint> decode(std::string_view s) {
  std::vector<CodePoint> out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    std::size_t len = 1;
    char32_t cp = b0;
    if (b0 >= 0xC0 && b0 < 0xE0) {
      len = 2;
      cp = b0 & 0x1F;
    } else if (b0 >= 0xE0 && b0 < 0xF0) {
      len = 3;
      cp = b0 & 0x0F;
    } else if (b0 >= 0xF0 && b0 < 0xF8) {
      len = 4;
      cp = b0 & 0x07;
    }
    bool ok = len == 1 || i + len <= s.size();
    for (std::size_t k = 1; ok && k < len; ++k) {
      const auto bk = static_cast<unsigned char>(s[i + k]);
      if ((bk & 0xC0) != 0x80) {
        ok = false;
      } else {
        cp = (cp << 6) | (bk & 0x3F);
      }
    }
    if (!ok) {
      len = 1;
      cp = b0;
    }
    out.push_back({cp, i, i + len});
    i += len;
  }
  return out;
}

void encode(char32_t cp, std::string& out) {
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

bool is_space(char32_t c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
         c == '\f' || c == 0x85 || c == 0xA0 || c == 0x1680 ||
         (c >= 0x2000 && c <= 0x200B) || c == 0x2028 || c == 0x2029 ||
         c == 0x202F || c == 0x205F || c == 0x3000 || c == 0xFEFF;
}

bool is_apostrophe(char32_t c) {
  return c == '\'' || c == 0x2018 || c == 0x2019 || c == 0x02BC;
}

bool is_digit(char32_t c) { return c >= '0' && c <= '9'; }

// Letters and digits. Outside ASCII everything that is not in a known
// punctuation/symbol block counts as a word character.
bool is_word(char32_t c) {
  if (c < 0x80) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || is_digit(c);
  }
  if (is_space(c) || is_apostrophe(c)) return false;
  if (c < 0xC0) return c == 0xAA || c == 0xB5 || c == 0xBA;  // Latin-1 symbols
  if (c == 0xD7 || c == 0xF7) return false;
  if (c >= 0x2000 && c <= 0x2BFF) return false;  // punctuation, arrows, math
  if (c >= 0x3000 && c <= 0x303F) return false;  // CJK punctuation
  if (c >= 0xFE30 && c <= 0xFE6F) return false;
  if ((c >= 0xFF01 && c <= 0xFF0F) || (c >= 0xFF1A && c <= 0xFF20) ||
      (c >= 0xFF3B && c <= 0xFF40) || (c >= 0xFF5B && c <= 0xFF65)) {
    return false;
  }
  return true;
}

char32_t to_lower(char32_t c) {
  if (c >= 'A' && c <= 'Z') return c + 32;
  if (c < 0xC0) return c;
  if (c <= 0xDE) return c == 0xD7 ? c : c + 32;
  if (c >= 0x100 && c <= 0x137) return (c % 2 == 0) ? c + 1 : c;
  if (c >= 0x139 && c <= 0x148) return (c % 2 == 1) ? c + 1 : c;
  if (c >= 0x14A && c <= 0x177) return (c % 2 == 0) ? c + 1 : c;
  if (c == 0x178) return 0xFF;
  if (c >= 0x179 && c <= 0x17E) return (c % 2 == 1) ? c + 1 : c;
  if (c >= 0x391 && c <= 0x3AB && c != 0x3A2) return c + 32;
  if (c >= 0x400 && c <= 0x40F) return c + 80;
  if (c >= 0x410 && c <= 0x42F) return c + 32;
  return c;
}

bool is_clitic(std::string_view lowered) {
  return lowered == "s" || lowered == "ll" || lowered == "re" ||
         lowered == "ve" || lowered == "d" || lowered == "m" ||
         lowered == "t";
}

}  // namespace

std::string normalize(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (const auto& cp : decode(text)) {
    if (is_apostrophe(cp.value)) {
      out.push_back('\'');
    } else if (cp.value < 0x80) {
      out.push_back(static_cast<char>(to_lower(cp.value)));
    } else if (to_lower(cp.value) == cp.value) {
      out.append(text.substr(cp.begin, cp.end - cp.begin));
    } else {
      encode(to_lower(cp.value), out);
    }
  }
  return out;
}

bool is_punctuation_text(std::string_view text) {
  for (const auto& cp : decode(text)) {
    if (is_word(cp.value)) return false;
  }
  return true;
}

std::vector<Token> tokenize(std::string_view text) {
  const auto cps = decode(text);
  const std::size_t n = cps.size();
  std::vector<Token> tokens;

  auto emit = [&](std::size_t first, std::size_t last) {
    const auto begin = cps[first].begin;
    const auto end = cps[last - 1].end;
    Token t;
    t.surface = std::string(text.substr(begin, end - begin));
    t.normalized = normalize(t.surface);
    t.is_punctuation = is_punctuation_text(t.surface);
    tokens.push_back(std::move(t));
  };
  auto word_at = [&](std::size_t k) { return k < n && is_word(cps[k].value); };

  // Extends a word starting at `i`; returns one past its last code point.
  auto scan_word = [&](std::size_t i) {
    std::size_t j = i;
    while (j < n) {
      const char32_t c = cps[j].value;
      if (is_word(c)) {
        ++j;
      } else if (c == '-' && j > i && word_at(j + 1)) {
        ++j;
      } else if ((c == '.' || c == ',' || c == '/') && j > i &&
                 is_digit(cps[j - 1].value) && j + 1 < n &&
                 is_digit(cps[j + 1].value)) {
        ++j;
      } else {
        break;
      }
    }
    return j;
  };

  std::size_t i = 0;
  while (i < n) {
    const char32_t c = cps[i].value;
    if (is_space(c)) {
      ++i;
      continue;
    }
    if (is_word(c)) {
      std::size_t j = scan_word(i);
      emit(i, j);
      // Contraction suffixes: stem'suffix'suffix...
      while (j < n && is_apostrophe(cps[j].value) && word_at(j + 1)) {
        const std::size_t k = scan_word(j + 1);
        emit(j, k);
        j = k;
      }
      i = j;
      continue;
    }
    if (is_apostrophe(c) && word_at(i + 1)) {
      // A free-standing clitic such as pre-tokenized "'s".
      const std::size_t k = scan_word(i + 1);
      const bool at_token_start = i == 0 || is_space(cps[i - 1].value);
      const bool at_token_end = k == n || !is_word(cps[k].value);
      if (at_token_start && at_token_end) {
        std::string lowered;
        for (std::size_t m = i + 1; m < k; ++m) {
          encode(to_lower(cps[m].value), lowered);
        }
        if (is_clitic(lowered)) {
          emit(i, k);
          i = k;
          continue;
        }
      }
    }
    std::size_t j = i + 1;
    while (j < n && cps[j].value == c) ++j;
    emit(i, j);
    i = j;
  }
  return tokens;
}

}  // namespace lexalign

// Copyright 2026 The termspace Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "termspace/unicode.h"

#include <cwctype>
#include <locale>

namespace termspace {
namespace {

// Character tables from the C.UTF-8 locale, or null if it is missing.
const std::ctype<wchar_t> *Facet() {
  static const std::ctype<wchar_t> *facet = []() -> const std::ctype<wchar_t> * {
    for (const char *name : {"C.UTF-8", "C.utf8", "en_US.UTF-8"}) {
      try {
        static std::locale locale(name);
        return &std::use_facet<std::ctype<wchar_t>>(locale);
      } catch (const std::runtime_error &) {
      }
    }
    return nullptr;
  }();
  return facet;
}

bool Is(std::ctype_base::mask mask, char32_t c) {
  if (c < 0x80) return std::use_facet<std::ctype<char>>(std::locale::classic())
                           .is(mask, static_cast<char>(c));
  const auto *facet = Facet();
  if (facet == nullptr) return false;
  return facet->is(mask, static_cast<wchar_t>(c));
}

// Leading byte -> sequence length, 0 for bytes that cannot start one.
int SequenceLength(unsigned char b) {
  if (b < 0x80) return 1;
  if (b >= 0xC2 && b <= 0xDF) return 2;
  if (b >= 0xE0 && b <= 0xEF) return 3;
  if (b >= 0xF0 && b <= 0xF4) return 4;
  return 0;
}

// Decodes one sequence at text[pos]. Returns its length, or 0 if invalid.
int DecodeOne(std::string_view text, size_t pos, char32_t *out) {
  const auto b0 = static_cast<unsigned char>(text[pos]);
  int len = SequenceLength(b0);
  if (len == 0 || pos + len > text.size()) return 0;
  if (len == 1) {
    *out = b0;
    return 1;
  }
  char32_t c = b0 & (0x7F >> len);
  for (int i = 1; i < len; ++i) {
    const auto b = static_cast<unsigned char>(text[pos + i]);
    if ((b & 0xC0) != 0x80) return 0;
    c = (c << 6) | (b & 0x3F);
  }
  // Reject overlong forms, surrogates and out of range values.
  if ((len == 3 && c < 0x800) || (len == 4 && c < 0x10000)) return 0;
  if (c >= 0xD800 && c <= 0xDFFF) return 0;
  if (c > 0x10FFFF) return 0;
  *out = c;
  return len;
}

}  // namespace

std::vector<CodePoint> DecodeUtf8(std::string_view text) {
  std::vector<CodePoint> result;
  result.reserve(text.size());
  size_t pos = 0;
  while (pos < text.size()) {
    char32_t c;
    int len = DecodeOne(text, pos, &c);
    if (len == 0) {
      result.push_back({kInvalidCodePoint, pos, pos + 1});
      ++pos;
    } else {
      result.push_back({c, pos, pos + len});
      pos += len;
    }
  }
  return result;
}

bool IsValidUtf8(std::string_view text, size_t *error_offset) {
  size_t pos = 0;
  while (pos < text.size()) {
    char32_t c;
    int len = DecodeOne(text, pos, &c);
    if (len == 0) {
      if (error_offset != nullptr) *error_offset = pos;
      return false;
    }
    pos += len;
  }
  return true;
}

void AppendUtf8(char32_t c, std::string *out) {
  if (c < 0x80) {
    out->push_back(static_cast<char>(c));
  } else if (c < 0x800) {
    out->push_back(static_cast<char>(0xC0 | (c >> 6)));
    out->push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else if (c < 0x10000) {
    out->push_back(static_cast<char>(0xE0 | (c >> 12)));
    out->push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else {
    out->push_back(static_cast<char>(0xF0 | (c >> 18)));
    out->push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (c & 0x3F)));
  }
}

bool IsLetter(char32_t c) {
  if (c == kInvalidCodePoint) return false;
  return Is(std::ctype_base::alpha, c);
}

bool IsDigit(char32_t c) { return c >= '0' && c <= '9'; }

bool IsSpace(char32_t c) {
  if (c == 0xA0 || c == 0x2007 || c == 0x202F) return true;
  return Is(std::ctype_base::space, c);
}

bool IsPunctuation(char32_t c) {
  if (c < 0x80) {
    switch (c) {
      case '$': case '+': case '<': case '=': case '>': case '^': case '`':
      case '|': case '~':
        return false;
      default:
        return Is(std::ctype_base::punct, c);
    }
  }
  // General punctuation, Latin-1 punctuation and CJK punctuation blocks.
  if (c >= 0x2010 && c <= 0x2027) return true;
  if (c >= 0x2030 && c <= 0x205E) return true;
  if (c >= 0x3001 && c <= 0x3003) return true;
  if (c >= 0x3008 && c <= 0x3011) return true;
  switch (c) {
    case 0xA1: case 0xA7: case 0xAB: case 0xB6: case 0xB7: case 0xBB:
    case 0xBF:
      return true;
    default:
      return false;
  }
}

bool IsUpper(char32_t c) { return Is(std::ctype_base::upper, c); }

char32_t ToLower(char32_t c) {
  if (c < 0x80) return (c >= 'A' && c <= 'Z') ? c + 32 : c;
  const auto *facet = Facet();
  if (facet == nullptr || c == kInvalidCodePoint) return c;
  return static_cast<char32_t>(facet->tolower(static_cast<wchar_t>(c)));
}

std::string ToLower(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (const CodePoint &cp : DecodeUtf8(text)) {
    if (cp.value == kInvalidCodePoint) {
      out.append(text.substr(cp.begin, cp.end - cp.begin));
    } else {
      AppendUtf8(ToLower(cp.value), &out);
    }
  }
  return out;
}

size_t CodePointCount(std::string_view text) {
  size_t n = 0;
  for (unsigned char b : text) {
    if ((b & 0xC0) != 0x80) ++n;
  }
  return n;
}

}  // namespace termspace

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

#ifndef TERMSPACE_UNICODE_H_
#define TERMSPACE_UNICODE_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace termspace {

// A decoded code point and the byte range it occupies in the source.
struct CodePoint {
  char32_t value;
  size_t begin;
  size_t end;
};

// Replacement value reported for bytes that do not form valid UTF-8.
constexpr char32_t kInvalidCodePoint = 0xFFFD;

// Decodes UTF-8. Invalid bytes come out one at a time as kInvalidCodePoint
// so that every input byte belongs to exactly one code point.
std::vector<CodePoint> DecodeUtf8(std::string_view text);

// Returns false if the text contains malformed or overlong sequences,
// surrogates or values above U+10FFFF. On failure *error_offset receives
// the byte offset of the first bad sequence.
bool IsValidUtf8(std::string_view text, size_t *error_offset = nullptr);

void AppendUtf8(char32_t c, std::string *out);

// Character classes. These use the C.UTF-8 locale tables when available
// and fall back to ASCII rules otherwise.
bool IsLetter(char32_t c);
bool IsDigit(char32_t c);
bool IsSpace(char32_t c);
bool IsPunctuation(char32_t c);
bool IsUpper(char32_t c);
char32_t ToLower(char32_t c);

// Lowercases every code point of a UTF-8 string.
std::string ToLower(std::string_view text);

// Number of code points in a UTF-8 string.
size_t CodePointCount(std::string_view text);

}  // namespace termspace

#endif  // TERMSPACE_UNICODE_H_

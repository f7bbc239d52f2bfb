// Copyright 2026 The vaminer Authors.
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

#ifndef VAMINER_TEXT_H_
#define VAMINER_TEXT_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace vaminer {
namespace text {

// A decoded code point and the number of bytes it occupies. Invalid UTF-8
// decodes to U+FFFD with length 1 so scanning always makes progress.
struct CodePoint {
  char32_t value;
  int length;
};

CodePoint DecodeAt(std::string_view s, size_t pos);

// Decodes the code point that ends right before `pos`.
CodePoint DecodeBefore(std::string_view s, size_t pos);

void AppendUtf8(char32_t cp, std::string *out);

// Character classes used by the phrase scanner and the segmenter. Word
// characters are Unicode alphanumerics plus underscore. Whitespace is the
// set Python's str.isspace() accepts.
bool IsWordChar(char32_t cp);
bool IsSpace(char32_t cp);
bool IsUpper(char32_t cp);

inline bool IsWordCharAt(std::string_view s, size_t pos) {
  return pos < s.size() && IsWordChar(DecodeAt(s, pos).value);
}
inline bool IsSpaceAt(std::string_view s, size_t pos) {
  return pos < s.size() && IsSpace(DecodeAt(s, pos).value);
}

// Position of the first byte after the whitespace run starting at `pos`.
size_t SkipSpace(std::string_view s, size_t pos);

std::string_view Trim(std::string_view s);

// Trims and collapses internal whitespace runs to a single space. Case and
// punctuation are preserved.
std::string NormalizeSurface(std::string_view s);

// Offset conversions from a UTF-8 byte offset.
size_t Utf16Offset(std::string_view s, size_t byte_offset);
size_t CodePointOffset(std::string_view s, size_t byte_offset);

// 64-bit FNV-1a, stable across platforms and runs.
uint64_t Fingerprint(std::string_view data, uint64_t seed = 14695981039346656037ULL);

std::string Hex64(uint64_t value);

}  // namespace text
}  // namespace vaminer

#endif  // VAMINER_TEXT_H_

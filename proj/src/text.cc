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

#include "vaminer/text.h"

#include <algorithm>
#include <cwctype>
#include <iterator>
#include <locale.h>

namespace vaminer {
namespace text {

namespace {

constexpr char32_t kReplacement = 0xFFFD;

#include "word_table.inc"

locale_t UnicodeLocale() {
  static locale_t loc = [] {
    locale_t l = newlocale(LC_CTYPE_MASK, "C.UTF-8", static_cast<locale_t>(0));
    if (l == static_cast<locale_t>(0)) {
      l = newlocale(LC_CTYPE_MASK, "C.utf8", static_cast<locale_t>(0));
    }
    return l;
  }();
  return loc;
}

bool IsContinuation(unsigned char c) { return (c & 0xC0) == 0x80; }

}  // namespace

CodePoint DecodeAt(std::string_view s, size_t pos) {
  const auto *p = reinterpret_cast<const unsigned char *>(s.data()) + pos;
  const size_t avail = s.size() - pos;
  const unsigned char c = p[0];
  if (c < 0x80) return {c, 1};
  int len;
  char32_t cp;
  if ((c & 0xE0) == 0xC0) {
    len = 2;
    cp = c & 0x1F;
  } else if ((c & 0xF0) == 0xE0) {
    len = 3;
    cp = c & 0x0F;
  } else if ((c & 0xF8) == 0xF0) {
    len = 4;
    cp = c & 0x07;
  } else {
    return {kReplacement, 1};
  }
  if (avail < static_cast<size_t>(len)) return {kReplacement, 1};
  for (int i = 1; i < len; ++i) {
    if (!IsContinuation(p[i])) return {kReplacement, 1};
    cp = (cp << 6) | (p[i] & 0x3F);
  }
  // Reject overlong forms and surrogates.
  if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
      (len == 4 && (cp < 0x10000 || cp > 0x10FFFF)) ||
      (cp >= 0xD800 && cp <= 0xDFFF)) {
    return {kReplacement, 1};
  }
  return {cp, len};
}

CodePoint DecodeBefore(std::string_view s, size_t pos) {
  if (pos == 0) return {0, 0};
  size_t start = pos - 1;
  int back = 0;
  while (start > 0 && back < 3 &&
         IsContinuation(static_cast<unsigned char>(s[start]))) {
    --start;
    ++back;
  }
  CodePoint cp = DecodeAt(s, start);
  if (start + cp.length == pos) return cp;
  return {kReplacement, 1};
}

void AppendUtf8(char32_t cp, std::string *out) {
  if (cp < 0x80) {
    out->push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out->push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out->push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out->push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool IsWordChar(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') ||
           (cp >= '0' && cp <= '9') || cp == '_';
  }
  if (cp == kReplacement) return false;
  auto it = std::upper_bound(std::begin(kWordRanges), std::end(kWordRanges), cp,
                             [](char32_t c, const auto &range) { return c < range[0]; });
  return it != std::begin(kWordRanges) && cp <= (*std::prev(it))[1];
}

bool IsSpace(char32_t cp) {
  switch (cp) {
    case ' ': case '\t': case '\n': case '\v': case '\f': case '\r':
    case 0x1C: case 0x1D: case 0x1E: case 0x1F:
    case 0x85: case 0xA0: case 0x1680:
    case 0x2028: case 0x2029: case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

bool IsUpper(char32_t cp) {
  if (cp < 0x80) return cp >= 'A' && cp <= 'Z';
  locale_t loc = UnicodeLocale();
  if (loc == static_cast<locale_t>(0)) return false;
  return iswupper_l(static_cast<wint_t>(cp), loc) != 0;
}

size_t SkipSpace(std::string_view s, size_t pos) {
  while (pos < s.size()) {
    CodePoint cp = DecodeAt(s, pos);
    if (!IsSpace(cp.value)) break;
    pos += cp.length;
  }
  return pos;
}

std::string_view Trim(std::string_view s) {
  size_t begin = SkipSpace(s, 0);
  size_t end = s.size();
  while (end > begin) {
    CodePoint cp = DecodeBefore(s, end);
    if (!IsSpace(cp.value)) break;
    end -= cp.length;
  }
  return s.substr(begin, end - begin);
}

std::string NormalizeSurface(std::string_view s) {
  std::string_view trimmed = Trim(s);
  std::string out;
  out.reserve(trimmed.size());
  size_t pos = 0;
  while (pos < trimmed.size()) {
    CodePoint cp = DecodeAt(trimmed, pos);
    if (IsSpace(cp.value)) {
      out.push_back(' ');
      pos = SkipSpace(trimmed, pos);
    } else {
      out.append(trimmed.substr(pos, cp.length));
      pos += cp.length;
    }
  }
  return out;
}

size_t Utf16Offset(std::string_view s, size_t byte_offset) {
  size_t units = 0;
  size_t pos = 0;
  while (pos < byte_offset && pos < s.size()) {
    CodePoint cp = DecodeAt(s, pos);
    units += cp.value >= 0x10000 ? 2 : 1;
    pos += cp.length;
  }
  return units;
}

size_t CodePointOffset(std::string_view s, size_t byte_offset) {
  size_t count = 0;
  size_t pos = 0;
  while (pos < byte_offset && pos < s.size()) {
    pos += DecodeAt(s, pos).length;
    ++count;
  }
  return count;
}

uint64_t Fingerprint(std::string_view data, uint64_t seed) {
  uint64_t h = seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string Hex64(uint64_t value) {
  static const char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = kDigits[value & 0xF];
    value >>= 4;
  }
  return out;
}

}  // namespace text
}  // namespace vaminer

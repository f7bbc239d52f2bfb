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

#include <utility>

#include "vaminer/corpus.h"
#include "vaminer/line_io.h"
#include "vaminer/text.h"

namespace vaminer {

namespace {

bool IsTerminator(char c) { return c == '.' || c == '!' || c == '?'; }

bool IsCloser(char32_t cp) {
  return cp == '"' || cp == '\'' || cp == ')' || cp == ']' || cp == 0x201D ||
         cp == 0x2019 || cp == 0x00BB;
}

bool IsOpeningQuote(char32_t cp) {
  return cp == '"' || cp == '\'' || cp == 0x201C || cp == 0x2018 || cp == 0x00AB;
}

bool IsOpener(char32_t cp) { return IsOpeningQuote(cp) || cp == '(' || cp == '['; }

}  // namespace

const std::vector<std::string> &SentenceSplitter::DefaultAbbreviations() {
  static const std::vector<std::string> kDefault = {
      "Mr.",   "Mrs.",  "Ms.",    "Messrs.", "Dr.",  "Prof.", "Jr.",  "Sr.",
      "St.",   "Mt.",   "Ft.",    "Rev.",    "Hon.", "Gov.",  "Sen.", "Rep.",
      "Gen.",  "Col.",  "Lt.",    "Maj.",    "Capt.", "Sgt.", "Cmdr.", "Adm.",
      "Pres.", "U.S.",  "U.N.",   "U.K.",    "N.Y.", "L.A.",  "D.C.", "vs.",
      "v.",    "No.",   "Nos.",   "Vol.",    "Inc.", "Corp.", "Co.",  "Ltd.",
      "Bros.", "Ave.",  "Blvd.",  "Rd.",     "Jan.", "Feb.",  "Aug.", "Sept.",
      "Sep.",  "Oct.",  "Nov.",   "Dec.",    "etc.", "e.g.",  "i.e.", "cf.",
      "Calif.", "Conn.", "Mass.", "Fla.",    "Ill.", "Mich.", "Penn.", "Wash.",
  };
  return kDefault;
}

SentenceSplitter::SentenceSplitter()
    : abbreviations_(DefaultAbbreviations().begin(), DefaultAbbreviations().end()) {}

SentenceSplitter::SentenceSplitter(std::set<std::string, std::less<>> abbreviations)
    : abbreviations_(std::move(abbreviations)) {}

SentenceSplitter SentenceSplitter::FromFile(const std::string &path) {
  std::set<std::string, std::less<>> abbreviations;
  LineReader reader(path);
  std::string line;
  while (reader.Next(&line)) {
    std::string_view token = text::Trim(line);
    if (token.empty() || token.front() == '#') continue;
    abbreviations.emplace(token);
  }
  return SentenceSplitter(std::move(abbreviations));
}

std::vector<Sentence> SentenceSplitter::Split(const Document &doc) const {
  return Split(doc.doc_id, doc.body);
}

bool SentenceSplitter::IsBoundary(std::string_view body, size_t term_begin,
                                  size_t term_end, size_t *sentence_end) const {
  size_t pos = term_end;
  while (pos < body.size()) {
    text::CodePoint cp = text::DecodeAt(body, pos);
    if (!IsCloser(cp.value)) break;
    pos += cp.length;
  }
  *sentence_end = pos;

  size_t next = text::SkipSpace(body, pos);
  if (next == pos || next >= body.size()) return false;
  text::CodePoint first = text::DecodeAt(body, next);
  if (!text::IsUpper(first.value) && !IsOpeningQuote(first.value)) return false;

  // Abbreviations and initials only matter for a lone period.
  if (term_end - term_begin == 1 && body[term_begin] == '.') {
    size_t token_begin = term_begin;
    while (token_begin > 0) {
      text::CodePoint prev = text::DecodeBefore(body, token_begin);
      if (text::IsSpace(prev.value)) break;
      token_begin -= prev.length;
    }
    while (token_begin < term_begin) {
      text::CodePoint cp = text::DecodeAt(body, token_begin);
      if (!IsOpener(cp.value)) break;
      token_begin += cp.length;
    }
    std::string_view token = body.substr(token_begin, term_end - token_begin);
    if (abbreviations_.count(token) > 0) return false;
    std::string_view stem = token.substr(0, token.size() - 1);
    if (!stem.empty()) {
      text::CodePoint cp = text::DecodeAt(stem, 0);
      if (static_cast<size_t>(cp.length) == stem.size() && text::IsUpper(cp.value)) {
        return false;
      }
    }
  }
  return true;
}

std::vector<Sentence> SentenceSplitter::Split(std::string_view doc_id,
                                              std::string_view body) const {
  std::vector<Sentence> out;
  auto emit = [&](size_t begin, size_t end) {
    Sentence s;
    s.doc_id = std::string(doc_id);
    s.index = out.size();
    s.start = begin;
    s.end = end;
    s.text = std::string(body.substr(begin, end - begin));
    out.push_back(std::move(s));
  };

  size_t start = text::SkipSpace(body, 0);
  size_t pos = start;
  while (pos < body.size()) {
    if (!IsTerminator(body[pos])) {
      ++pos;
      continue;
    }
    size_t term_end = pos;
    while (term_end < body.size() && IsTerminator(body[term_end])) ++term_end;
    size_t sentence_end;
    if (IsBoundary(body, pos, term_end, &sentence_end)) {
      emit(start, sentence_end);
      start = text::SkipSpace(body, sentence_end);
      pos = start;
    } else {
      pos = term_end;
    }
  }
  std::string_view rest = text::Trim(body.substr(start));
  if (!rest.empty()) emit(start, start + rest.size());
  return out;
}

}  // namespace vaminer

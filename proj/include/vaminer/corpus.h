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

#ifndef VAMINER_CORPUS_H_
#define VAMINER_CORPUS_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "json.hpp"

namespace vaminer {

class LineReader;

struct Document {
  std::string doc_id;
  std::string date;
  std::optional<int> year;  // nullopt if the date does not parse
  std::string section;
  std::string author;
  std::string headline;
  std::string body;
};

// Extracts the year from "YYYY", "YYYY-MM", "YYYY-MM-DD" (optionally
// followed by a time part) or "YYYYMMDD[Thhmmss]".
std::optional<int> ParseYear(std::string_view date);

// Parses one corpus JSONL record. Returns false if the line is not an
// object or lacks a string doc_id.
bool ParseDocumentLine(std::string_view line, Document *doc);
std::string DocumentToJsonLine(const Document &doc);

// Streams Documents from a corpus file. Only the "jsonl" format is
// supported; gzip is handled transparently.
class CorpusReader {
 public:
  CorpusReader(const std::string &path, std::string_view format = "jsonl");
  ~CorpusReader();

  bool Next(Document *doc);

  uint64_t skipped_malformed() const { return skipped_malformed_; }
  uint64_t skipped_duplicate() const { return skipped_duplicate_; }

 private:
  std::unique_ptr<LineReader> reader_;
  std::unordered_set<std::string> seen_ids_;
  std::string line_;
  uint64_t skipped_malformed_ = 0;
  uint64_t skipped_duplicate_ = 0;
};

// Per-dimension article counts for the whole corpus, needed to put VA
// counts in relation to corpus size.
struct CorpusSummary {
  uint64_t n_articles = 0;
  uint64_t unknown_year = 0;
  std::map<std::string, uint64_t> sections;
  std::map<std::string, uint64_t> authors;
  std::map<int, uint64_t> years;

  void Add(const Document &doc);
  void Merge(const CorpusSummary &other);

  nlohmann::json ToJson() const;
  static CorpusSummary FromJson(const nlohmann::json &j);

  bool operator==(const CorpusSummary &) const = default;
};

struct Sentence {
  std::string doc_id;
  size_t index = 0;
  std::string text;
  size_t start = 0;  // byte offsets into the document body
  size_t end = 0;
};

// Deterministic rule-based sentence splitter.
//
// A boundary is a run of terminators (. ! ?), optionally followed by
// closing quotes or brackets, then whitespace, then an uppercase letter or
// an opening quote. No split happens after a known abbreviation or a
// single-letter initial such as the "P." in "P. T. Barnum".
class SentenceSplitter {
 public:
  SentenceSplitter();  // default abbreviation list
  explicit SentenceSplitter(std::set<std::string, std::less<>> abbreviations);

  // One token per line, '#' comments allowed.
  static SentenceSplitter FromFile(const std::string &path);
  static const std::vector<std::string> &DefaultAbbreviations();

  std::vector<Sentence> Split(const Document &doc) const;
  std::vector<Sentence> Split(std::string_view doc_id, std::string_view body) const;

  const std::set<std::string, std::less<>> &abbreviations() const { return abbreviations_; }

 private:
  bool IsBoundary(std::string_view body, size_t term_begin, size_t term_end,
                  size_t *sentence_end) const;

  std::set<std::string, std::less<>> abbreviations_;
};

}  // namespace vaminer

#endif  // VAMINER_CORPUS_H_

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

#ifndef VAMINER_EXTRACTION_H_
#define VAMINER_EXTRACTION_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "vaminer/corpus.h"
#include "vaminer/gazetteer.h"

namespace vaminer {

// One "the ... of" match inside a sentence. All offsets are byte offsets
// into the sentence text.
struct CandidatePhrase {
  size_t start = 0;        // first byte of "the"
  size_t end = 0;          // one past the "f" of "of"
  size_t inner_start = 0;  // first byte of the first inner token
  size_t inner_end = 0;    // one past the last inner token
  int inner_tokens = 0;    // 1..5

  std::string_view inner_text(std::string_view sentence) const {
    return sentence.substr(inner_start, inner_end - inner_start);
  }
  bool operator==(const CandidatePhrase &) const = default;
};

enum class ArticleCase {
  kLowercaseOnly,      // only "the", as in the original pattern
  kSentenceInitialToo  // also "The" when no word character precedes it
};

inline constexpr int kMaxInnerTokens = 5;

// All non-overlapping matches of \bthe\s+([\w.,'-]+\s+){1,5}?of\b, found
// leftmost-first with the shortest inner span, scanning resumes at the end
// of each match.
std::vector<CandidatePhrase> FindPhrases(std::string_view sentence,
                                         ArticleCase article = ArticleCase::kLowercaseOnly);

struct ModifierSpan {
  size_t start = 0;
  size_t end = 0;
  std::string_view text(std::string_view sentence) const {
    return sentence.substr(start, end - start);
  }
};

inline constexpr int kDefaultModifierTokens = 6;

// The tokens right after the phrase's "of", up to the first hard boundary
// (. , ; : ! ? " ' ) ] and curly quotes) or `max_tokens` tokens. An
// apostrophe between two word characters ("the 1990's") is not a boundary.
ModifierSpan FindModifier(std::string_view sentence, const CandidatePhrase &phrase,
                          int max_tokens = kDefaultModifierTokens);
std::string ExtractModifier(std::string_view sentence, const CandidatePhrase &phrase,
                            int max_tokens = kDefaultModifierTokens);

struct Candidate {
  std::string candidate_id;
  std::string doc_id;
  std::string date;
  std::optional<int> year;
  std::string section;
  std::string author;
  size_t sentence_index = 0;
  std::string sentence;
  size_t phrase_start = 0;
  size_t phrase_end = 0;
  size_t source_start = 0;
  size_t source_end = 0;
  std::string source_surface;
  std::vector<std::string> entity_ids;     // sorted
  std::vector<std::string> entity_labels;  // parallel to entity_ids
  std::string modifier;
  size_t modifier_start = 0;
  size_t modifier_end = 0;

  // Canonical label of the source: the entity label, or the sorted,
  // de-duplicated labels joined by " / " when the surface is ambiguous.
  std::string SourceLabel() const;

  nlohmann::json ToJson() const;
  static Candidate FromJson(const nlohmann::json &j);

  bool operator==(const Candidate &) const = default;
};

// Stable id derived from (doc_id, sentence index, phrase start).
std::string MakeCandidateId(std::string_view doc_id, size_t sentence_index,
                            size_t phrase_start);

struct FunnelCounts {
  uint64_t n_articles = 0;
  uint64_t n_sentences = 0;
  uint64_t n_phrase_matches = 0;
  uint64_t n_entity_matched = 0;
  uint64_t n_after_blacklist = 0;

  FunnelCounts &operator+=(const FunnelCounts &other);
  bool operator==(const FunnelCounts &) const = default;
  nlohmann::json ToJson() const;
  static FunnelCounts FromJson(const nlohmann::json &j);
};

struct RunStats {
  FunnelCounts total;
  std::map<int, FunnelCounts> per_year;
  FunnelCounts unknown_year;

  FunnelCounts &ForYear(const std::optional<int> &year) {
    return year ? per_year[*year] : unknown_year;
  }
  void Merge(const RunStats &other);
  bool operator==(const RunStats &) const = default;

  nlohmann::json ToJson() const;
  static RunStats FromJson(const nlohmann::json &j);
};

struct ExtractOptions {
  ArticleCase article = ArticleCase::kLowercaseOnly;
  int max_modifier_tokens = kDefaultModifierTokens;
};

// Resolves phrase matches against the gazetteer. Holds read-only
// references; one instance can serve many threads.
class CandidateMatcher {
 public:
  CandidateMatcher(const NameIndex &index, Blacklist blacklist, ExtractOptions options = {});

  // Matches the sentences of one document. Appends candidates to `out` and
  // counts every funnel stage in `stats` (articles/sentences included).
  void MatchDocument(const Document &doc, const std::vector<Sentence> &sentences,
                     std::vector<Candidate> *out, RunStats *stats) const;

  const ExtractOptions &options() const { return options_; }

 private:
  const NameIndex &index_;
  Blacklist blacklist_;
  ExtractOptions options_;
};

struct ExtractionResult {
  std::vector<Candidate> candidates;  // sorted by candidate_id
  RunStats stats;
  CorpusSummary corpus;
  uint64_t skipped_documents = 0;
};

// Segments and matches a whole corpus. `workers` > 1 processes documents in
// parallel; the result does not depend on the worker count.
ExtractionResult RunExtraction(CorpusReader &corpus, const SentenceSplitter &splitter,
                               const CandidateMatcher &matcher, int workers = 1);

void SortCandidates(std::vector<Candidate> *candidates);

// Candidate file I/O (JSONL, one candidate per line).
void WriteCandidates(const std::string &path, const std::vector<Candidate> &candidates);
std::vector<Candidate> ReadCandidates(const std::string &path);

// TSV with columns candidate_id, year, section, author, source_surface,
// entity_ids, modifier, sentence.
std::string CandidatesToTsv(const std::vector<Candidate> &candidates);

}  // namespace vaminer

#endif  // VAMINER_EXTRACTION_H_

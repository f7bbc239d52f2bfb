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

#ifndef VAMINER_STATS_H_
#define VAMINER_STATS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "vaminer/corpus.h"
#include "vaminer/curation.h"
#include "vaminer/extraction.h"

namespace vaminer {

enum class Dimension { kSource, kModifier, kCountry, kSection, kAuthor };

std::string_view DimensionName(Dimension d);

struct FreqRow {
  std::string key;
  uint64_t count = 0;
  double share = 0.0;  // percent of the table's total
  bool operator==(const FreqRow &) const = default;
};

// Rows sorted by count descending, ties by key ascending.
struct FreqTable {
  Dimension dimension = Dimension::kSource;
  uint64_t total = 0;
  std::vector<FreqRow> rows;

  bool operator==(const FreqTable &) const = default;
  nlohmann::json ToJson(size_t top = 0) const;
};

FreqTable MakeFreqTable(Dimension dimension, const std::map<std::string, uint64_t> &counts,
                        uint64_t total);

// Counts per source entity (canonical label, so aliases aggregate).
FreqTable FreqSources(const std::vector<Candidate> &unique_true_va);

// Counts per modifier string, verbatim. Candidates without a modifier are
// not counted.
FreqTable FreqModifiers(const std::vector<Candidate> &unique_true_va);

// Modifier counts restricted to exact country names. Shares are relative to
// all counted modifiers.
FreqTable FreqModifierCountries(const std::vector<Candidate> &unique_true_va,
                                const std::set<std::string, std::less<>> &countries);

std::set<std::string, std::less<>> LoadCountries(const std::string &path);
const std::vector<std::string> &DefaultCountries();

struct JoinedRow {
  std::string key;
  uint64_t va = 0;
  double va_share = 0.0;
  uint64_t articles = 0;
  double article_share = 0.0;
  bool operator==(const JoinedRow &) const = default;
};

// VA counts joined with corpus article counts for the same key.
struct JoinedTable {
  Dimension dimension = Dimension::kSection;
  uint64_t total_va = 0;
  uint64_t total_articles = 0;
  std::vector<JoinedRow> rows;  // VA descending, then key ascending

  bool operator==(const JoinedTable &) const = default;
  nlohmann::json ToJson(size_t top = 0) const;
};

JoinedTable BySection(const std::vector<Candidate> &unique_true_va, const CorpusSummary &corpus);
JoinedTable ByAuthor(const std::vector<Candidate> &unique_true_va, const CorpusSummary &corpus);

struct YearRow {
  int year = 0;
  uint64_t articles = 0;
  uint64_t candidates = 0;
  uint64_t true_va = 0;
  std::optional<double> precision_pct;
  double cand_per_thousand = 0.0;
  double true_per_thousand = 0.0;
  bool operator==(const YearRow &) const = default;
};

struct YearSeries {
  std::vector<YearRow> rows;  // ascending year, only years with articles
  uint64_t unknown_year_candidates = 0;
  uint64_t unknown_year_true = 0;

  bool operator==(const YearSeries &) const = default;
  nlohmann::json ToJson() const;
};

// Per-year candidate and true-VA counts over all non-suppressed candidates
// (not deduplicated), with precision and per-thousand-article rates.
YearSeries PerYear(const std::vector<Candidate> &candidates, const LabelState &labels,
                   const Blacklist &blacklist, const std::map<int, uint64_t> &articles_per_year);

// Rendering.
std::string RenderText(const FreqTable &table, size_t top = 0);
std::string RenderText(const JoinedTable &table, size_t top = 0);
std::string RenderText(const YearSeries &series);
std::string RenderTsv(const FreqTable &table);
std::string RenderTsv(const JoinedTable &table);
// Columns: year, candidates, true_va, precision_pct, cand_per_thousand,
// true_per_thousand.
std::string RenderSeriesCsv(const YearSeries &series);
// Bar chart of candidates and true VA per year with a precision line.
std::string RenderSeriesSvg(const YearSeries &series);

std::string FormatPercent(double pct);  // one decimal, e.g. "12.7%"

}  // namespace vaminer

#endif  // VAMINER_STATS_H_

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

#ifndef VAMINER_REPORT_H_
#define VAMINER_REPORT_H_

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "vaminer/corpus.h"
#include "vaminer/curation.h"
#include "vaminer/extraction.h"
#include "vaminer/stats.h"

namespace vaminer {

// The corpus summary file written by `extract`: article counts per
// section/author/year plus the extraction funnel.
struct ExtractionSummary {
  CorpusSummary corpus;
  std::optional<RunStats> funnel;

  nlohmann::json ToJson() const;
  static ExtractionSummary FromJson(const nlohmann::json &j);
  static ExtractionSummary Load(const std::string &path);
  void Save(const std::string &path) const;
};

struct Tallies {
  uint64_t total = 0;
  uint64_t suppressed = 0;
  uint64_t active = 0;
  uint64_t true_va = 0;
  uint64_t not_va = 0;
  uint64_t unlabeled = 0;

  nlohmann::json ToJson() const;
  bool operator==(const Tallies &) const = default;
};

Tallies CountTallies(const std::vector<Candidate> &candidates, const LabelState &labels,
                     const Blacklist &blacklist);

// Every table and figure computed from one (candidates, labels, blacklist)
// snapshot.
struct Analytics {
  Tallies tallies;
  PrecisionReport precision;
  uint64_t unique_true_va = 0;
  FreqTable sources;
  FreqTable modifiers;
  FreqTable countries;
  JoinedTable sections;
  JoinedTable authors;
  YearSeries per_year;
};

Analytics ComputeAnalytics(const std::vector<Candidate> &candidates, const LabelState &labels,
                           const Blacklist &blacklist, const ExtractionSummary &summary,
                           const std::set<std::string, std::less<>> &countries);

// The payload of GET /api/v1/stats and `vaminer stats --json`. Tables are
// cut to `top` rows (0 = all).
nlohmann::json AnalyticsToJson(const Analytics &analytics, const ExtractionSummary &summary,
                               size_t top);

}  // namespace vaminer

#endif  // VAMINER_REPORT_H_

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

#include "vaminer/report.h"

#include "vaminer/error.h"
#include "vaminer/line_io.h"

namespace vaminer {

using json = nlohmann::json;

json ExtractionSummary::ToJson() const {
  json j = {{"corpus", corpus.ToJson()}};
  if (funnel) j["funnel"] = funnel->ToJson();
  return j;
}

ExtractionSummary ExtractionSummary::FromJson(const json &j) {
  if (!j.is_object() || !j.contains("corpus")) {
    throw DataError("corpus summary lacks a 'corpus' object");
  }
  ExtractionSummary s;
  s.corpus = CorpusSummary::FromJson(j.at("corpus"));
  if (j.contains("funnel")) s.funnel = RunStats::FromJson(j.at("funnel"));
  return s;
}

ExtractionSummary ExtractionSummary::Load(const std::string &path) {
  json j = json::parse(ReadFile(path), nullptr, false);
  if (j.is_discarded()) throw DataError(path + " is not valid JSON");
  try {
    return FromJson(j);
  } catch (const DataError &e) {
    throw DataError(path + ": " + e.what());
  }
}

void ExtractionSummary::Save(const std::string &path) const {
  WriteFileAtomic(path, ToJson().dump(2) + "\n");
}

json Tallies::ToJson() const {
  return {{"total", total},     {"suppressed", suppressed}, {"active", active},
          {"true_va", true_va}, {"not_va", not_va},         {"unlabeled", unlabeled}};
}

Tallies CountTallies(const std::vector<Candidate> &candidates, const LabelState &labels,
                     const Blacklist &blacklist) {
  Tallies t;
  t.total = candidates.size();
  for (const Candidate &c : candidates) {
    if (IsSuppressed(c, blacklist)) {
      ++t.suppressed;
      continue;
    }
    ++t.active;
    auto verdict = labels.VerdictOf(c.candidate_id);
    if (!verdict) {
      ++t.unlabeled;
    } else if (*verdict == Verdict::kTrueVa) {
      ++t.true_va;
    } else {
      ++t.not_va;
    }
  }
  return t;
}

Analytics ComputeAnalytics(const std::vector<Candidate> &candidates, const LabelState &labels,
                           const Blacklist &blacklist, const ExtractionSummary &summary,
                           const std::set<std::string, std::less<>> &countries) {
  Analytics a;
  a.tallies = CountTallies(candidates, labels, blacklist);
  a.precision = ComputePrecision(candidates, labels, blacklist);
  std::vector<Candidate> unique = UniqueTrueVa(candidates, labels, blacklist);
  a.unique_true_va = unique.size();
  a.sources = FreqSources(unique);
  a.modifiers = FreqModifiers(unique);
  a.countries = FreqModifierCountries(unique, countries);
  a.sections = BySection(unique, summary.corpus);
  a.authors = ByAuthor(unique, summary.corpus);
  a.per_year = PerYear(candidates, labels, blacklist, summary.corpus.years);
  return a;
}

json AnalyticsToJson(const Analytics &a, const ExtractionSummary &summary, size_t top) {
  json j = {{"tallies", a.tallies.ToJson()},
            {"precision", a.precision.ToJson()},
            {"unique_true_va", a.unique_true_va},
            {"sources", a.sources.ToJson(top)},
            {"modifiers", a.modifiers.ToJson(top)},
            {"countries", a.countries.ToJson(top)},
            {"sections", a.sections.ToJson(top)},
            {"authors", a.authors.ToJson(top)},
            {"per_year", a.per_year.ToJson()},
            {"n_articles", summary.corpus.n_articles}};
  j["funnel"] = summary.funnel ? summary.funnel->total.ToJson() : json(nullptr);
  return j;
}

}  // namespace vaminer

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

#ifndef VAMINER_CURATION_H_
#define VAMINER_CURATION_H_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "vaminer/extraction.h"
#include "vaminer/gazetteer.h"

namespace vaminer {

enum class Verdict { kTrueVa, kNotVa };

std::string_view VerdictName(Verdict v);
std::optional<Verdict> ParseVerdict(std::string_view name);

// One entry of the label log. An empty verdict clears the label (undo).
struct LabelEvent {
  std::string candidate_id;
  std::optional<Verdict> verdict;
  std::string annotator;
  int64_t ts = 0;  // milliseconds since the epoch

  nlohmann::json ToJson() const;
  static LabelEvent FromJson(const nlohmann::json &j);
  bool operator==(const LabelEvent &) const = default;
};

struct Label {
  Verdict verdict;
  std::string annotator;
  int64_t ts = 0;
  bool operator==(const Label &) const = default;
};

// Current verdict per candidate; the latest event wins.
class LabelState {
 public:
  void Apply(const LabelEvent &event);

  const Label *Find(std::string_view candidate_id) const;
  std::optional<Verdict> VerdictOf(std::string_view candidate_id) const;
  size_t size() const { return labels_.size(); }
  const std::map<std::string, Label, std::less<>> &labels() const { return labels_; }

  nlohmann::json ToJson() const;
  static LabelState FromJson(const nlohmann::json &j);

  bool operator==(const LabelState &) const = default;

 private:
  std::map<std::string, Label, std::less<>> labels_;
};

// Folds a log from an empty state.
LabelState Replay(const std::vector<LabelEvent> &events);

// The extraction output held in memory with lookup by id and by surface.
class CandidateSet {
 public:
  CandidateSet() = default;
  explicit CandidateSet(std::vector<Candidate> candidates);

  const std::vector<Candidate> &all() const { return candidates_; }
  const Candidate *Find(std::string_view candidate_id) const;
  bool Contains(std::string_view candidate_id) const { return Find(candidate_id) != nullptr; }
  std::vector<const Candidate *> WithSurface(std::string_view surface) const;
  size_t size() const { return candidates_.size(); }

 private:
  std::vector<Candidate> candidates_;  // sorted by candidate_id
  std::unordered_map<std::string, size_t, StringHash, std::equal_to<>> by_id_;
  std::unordered_map<std::string, std::vector<size_t>, StringHash, std::equal_to<>> by_surface_;
};

inline bool IsSuppressed(const Candidate &c, const Blacklist &blacklist) {
  return blacklist.Contains(c.source_surface);
}

// Append-only label log with a periodic snapshot. The log is the source of
// truth; the snapshot records the state after its first `events` lines so
// reopening does not need to fold the whole log. Mutations are not
// thread-safe; callers serialize writers.
class LabelStore {
 public:
  // In-memory only store (no persistence).
  LabelStore() = default;

  // Opens (or creates) the log at `log_path`. The snapshot lives next to it
  // at `log_path + ".snapshot"`.
  static LabelStore Open(const std::string &log_path);

  // Appends an event and flushes it to disk before returning. Throws
  // UnknownCandidateError if `known` does not contain the id. Returns false
  // when the verdict is already in effect (nothing appended).
  bool Set(const CandidateSet &known, std::string_view candidate_id,
           std::optional<Verdict> verdict, std::string_view annotator, int64_t ts);

  const LabelState &state() const { return state_; }
  const std::vector<LabelEvent> &log() const { return log_; }

  void WriteSnapshot() const;
  std::string snapshot_path() const { return log_path_.empty() ? "" : log_path_ + ".snapshot"; }

  // Events between automatic snapshots.
  static constexpr size_t kSnapshotInterval = 1000;

 private:
  std::string log_path_;
  std::vector<LabelEvent> log_;
  LabelState state_;
};

struct BlacklistUpdate {
  Blacklist blacklist;  // the new version (unchanged on a no-op)
  bool added = false;
  std::vector<std::string> suppressed;  // candidate ids, sorted
};

// Adds `surface` to the blacklist and reports the known candidates it
// suppresses. Throws ConfigError if the surface is empty after
// normalization; a surface already present is a no-op.
BlacklistUpdate AddToBlacklist(const Blacklist &current, const CandidateSet &candidates,
                               std::string_view surface);

// Removes within-article repeats (same entity ids and modifier in one
// article; the earliest sentence survives) and republications (same
// sentence text and entity ids in several articles; the earliest article
// by date, then doc_id, survives). Output is sorted by candidate_id.
std::vector<Candidate> Dedup(const std::vector<Candidate> &candidates);

struct PrecisionReport {
  uint64_t n_candidates = 0;  // non-suppressed, in scope
  uint64_t n_true = 0;
  uint64_t n_false = 0;
  uint64_t n_unlabeled = 0;
  std::optional<double> precision;          // n_true / n_candidates
  std::optional<double> labeled_precision;  // n_true / (n_true + n_false)

  nlohmann::json ToJson() const;
};

std::optional<double> Ratio(uint64_t numerator, uint64_t denominator);

PrecisionReport ComputePrecision(const std::vector<Candidate> &candidates,
                                 const LabelState &labels, const Blacklist &blacklist,
                                 const std::function<bool(const Candidate &)> &in_scope = {});

// Non-suppressed candidates labeled true_va, deduplicated.
std::vector<Candidate> UniqueTrueVa(const std::vector<Candidate> &candidates,
                                    const LabelState &labels, const Blacklist &blacklist);

}  // namespace vaminer

#endif  // VAMINER_CURATION_H_

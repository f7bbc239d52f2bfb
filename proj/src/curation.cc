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

#include "vaminer/curation.h"

#include <algorithm>
#include <map>
#include <tuple>

#include "vaminer/error.h"
#include "vaminer/line_io.h"
#include "vaminer/text.h"

namespace vaminer {

using json = nlohmann::json;

std::string_view VerdictName(Verdict v) {
  return v == Verdict::kTrueVa ? "true_va" : "not_va";
}

std::optional<Verdict> ParseVerdict(std::string_view name) {
  if (name == "true_va") return Verdict::kTrueVa;
  if (name == "not_va") return Verdict::kNotVa;
  return std::nullopt;
}

json LabelEvent::ToJson() const {
  return {{"candidate_id", candidate_id},
          {"verdict", verdict ? json(VerdictName(*verdict)) : json(nullptr)},
          {"annotator", annotator},
          {"ts", ts}};
}

LabelEvent LabelEvent::FromJson(const json &j) {
  LabelEvent e;
  try {
    e.candidate_id = j.at("candidate_id").get<std::string>();
    const json &v = j.at("verdict");
    if (!v.is_null()) {
      e.verdict = ParseVerdict(v.get<std::string>());
      if (!e.verdict) throw DataError("unknown verdict '" + v.get<std::string>() + "'");
    }
    e.annotator = j.value("annotator", std::string());
    e.ts = j.value("ts", int64_t{0});
  } catch (const json::exception &ex) {
    throw DataError(std::string("malformed label event: ") + ex.what());
  }
  return e;
}

// ---------------------------------------------------------------------------
// LabelState

void LabelState::Apply(const LabelEvent &event) {
  if (event.verdict) {
    labels_.insert_or_assign(event.candidate_id, Label{*event.verdict, event.annotator, event.ts});
  } else {
    auto it = labels_.find(event.candidate_id);
    if (it != labels_.end()) labels_.erase(it);
  }
}

const Label *LabelState::Find(std::string_view candidate_id) const {
  auto it = labels_.find(candidate_id);
  return it == labels_.end() ? nullptr : &it->second;
}

std::optional<Verdict> LabelState::VerdictOf(std::string_view candidate_id) const {
  const Label *l = Find(candidate_id);
  if (l == nullptr) return std::nullopt;
  return l->verdict;
}

json LabelState::ToJson() const {
  json out = json::object();
  for (const auto &[id, label] : labels_) {
    out[id] = {{"verdict", VerdictName(label.verdict)},
               {"annotator", label.annotator},
               {"ts", label.ts}};
  }
  return out;
}

LabelState LabelState::FromJson(const json &j) {
  LabelState s;
  for (const auto &[id, v] : j.items()) {
    auto verdict = ParseVerdict(v.at("verdict").get<std::string>());
    if (!verdict) throw DataError("bad verdict in label snapshot");
    s.labels_.emplace(id, Label{*verdict, v.value("annotator", std::string()),
                                v.value("ts", int64_t{0})});
  }
  return s;
}

LabelState Replay(const std::vector<LabelEvent> &events) {
  LabelState state;
  for (const auto &e : events) state.Apply(e);
  return state;
}

// ---------------------------------------------------------------------------
// CandidateSet

CandidateSet::CandidateSet(std::vector<Candidate> candidates)
    : candidates_(std::move(candidates)) {
  SortCandidates(&candidates_);
  for (size_t i = 0; i < candidates_.size(); ++i) {
    if (!by_id_.emplace(candidates_[i].candidate_id, i).second) {
      throw DataError("duplicate candidate_id " + candidates_[i].candidate_id);
    }
    by_surface_[candidates_[i].source_surface].push_back(i);
  }
}

const Candidate *CandidateSet::Find(std::string_view candidate_id) const {
  auto it = by_id_.find(candidate_id);
  return it == by_id_.end() ? nullptr : &candidates_[it->second];
}

std::vector<const Candidate *> CandidateSet::WithSurface(std::string_view surface) const {
  std::vector<const Candidate *> out;
  auto it = by_surface_.find(surface);
  if (it != by_surface_.end()) {
    for (size_t i : it->second) out.push_back(&candidates_[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// LabelStore

LabelStore LabelStore::Open(const std::string &log_path) {
  LabelStore store;
  store.log_path_ = log_path;
  if (FileExists(log_path)) {
    LineReader reader(log_path);
    std::string line;
    std::optional<uint64_t> bad_line;
    while (reader.Next(&line)) {
      if (text::Trim(line).empty()) continue;
      if (bad_line) {
        throw DataError(log_path + ":" + std::to_string(*bad_line) + ": malformed label event");
      }
      json j = json::parse(line, nullptr, false);
      if (j.is_discarded() || !j.is_object()) {
        // A torn final line from an interrupted write is dropped; anything
        // after it means real corruption.
        bad_line = reader.line_number();
        continue;
      }
      store.log_.push_back(LabelEvent::FromJson(j));
    }
  }

  size_t replay_from = 0;
  const std::string snapshot = store.snapshot_path();
  if (FileExists(snapshot)) {
    json j = json::parse(ReadFile(snapshot), nullptr, false);
    if (!j.is_discarded() && j.is_object() && j.contains("events") && j.contains("state")) {
      size_t events = j["events"].get<size_t>();
      if (events <= store.log_.size()) {
        store.state_ = LabelState::FromJson(j["state"]);
        replay_from = events;
      }
    }
  }
  for (size_t i = replay_from; i < store.log_.size(); ++i) store.state_.Apply(store.log_[i]);
  return store;
}

bool LabelStore::Set(const CandidateSet &known, std::string_view candidate_id,
                     std::optional<Verdict> verdict, std::string_view annotator, int64_t ts) {
  if (!known.Contains(candidate_id)) throw UnknownCandidateError(std::string(candidate_id));
  if (state_.VerdictOf(candidate_id) == verdict) return false;
  LabelEvent event{std::string(candidate_id), verdict, std::string(annotator), ts};
  if (!log_path_.empty()) {
    AppendDurable(log_path_, event.ToJson().dump(-1, ' ', false, json::error_handler_t::replace));
  }
  state_.Apply(event);
  log_.push_back(std::move(event));
  if (!log_path_.empty() && log_.size() % kSnapshotInterval == 0) WriteSnapshot();
  return true;
}

void LabelStore::WriteSnapshot() const {
  if (log_path_.empty()) return;
  json j = {{"events", log_.size()}, {"state", state_.ToJson()}};
  WriteFileAtomic(snapshot_path(), j.dump());
}

// ---------------------------------------------------------------------------
// Blacklist curation

BlacklistUpdate AddToBlacklist(const Blacklist &current, const CandidateSet &candidates,
                               std::string_view surface) {
  std::string normalized = text::NormalizeSurface(surface);
  if (normalized.empty()) throw ConfigError("blacklist surface is empty");
  BlacklistUpdate update;
  if (current.Contains(normalized)) {
    update.blacklist = current;
    return update;
  }
  update.blacklist = current.With(normalized);
  update.added = true;
  for (const Candidate *c : candidates.WithSurface(normalized)) {
    update.suppressed.push_back(c->candidate_id);
  }
  std::sort(update.suppressed.begin(), update.suppressed.end());
  return update;
}

// ---------------------------------------------------------------------------
// Dedup

namespace {

std::string JoinIds(const std::vector<std::string> &ids) {
  std::string out;
  for (const auto &id : ids) {
    out += id;
    out.push_back('\x1f');
  }
  return out;
}

// Empty dates sort after every real date.
std::tuple<bool, std::string_view, std::string_view> DocOrder(const Candidate &c) {
  return {c.date.empty(), c.date, c.doc_id};
}

}  // namespace

std::vector<Candidate> Dedup(const std::vector<Candidate> &candidates) {
  // Within one article: first occurrence of (entities, modifier) wins.
  std::map<std::tuple<std::string, std::string, std::string>, size_t> first_in_doc;
  for (size_t i = 0; i < candidates.size(); ++i) {
    const Candidate &c = candidates[i];
    auto key = std::make_tuple(c.doc_id, JoinIds(c.entity_ids), text::NormalizeSurface(c.modifier));
    auto [it, inserted] = first_in_doc.emplace(std::move(key), i);
    if (!inserted) {
      const Candidate &kept = candidates[it->second];
      if (std::tie(c.sentence_index, c.phrase_start, c.candidate_id) <
          std::tie(kept.sentence_index, kept.phrase_start, kept.candidate_id)) {
        it->second = i;
      }
    }
  }

  // Across articles: a sentence republished elsewhere keeps only the
  // earliest article's copy.
  std::map<std::pair<std::string, std::string>, std::vector<size_t>> by_sentence;
  for (const auto &[key, i] : first_in_doc) {
    const Candidate &c = candidates[i];
    by_sentence[{text::NormalizeSurface(c.sentence), JoinIds(c.entity_ids)}].push_back(i);
  }

  std::vector<Candidate> out;
  for (const auto &[key, members] : by_sentence) {
    size_t winner = members.front();
    for (size_t i : members) {
      if (DocOrder(candidates[i]) < DocOrder(candidates[winner])) winner = i;
    }
    for (size_t i : members) {
      if (candidates[i].doc_id == candidates[winner].doc_id) out.push_back(candidates[i]);
    }
  }
  SortCandidates(&out);
  return out;
}

// ---------------------------------------------------------------------------
// Precision

std::optional<double> Ratio(uint64_t numerator, uint64_t denominator) {
  if (denominator == 0) return std::nullopt;
  return static_cast<double>(numerator) / static_cast<double>(denominator);
}

json PrecisionReport::ToJson() const {
  return {{"n_candidates", n_candidates},
          {"n_true", n_true},
          {"n_false", n_false},
          {"n_unlabeled", n_unlabeled},
          {"precision", precision ? json(*precision) : json(nullptr)},
          {"labeled_precision", labeled_precision ? json(*labeled_precision) : json(nullptr)}};
}

PrecisionReport ComputePrecision(const std::vector<Candidate> &candidates,
                                 const LabelState &labels, const Blacklist &blacklist,
                                 const std::function<bool(const Candidate &)> &in_scope) {
  PrecisionReport r;
  for (const Candidate &c : candidates) {
    if (IsSuppressed(c, blacklist)) continue;
    if (in_scope && !in_scope(c)) continue;
    ++r.n_candidates;
    auto verdict = labels.VerdictOf(c.candidate_id);
    if (!verdict) {
      ++r.n_unlabeled;
    } else if (*verdict == Verdict::kTrueVa) {
      ++r.n_true;
    } else {
      ++r.n_false;
    }
  }
  r.precision = Ratio(r.n_true, r.n_candidates);
  r.labeled_precision = Ratio(r.n_true, r.n_true + r.n_false);
  return r;
}

std::vector<Candidate> UniqueTrueVa(const std::vector<Candidate> &candidates,
                                    const LabelState &labels, const Blacklist &blacklist) {
  std::vector<Candidate> true_va;
  for (const Candidate &c : candidates) {
    if (IsSuppressed(c, blacklist)) continue;
    if (labels.VerdictOf(c.candidate_id) == Verdict::kTrueVa) true_va.push_back(c);
  }
  return Dedup(true_va);
}

}  // namespace vaminer

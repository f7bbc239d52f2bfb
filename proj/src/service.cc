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

#include "vaminer/service.h"

#include <algorithm>
#include <charconv>
#include <chrono>

#include "httplib.h"
#include "vaminer/error.h"
#include "vaminer/line_io.h"
#include "vaminer/text.h"

namespace vaminer {

using json = nlohmann::json;

namespace {

constexpr size_t kDefaultPageSize = 50;
constexpr size_t kMaxPageSize = 1000;
constexpr size_t kDefaultTop = 10;

ApiResponse Error(int status, const std::string &message) {
  ApiResponse r;
  r.status = status;
  r.body = {{"error", message}};
  return r;
}

template <typename T>
std::optional<T> ParseNumber(const std::string &s) {
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

int64_t NowMillis() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

json CandidateView(const Candidate &c, const SessionSnapshot &snap) {
  json view = c.ToJson();
  auto verdict = snap.labels.VerdictOf(c.candidate_id);
  view["verdict"] = verdict ? json(VerdictName(*verdict)) : json(nullptr);
  view["suppressed"] = IsSuppressed(c, snap.blacklist);
  view["source_label"] = c.SourceLabel();
  view["highlight"] = {
      {"unit", "utf16"},
      {"source", {text::Utf16Offset(c.sentence, c.source_start), text::Utf16Offset(c.sentence, c.source_end)}},
      {"modifier",
       {text::Utf16Offset(c.sentence, c.modifier_start), text::Utf16Offset(c.sentence, c.modifier_end)}},
      {"phrase", {text::Utf16Offset(c.sentence, c.phrase_start), text::Utf16Offset(c.sentence, c.phrase_end)}}};
  return view;
}

bool MatchesSource(const Candidate &c, const std::string &source) {
  if (c.source_surface == source || c.SourceLabel() == source) return true;
  for (size_t i = 0; i < c.entity_ids.size(); ++i) {
    if (c.entity_ids[i] == source) return true;
    if (i < c.entity_labels.size() && c.entity_labels[i] == source) return true;
  }
  return false;
}

}  // namespace

CurationSession::CurationSession(const ServiceConfig &config) : config_(config) {
  if (config_.candidates_path.empty() || config_.labels_path.empty() ||
      config_.blacklist_path.empty()) {
    throw ConfigError("--candidates, --labels and --blacklist are required");
  }
  if (!FileExists(config_.candidates_path)) {
    throw ConfigError("candidates file not found: " + config_.candidates_path);
  }
  if (!config_.corpus_summary_path.empty()) {
    summary_ = ExtractionSummary::Load(config_.corpus_summary_path);
  }
  if (!config_.countries_path.empty()) {
    countries_ = LoadCountries(config_.countries_path);
  } else {
    countries_.insert(DefaultCountries().begin(), DefaultCountries().end());
  }
  auto snap = std::make_shared<SessionSnapshot>();
  snap->candidates = std::make_shared<const CandidateSet>(ReadCandidates(config_.candidates_path));
  snap->blacklist = Blacklist::Load(config_.blacklist_path);
  store_ = LabelStore::Open(config_.labels_path);
  snap->labels = store_.state();
  snapshot_ = std::move(snap);
}

CurationSession::~CurationSession() {
  try {
    Checkpoint();
  } catch (...) {
  }
}

std::shared_ptr<const SessionSnapshot> CurationSession::snapshot() const {
  std::lock_guard<std::mutex> lock(snapshot_mu_);
  return snapshot_;
}

void CurationSession::Publish(std::shared_ptr<const SessionSnapshot> next) {
  std::lock_guard<std::mutex> lock(snapshot_mu_);
  snapshot_ = std::move(next);
}

void CurationSession::Checkpoint() {
  std::lock_guard<std::mutex> lock(writer_mu_);
  store_.WriteSnapshot();
}

ApiResponse CurationSession::ListCandidates(const std::map<std::string, std::string> &query) const {
  auto snap = snapshot();
  auto param = [&](const char *name) -> const std::string * {
    auto it = query.find(name);
    return it == query.end() ? nullptr : &it->second;
  };

  std::string status = "all";
  if (const auto *s = param("status")) status = *s;
  static const std::set<std::string> kStatuses = {"all", "unlabeled", "labeled",
                                                  "true_va", "not_va", "suppressed"};
  if (kStatuses.count(status) == 0) return Error(400, "invalid status '" + status + "'");

  std::optional<int> year;
  if (const auto *y = param("year")) {
    year = ParseNumber<int>(*y);
    if (!year) return Error(400, "invalid year '" + *y + "'");
  }
  size_t page = 0, page_size = kDefaultPageSize;
  if (const auto *p = param("page")) {
    auto v = ParseNumber<size_t>(*p);
    if (!v) return Error(400, "invalid page '" + *p + "'");
    page = *v;
  }
  if (const auto *p = param("page_size")) {
    auto v = ParseNumber<size_t>(*p);
    if (!v || *v == 0 || *v > kMaxPageSize) {
      return Error(400, "page_size must be between 1 and " + std::to_string(kMaxPageSize));
    }
    page_size = *v;
  }
  const std::string *source = param("source");
  const std::string *section = param("section");

  std::vector<const Candidate *> matches;
  for (const Candidate &c : snap->candidates->all()) {
    const bool suppressed = IsSuppressed(c, snap->blacklist);
    if ((status == "suppressed") != suppressed) continue;
    if (status != "all" && status != "suppressed") {
      auto verdict = snap->labels.VerdictOf(c.candidate_id);
      if (status == "unlabeled" && verdict) continue;
      if (status == "labeled" && !verdict) continue;
      if (status == "true_va" && verdict != Verdict::kTrueVa) continue;
      if (status == "not_va" && verdict != Verdict::kNotVa) continue;
    }
    if (year && c.year != year) continue;
    if (section && c.section != *section) continue;
    if (source && !MatchesSource(c, *source)) continue;
    matches.push_back(&c);
  }

  json items = json::array();
  const size_t begin = std::min(matches.size(), page * page_size);
  const size_t end = std::min(matches.size(), begin + page_size);
  for (size_t i = begin; i < end; ++i) items.push_back(CandidateView(*matches[i], *snap));

  ApiResponse r;
  r.body = {{"total", matches.size()}, {"page", page}, {"page_size", page_size}, {"items", items}};
  return r;
}

ApiResponse CurationSession::SubmitLabel(const std::string &body) {
  json j = json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return Error(400, "body must be a JSON object");
  auto id = j.find("candidate_id");
  if (id == j.end() || !id->is_string()) return Error(400, "candidate_id (string) is required");
  auto v = j.find("verdict");
  if (v == j.end()) return Error(400, "verdict is required");
  std::optional<Verdict> verdict;
  if (v->is_string()) {
    const auto &name = v->get_ref<const std::string &>();
    if (name != "unlabeled") {
      verdict = ParseVerdict(name);
      if (!verdict) return Error(400, "verdict must be true_va, not_va or unlabeled");
    }
  } else if (!v->is_null()) {
    return Error(400, "verdict must be a string or null");
  }
  std::string annotator = "annotator";
  if (auto a = j.find("annotator"); a != j.end()) {
    if (!a->is_string()) return Error(400, "annotator must be a string");
    annotator = a->get<std::string>();
  }

  std::lock_guard<std::mutex> lock(writer_mu_);
  auto current = snapshot();
  bool changed;
  try {
    changed = store_.Set(*current->candidates, id->get<std::string>(), verdict, annotator, NowMillis());
  } catch (const UnknownCandidateError &e) {
    return Error(404, e.what());
  }
  auto next = std::make_shared<SessionSnapshot>(*current);
  next->labels = store_.state();
  Publish(next);

  ApiResponse r;
  r.body = {{"ok", true},
            {"changed", changed},
            {"candidate_id", id->get<std::string>()},
            {"verdict", verdict ? json(VerdictName(*verdict)) : json(nullptr)},
            {"tallies", CountTallies(next->candidates->all(), next->labels, next->blacklist).ToJson()}};
  return r;
}

ApiResponse CurationSession::AddBlacklist(const std::string &body) {
  json j = json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return Error(400, "body must be a JSON object");
  auto s = j.find("surface");
  if (s == j.end() || !s->is_string()) return Error(400, "surface (string) is required");
  std::string surface = text::NormalizeSurface(s->get<std::string>());
  if (surface.empty()) return Error(400, "surface is empty");
  if (surface.find('\n') != std::string::npos) return Error(400, "surface must be one line");

  std::lock_guard<std::mutex> lock(writer_mu_);
  auto current = snapshot();
  BlacklistUpdate update = AddToBlacklist(current->blacklist, *current->candidates, surface);
  auto next = current;
  if (update.added) {
    AppendDurable(config_.blacklist_path, surface);
    auto mutated = std::make_shared<SessionSnapshot>(*current);
    mutated->blacklist = update.blacklist;
    Publish(mutated);
    next = mutated;
  }
  ApiResponse r;
  r.body = {{"added", update.added},
            {"surface", surface},
            {"suppressed", update.suppressed},
            {"blacklist_version", next->blacklist.version()},
            {"tallies", CountTallies(next->candidates->all(), next->labels, next->blacklist).ToJson()}};
  return r;
}

json CurationSession::StatsJson(size_t top) const {
  auto snap = snapshot();
  Analytics a = ComputeAnalytics(snap->candidates->all(), snap->labels, snap->blacklist,
                                 summary_, countries_);
  json j = AnalyticsToJson(a, summary_, top);
  j["blacklist_size"] = snap->blacklist.size();
  return j;
}

ApiResponse CurationSession::Stats(const std::map<std::string, std::string> &query) const {
  size_t top = kDefaultTop;
  if (auto it = query.find("top"); it != query.end()) {
    auto v = ParseNumber<size_t>(it->second);
    if (!v) return Error(400, "invalid top '" + it->second + "'");
    top = *v;
  }
  ApiResponse r;
  r.body = StatsJson(top);
  return r;
}

ApiResponse CurationSession::Export() const {
  auto snap = snapshot();
  ApiResponse r;
  r.content_type = "text/tab-separated-values; charset=utf-8";
  r.text = CandidatesToTsv(UniqueTrueVa(snap->candidates->all(), snap->labels, snap->blacklist));
  return r;
}

// ---------------------------------------------------------------------------
// HTTP

namespace {

std::map<std::string, std::string> QueryParams(const httplib::Request &req) {
  std::map<std::string, std::string> out;
  for (const auto &[k, v] : req.params) out[k] = v;
  return out;
}

void Send(const ApiResponse &api, httplib::Response &res) {
  res.status = api.status;
  if (api.content_type == "application/json") {
    res.set_content(api.body.dump(-1, ' ', false, json::error_handler_t::replace),
                    "application/json; charset=utf-8");
  } else {
    res.set_content(api.text, api.content_type.c_str());
  }
}

}  // namespace

Service::Service(CurationSession &session, const std::string &ui_dir)
    : session_(session), server_(std::make_unique<httplib::Server>()) {
  auto &srv = *server_;
  srv.Get("/api/v1/candidates", [this](const httplib::Request &req, httplib::Response &res) {
    Send(session_.ListCandidates(QueryParams(req)), res);
  });
  srv.Post("/api/v1/labels", [this](const httplib::Request &req, httplib::Response &res) {
    Send(session_.SubmitLabel(req.body), res);
  });
  srv.Post("/api/v1/blacklist", [this](const httplib::Request &req, httplib::Response &res) {
    Send(session_.AddBlacklist(req.body), res);
  });
  srv.Get("/api/v1/stats", [this](const httplib::Request &req, httplib::Response &res) {
    Send(session_.Stats(QueryParams(req)), res);
  });
  srv.Get("/api/v1/export", [this](const httplib::Request &, httplib::Response &res) {
    Send(session_.Export(), res);
  });
  srv.set_exception_handler([](const httplib::Request &, httplib::Response &res,
                               std::exception_ptr ep) {
    std::string message = "internal error";
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception &e) {
      message = e.what();
    } catch (...) {
    }
    Send(Error(500, message), res);
  });
  if (!ui_dir.empty()) srv.set_mount_point("/", ui_dir);
}

Service::~Service() = default;

int Service::Bind(const std::string &host, int port) {
  if (port == 0) return server_->bind_to_any_port(host);
  return server_->bind_to_port(host, port) ? port : -1;
}

bool Service::Run() { return server_->listen_after_bind(); }

void Service::Stop() { server_->stop(); }

}  // namespace vaminer

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

#ifndef VAMINER_SERVICE_H_
#define VAMINER_SERVICE_H_

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>

#include "json.hpp"
#include "vaminer/curation.h"
#include "vaminer/report.h"

namespace httplib {
class Server;
}

namespace vaminer {

struct ServiceConfig {
  std::string candidates_path;
  std::string labels_path;
  std::string blacklist_path;
  std::string corpus_summary_path;  // optional
  std::string ui_dir;               // optional, served at "/"
  std::string countries_path;       // optional, default list otherwise
};

// One consistent view of the curation state. Immutable once published.
struct SessionSnapshot {
  std::shared_ptr<const CandidateSet> candidates;
  LabelState labels;
  Blacklist blacklist;
};

// A JSON (or TSV) response with an HTTP status code.
struct ApiResponse {
  int status = 200;
  nlohmann::json body;
  std::string text;  // used instead of `body` when non-empty content type is text
  std::string content_type = "application/json";
};

// The curation session behind the HTTP API. Mutations are serialized through
// one writer lock and flushed to disk before they return; readers work on
// the snapshot current when they started.
class CurationSession {
 public:
  explicit CurationSession(const ServiceConfig &config);
  ~CurationSession();

  std::shared_ptr<const SessionSnapshot> snapshot() const;
  const ExtractionSummary &summary() const { return summary_; }

  // GET /api/v1/candidates. `query` holds the URL parameters.
  ApiResponse ListCandidates(const std::map<std::string, std::string> &query) const;
  // POST /api/v1/labels
  ApiResponse SubmitLabel(const std::string &body);
  // POST /api/v1/blacklist
  ApiResponse AddBlacklist(const std::string &body);
  // GET /api/v1/stats
  ApiResponse Stats(const std::map<std::string, std::string> &query) const;
  // GET /api/v1/export
  ApiResponse Export() const;

  nlohmann::json StatsJson(size_t top) const;

  // Writes a label snapshot so the next start replays less.
  void Checkpoint();

 private:
  void Publish(std::shared_ptr<const SessionSnapshot> next);

  ServiceConfig config_;
  ExtractionSummary summary_;
  std::set<std::string, std::less<>> countries_;

  std::mutex writer_mu_;  // serializes mutations
  LabelStore store_;

  mutable std::mutex snapshot_mu_;
  std::shared_ptr<const SessionSnapshot> snapshot_;
};

// HTTP front end for a CurationSession.
class Service {
 public:
  Service(CurationSession &session, const std::string &ui_dir = "");
  ~Service();

  // Binds to `port` (0 picks a free port) and returns the bound port, or -1.
  int Bind(const std::string &host, int port);
  // Serves until Stop(); call after Bind.
  bool Run();
  void Stop();

 private:
  CurationSession &session_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace vaminer

#endif  // VAMINER_SERVICE_H_

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

#ifndef VAMINER_ERROR_H_
#define VAMINER_ERROR_H_

#include <stdexcept>
#include <string>

namespace vaminer {

// Bad invocation: missing input files, invalid flag values.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input data that cannot be used: unreadable streams, index version
// mismatch, corrupt logs.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A curation request names a candidate the session does not know.
class UnknownCandidateError : public std::runtime_error {
 public:
  explicit UnknownCandidateError(const std::string &id)
      : std::runtime_error("unknown candidate_id: " + id), id_(id) {}
  const std::string &id() const { return id_; }

 private:
  std::string id_;
};

}  // namespace vaminer

#endif  // VAMINER_ERROR_H_

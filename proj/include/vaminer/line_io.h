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

#ifndef VAMINER_LINE_IO_H_
#define VAMINER_LINE_IO_H_

#include <cstdint>
#include <string>

namespace vaminer {

// Reads a text file line by line. Files ending in ".gz" are decompressed
// on the fly. Trailing "\n" and "\r\n" are stripped.
class LineReader {
 public:
  explicit LineReader(const std::string &path);
  ~LineReader();

  LineReader(const LineReader &) = delete;
  LineReader &operator=(const LineReader &) = delete;

  // Returns false at end of input. Throws DataError on read failure.
  bool Next(std::string *line);

  // 1-based number of the last line returned.
  uint64_t line_number() const { return line_number_; }
  const std::string &path() const { return path_; }

 private:
  std::string path_;
  void *gz_ = nullptr;
  uint64_t line_number_ = 0;
};

// Appends `line` plus a newline to `path` and flushes it to stable storage
// before returning.
void AppendDurable(const std::string &path, const std::string &line);

// Writes `content` to `path` atomically (temp file + rename).
void WriteFileAtomic(const std::string &path, const std::string &content);

std::string ReadFile(const std::string &path);

bool FileExists(const std::string &path);

}  // namespace vaminer

#endif  // VAMINER_LINE_IO_H_

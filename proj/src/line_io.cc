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

#include "vaminer/line_io.h"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>
#include <zlib.h>

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "vaminer/error.h"

namespace vaminer {

namespace {

std::string ErrnoMessage() { return std::strerror(errno); }

void WriteAll(int fd, const char *data, size_t size, const std::string &path) {
  while (size > 0) {
    ssize_t n = ::write(fd, data, size);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw DataError("write failed for " + path + ": " + ErrnoMessage());
    }
    data += n;
    size -= static_cast<size_t>(n);
  }
}

}  // namespace

LineReader::LineReader(const std::string &path) : path_(path) {
  // gzopen reads uncompressed files transparently as well.
  gzFile f = gzopen(path.c_str(), "rb");
  if (f == nullptr) {
    throw DataError("cannot open " + path + ": " + ErrnoMessage());
  }
  gzbuffer(f, 1 << 17);
  gz_ = f;
}

LineReader::~LineReader() {
  if (gz_ != nullptr) gzclose(static_cast<gzFile>(gz_));
}

bool LineReader::Next(std::string *line) {
  auto *f = static_cast<gzFile>(gz_);
  line->clear();
  char buf[8192];
  bool got_any = false;
  for (;;) {
    char *r = gzgets(f, buf, sizeof(buf));
    if (r == nullptr) {
      int err = 0;
      const char *msg = gzerror(f, &err);
      if (err != Z_OK && err != Z_BUF_ERROR) {
        throw DataError(path_ + ":" + std::to_string(line_number_ + 1) +
                        ": read error: " + msg);
      }
      break;
    }
    got_any = true;
    size_t len = std::strlen(buf);
    line->append(buf, len);
    if (len > 0 && buf[len - 1] == '\n') break;
  }
  if (!got_any) return false;
  if (!line->empty() && line->back() == '\n') line->pop_back();
  if (!line->empty() && line->back() == '\r') line->pop_back();
  ++line_number_;
  return true;
}

void AppendDurable(const std::string &path, const std::string &line) {
  int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  if (fd < 0) throw DataError("cannot open " + path + ": " + ErrnoMessage());
  std::string data = line;
  data.push_back('\n');
  try {
    WriteAll(fd, data.data(), data.size(), path);
  } catch (...) {
    ::close(fd);
    throw;
  }
  if (::fsync(fd) != 0) {
    int saved = errno;
    ::close(fd);
    throw DataError("fsync failed for " + path + ": " + std::strerror(saved));
  }
  ::close(fd);
}

void WriteFileAtomic(const std::string &path, const std::string &content) {
  std::string tmp = path + ".tmp";
  int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
  if (fd < 0) throw DataError("cannot open " + tmp + ": " + ErrnoMessage());
  try {
    WriteAll(fd, content.data(), content.size(), tmp);
  } catch (...) {
    ::close(fd);
    throw;
  }
  ::fsync(fd);
  ::close(fd);
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw DataError("rename to " + path + " failed: " + ErrnoMessage());
  }
}

std::string ReadFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool FileExists(const std::string &path) {
  struct stat st;
  return ::stat(path.c_str(), &st) == 0;
}

}  // namespace vaminer

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

#include "vaminer/corpus.h"

#include <cctype>

#include "vaminer/error.h"
#include "vaminer/line_io.h"

namespace vaminer {

using json = nlohmann::json;

namespace {

bool AllDigits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

int ToInt(std::string_view s) {
  int v = 0;
  for (char c : s) v = v * 10 + (c - '0');
  return v;
}

std::string StringField(const json &j, const char *name) {
  auto it = j.find(name);
  if (it == j.end() || !it->is_string()) return {};
  return it->get<std::string>();
}

}  // namespace

std::optional<int> ParseYear(std::string_view date) {
  if (date.size() < 4 || !AllDigits(date.substr(0, 4))) return std::nullopt;
  int year = ToInt(date.substr(0, 4));
  std::string_view rest = date.substr(4);
  std::string_view month, day;
  if (rest.empty()) return year;
  if (rest[0] == '-') {
    month = rest.substr(1, 2);
    rest = rest.size() > 3 ? rest.substr(3) : std::string_view();
    if (!rest.empty()) {
      if (rest[0] != '-') return std::nullopt;
      day = rest.substr(1, 2);
      rest = rest.size() > 3 ? rest.substr(3) : std::string_view();
    }
  } else {
    month = rest.substr(0, 2);
    day = rest.size() >= 4 ? rest.substr(2, 2) : std::string_view();
    rest = rest.size() > 4 ? rest.substr(4) : std::string_view();
    if (day.empty()) return std::nullopt;
  }
  if (month.size() != 2 || !AllDigits(month)) return std::nullopt;
  int m = ToInt(month);
  if (m < 1 || m > 12) return std::nullopt;
  if (!day.empty()) {
    if (day.size() != 2 || !AllDigits(day)) return std::nullopt;
    int d = ToInt(day);
    if (d < 1 || d > 31) return std::nullopt;
  }
  if (!rest.empty() && rest[0] != 'T' && rest[0] != ' ') return std::nullopt;
  return year;
}

bool ParseDocumentLine(std::string_view line, Document *doc) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return false;
  auto id = j.find("doc_id");
  if (id == j.end() || !id->is_string() || id->get_ref<const std::string &>().empty()) {
    return false;
  }
  doc->doc_id = id->get<std::string>();
  doc->date = StringField(j, "date");
  doc->year = ParseYear(doc->date);
  doc->section = StringField(j, "section");
  doc->author = StringField(j, "author");
  doc->headline = StringField(j, "headline");
  doc->body = StringField(j, "body");
  return true;
}

std::string DocumentToJsonLine(const Document &doc) {
  json j = {{"doc_id", doc.doc_id}, {"date", doc.date},       {"section", doc.section},
            {"author", doc.author}, {"headline", doc.headline}, {"body", doc.body}};
  return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

CorpusReader::CorpusReader(const std::string &path, std::string_view format) {
  if (format != "jsonl") {
    throw ConfigError("unsupported corpus format '" + std::string(format) +
                      "' (supported: jsonl)");
  }
  reader_ = std::make_unique<LineReader>(path);
}

CorpusReader::~CorpusReader() = default;

bool CorpusReader::Next(Document *doc) {
  while (reader_->Next(&line_)) {
    bool blank = true;
    for (char c : line_) {
      if (!std::isspace(static_cast<unsigned char>(c))) {
        blank = false;
        break;
      }
    }
    if (blank) continue;
    if (!ParseDocumentLine(line_, doc)) {
      ++skipped_malformed_;
      continue;
    }
    if (!seen_ids_.insert(doc->doc_id).second) {
      ++skipped_duplicate_;
      continue;
    }
    return true;
  }
  return false;
}

void CorpusSummary::Add(const Document &doc) {
  ++n_articles;
  ++sections[doc.section];
  ++authors[doc.author];
  if (doc.year) {
    ++years[*doc.year];
  } else {
    ++unknown_year;
  }
}

void CorpusSummary::Merge(const CorpusSummary &other) {
  n_articles += other.n_articles;
  unknown_year += other.unknown_year;
  for (const auto &[k, v] : other.sections) sections[k] += v;
  for (const auto &[k, v] : other.authors) authors[k] += v;
  for (const auto &[k, v] : other.years) years[k] += v;
}

json CorpusSummary::ToJson() const {
  json years_json = json::object();
  for (const auto &[year, count] : years) years_json[std::to_string(year)] = count;
  return {{"n_articles", n_articles},
          {"unknown_year", unknown_year},
          {"sections", sections},
          {"authors", authors},
          {"years", years_json}};
}

CorpusSummary CorpusSummary::FromJson(const json &j) {
  CorpusSummary s;
  try {
    s.n_articles = j.at("n_articles").get<uint64_t>();
    s.unknown_year = j.value("unknown_year", uint64_t{0});
    if (j.contains("sections")) s.sections = j.at("sections").get<std::map<std::string, uint64_t>>();
    if (j.contains("authors")) s.authors = j.at("authors").get<std::map<std::string, uint64_t>>();
    if (j.contains("years")) {
      for (const auto &[k, v] : j.at("years").items()) {
        auto year = ParseYear(k);
        if (!year || k.size() != 4) throw DataError("bad year key '" + k + "' in corpus summary");
        s.years[*year] = v.get<uint64_t>();
      }
    }
  } catch (const json::exception &e) {
    throw DataError(std::string("malformed corpus summary: ") + e.what());
  }
  return s;
}

}  // namespace vaminer

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

#include "vaminer/gazetteer.h"

#include <algorithm>
#include <cstring>
#include <fstream>

#include "json.hpp"
#include "vaminer/error.h"
#include "vaminer/line_io.h"
#include "vaminer/text.h"

namespace vaminer {

using json = nlohmann::json;

namespace {

constexpr char kIndexMagic[8] = {'V', 'A', 'M', 'I', 'N', 'I', 'D', 'X'};

std::string_view StripDumpArtifacts(std::string_view line) {
  line = text::Trim(line);
  if (!line.empty() && line.back() == ',') line.remove_suffix(1);
  return text::Trim(line);
}

// True if a P31 statement points at `class_id`. Accepts both the "id" form
// and the older "numeric-id" form of entity values.
bool StatementHasValue(const json &statement, std::string_view class_id) {
  auto snak = statement.find("mainsnak");
  if (snak == statement.end() || !snak->is_object()) return false;
  auto dv = snak->find("datavalue");
  if (dv == snak->end() || !dv->is_object()) return false;
  auto value = dv->find("value");
  if (value == dv->end() || !value->is_object()) return false;
  auto id = value->find("id");
  if (id != value->end() && id->is_string()) {
    return id->get_ref<const std::string &>() == class_id;
  }
  auto numeric = value->find("numeric-id");
  if (numeric != value->end() && numeric->is_number_integer() &&
      class_id.size() > 1 && class_id[0] == 'Q') {
    return "Q" + std::to_string(numeric->get<int64_t>()) == class_id;
  }
  return false;
}

class BinaryWriter {
 public:
  explicit BinaryWriter(const std::string &path) : out_(path, std::ios::binary) {
    if (!out_) throw DataError("cannot write " + path);
  }
  void U32(uint32_t v) { out_.write(reinterpret_cast<const char *>(&v), 4); }
  void U64(uint64_t v) { out_.write(reinterpret_cast<const char *>(&v), 8); }
  void Str(std::string_view s) {
    U32(static_cast<uint32_t>(s.size()));
    out_.write(s.data(), static_cast<std::streamsize>(s.size()));
  }
  void Raw(const char *data, size_t n) { out_.write(data, static_cast<std::streamsize>(n)); }
  void Close(const std::string &path) {
    out_.close();
    if (!out_) throw DataError("write failed for " + path);
  }

 private:
  std::ofstream out_;
};

class BinaryReader {
 public:
  BinaryReader(std::string data, std::string path)
      : data_(std::move(data)), path_(std::move(path)) {}
  void Need(size_t n) {
    if (data_.size() - pos_ < n) throw DataError("truncated index file " + path_);
  }
  uint32_t U32() {
    Need(4);
    uint32_t v;
    std::memcpy(&v, data_.data() + pos_, 4);
    pos_ += 4;
    return v;
  }
  uint64_t U64() {
    Need(8);
    uint64_t v;
    std::memcpy(&v, data_.data() + pos_, 8);
    pos_ += 8;
    return v;
  }
  std::string Str() {
    uint32_t n = U32();
    Need(n);
    std::string s = data_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  std::string_view Raw(size_t n) {
    Need(n);
    std::string_view v(data_.data() + pos_, n);
    pos_ += n;
    return v;
  }
  bool AtEnd() const { return pos_ == data_.size(); }

 private:
  std::string data_;
  std::string path_;
  size_t pos_ = 0;
};

}  // namespace

std::string EntityToJsonLine(const EntityRecord &record) {
  json j = {{"id", record.id}, {"label", record.label}, {"aliases", record.aliases}};
  return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

bool ParseEntityLine(std::string_view line, EntityRecord *record) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return false;
  auto id = j.find("id");
  auto label = j.find("label");
  if (id == j.end() || !id->is_string() || label == j.end() || !label->is_string()) {
    return false;
  }
  record->id = id->get<std::string>();
  record->label = label->get<std::string>();
  record->aliases.clear();
  if (record->id.empty() || record->label.empty()) return false;
  auto aliases = j.find("aliases");
  if (aliases != j.end()) {
    if (!aliases->is_array()) return false;
    for (const auto &a : *aliases) {
      if (!a.is_string()) return false;
      if (!a.get_ref<const std::string &>().empty()) {
        record->aliases.push_back(a.get<std::string>());
      }
    }
  }
  return true;
}

DumpLineResult FilterDumpLine(std::string_view raw, std::string_view class_id,
                              EntityRecord *record) {
  std::string_view line = StripDumpArtifacts(raw);
  if (line.empty() || line == "[" || line == "]") return DumpLineResult::kBlank;

  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return DumpLineResult::kMalformed;
  auto id = j.find("id");
  if (id == j.end() || !id->is_string() || id->get_ref<const std::string &>().empty()) {
    return DumpLineResult::kMalformed;
  }

  bool is_instance = false;
  auto claims = j.find("claims");
  if (claims != j.end() && claims->is_object()) {
    auto p31 = claims->find("P31");
    if (p31 != claims->end() && p31->is_array()) {
      for (const auto &statement : *p31) {
        if (statement.is_object() && StatementHasValue(statement, class_id)) {
          is_instance = true;
          break;
        }
      }
    }
  }
  if (!is_instance) return DumpLineResult::kFiltered;

  std::string label;
  auto labels = j.find("labels");
  if (labels != j.end() && labels->is_object()) {
    auto en = labels->find("en");
    if (en != labels->end() && en->is_object()) {
      auto value = en->find("value");
      if (value != en->end() && value->is_string()) label = value->get<std::string>();
    }
  }
  if (label.empty()) return DumpLineResult::kMissingLabel;

  record->id = id->get<std::string>();
  record->label = std::move(label);
  record->aliases.clear();
  auto aliases = j.find("aliases");
  if (aliases != j.end() && aliases->is_object()) {
    auto en = aliases->find("en");
    if (en != aliases->end() && en->is_array()) {
      for (const auto &a : *en) {
        if (!a.is_object()) continue;
        auto value = a.find("value");
        if (value != a.end() && value->is_string() &&
            !value->get_ref<const std::string &>().empty()) {
          record->aliases.push_back(value->get<std::string>());
        }
      }
    }
  }
  return DumpLineResult::kEmitted;
}

FilterStats FilterDump(LineReader &dump, std::string_view class_id,
                       const std::function<void(EntityRecord &&)> &sink) {
  FilterStats stats;
  std::string line;
  EntityRecord record;
  while (dump.Next(&line)) {
    ++stats.lines;
    switch (FilterDumpLine(line, class_id, &record)) {
      case DumpLineResult::kEmitted:
        ++stats.entities;
        ++stats.emitted;
        sink(std::move(record));
        record = EntityRecord();
        break;
      case DumpLineResult::kFiltered:
        ++stats.entities;
        break;
      case DumpLineResult::kMissingLabel:
        ++stats.entities;
        ++stats.missing_label;
        break;
      case DumpLineResult::kMalformed:
        ++stats.skipped_malformed;
        break;
      case DumpLineResult::kBlank:
        break;
    }
  }
  return stats;
}

// ---------------------------------------------------------------------------
// Blacklist

Blacklist::Blacklist()
    : surfaces_(std::make_shared<const std::set<std::string, std::less<>>>()) {}

Blacklist Blacklist::Load(const std::string &path) {
  std::vector<std::string> surfaces;
  if (FileExists(path)) {
    LineReader reader(path);
    std::string line;
    while (reader.Next(&line)) {
      std::string_view trimmed = text::Trim(line);
      if (trimmed.empty() || trimmed.front() == '#') continue;
      surfaces.emplace_back(trimmed);
    }
  }
  return FromSurfaces(surfaces);
}

Blacklist Blacklist::FromSurfaces(const std::vector<std::string> &surfaces) {
  auto set = std::make_shared<std::set<std::string, std::less<>>>();
  for (const auto &s : surfaces) {
    std::string normalized = text::NormalizeSurface(s);
    if (!normalized.empty()) set->insert(std::move(normalized));
  }
  Blacklist b;
  b.surfaces_ = std::move(set);
  return b;
}

bool Blacklist::Contains(std::string_view surface) const {
  return surfaces_->find(surface) != surfaces_->end();
}

Blacklist Blacklist::With(std::string_view surface) const {
  std::string normalized = text::NormalizeSurface(surface);
  if (normalized.empty() || Contains(normalized)) return *this;
  auto set = std::make_shared<std::set<std::string, std::less<>>>(*surfaces_);
  set->insert(std::move(normalized));
  Blacklist b;
  b.surfaces_ = std::move(set);
  b.version_ = version_ + 1;
  return b;
}

// ---------------------------------------------------------------------------
// NameIndex

void NameIndex::Builder::Add(const EntityRecord &record) {
  uint32_t ordinal;
  auto it = by_id_.find(record.id);
  if (it == by_id_.end()) {
    ordinal = static_cast<uint32_t>(entities_.size());
    entities_.push_back({record.id, record.label});
    by_id_.emplace(record.id, ordinal);
  } else {
    ordinal = it->second;
  }
  auto insert = [&](std::string_view name) {
    std::string surface = text::NormalizeSurface(name);
    if (surface.empty()) return;
    auto &ids = names_[std::move(surface)];
    if (ids.empty() || ids.back() != ordinal) {
      if (std::find(ids.begin(), ids.end(), ordinal) == ids.end()) ids.push_back(ordinal);
    }
  };
  insert(record.label);
  for (const auto &alias : record.aliases) insert(alias);
}

NameIndex NameIndex::Builder::Build() && {
  NameIndex index;
  for (auto &[surface, ids] : names_) std::sort(ids.begin(), ids.end());
  index.entities_ = std::move(entities_);
  index.names_ = std::move(names_);
  return index;
}

NameIndex NameIndex::Build(const std::vector<EntityRecord> &records) {
  Builder builder;
  for (const auto &r : records) builder.Add(r);
  return std::move(builder).Build();
}

const std::vector<uint32_t> *NameIndex::Find(std::string_view normalized) const {
  auto it = names_.find(normalized);
  return it == names_.end() ? nullptr : &it->second;
}

std::vector<std::string> NameIndex::Lookup(std::string_view surface,
                                           const Blacklist &blacklist) const {
  std::vector<std::string> ids;
  std::string normalized = text::NormalizeSurface(surface);
  if (blacklist.Contains(normalized)) return ids;
  const auto *ordinals = Find(normalized);
  if (ordinals == nullptr) return ids;
  for (uint32_t o : *ordinals) ids.push_back(entities_[o].id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

void NameIndex::Save(const std::string &path) const {
  BinaryWriter w(path);
  w.Raw(kIndexMagic, sizeof(kIndexMagic));
  w.U32(kFormatVersion);
  w.U64(entities_.size());
  for (const auto &e : entities_) {
    w.Str(e.id);
    w.Str(e.label);
  }
  std::vector<const std::pair<const std::string, std::vector<uint32_t>> *> sorted;
  sorted.reserve(names_.size());
  for (const auto &entry : names_) sorted.push_back(&entry);
  std::sort(sorted.begin(), sorted.end(),
            [](const auto *a, const auto *b) { return a->first < b->first; });
  w.U64(sorted.size());
  for (const auto *entry : sorted) {
    w.Str(entry->first);
    w.U32(static_cast<uint32_t>(entry->second.size()));
    for (uint32_t o : entry->second) w.U32(o);
  }
  w.Close(path);
}

NameIndex NameIndex::Load(const std::string &path) {
  BinaryReader r(ReadFile(path), path);
  if (r.Raw(sizeof(kIndexMagic)) != std::string_view(kIndexMagic, sizeof(kIndexMagic))) {
    throw DataError(path + " is not a name index file");
  }
  uint32_t version = r.U32();
  if (version != kFormatVersion) {
    throw DataError(path + " has index format version " + std::to_string(version) +
                    ", this build reads version " + std::to_string(kFormatVersion) +
                    "; rebuild it with `vaminer gazetteer build`");
  }
  NameIndex index;
  uint64_t n_entities = r.U64();
  index.entities_.reserve(n_entities);
  for (uint64_t i = 0; i < n_entities; ++i) {
    Entity e;
    e.id = r.Str();
    e.label = r.Str();
    index.entities_.push_back(std::move(e));
  }
  uint64_t n_names = r.U64();
  index.names_.reserve(n_names);
  for (uint64_t i = 0; i < n_names; ++i) {
    std::string surface = r.Str();
    uint32_t count = r.U32();
    std::vector<uint32_t> ids(count);
    for (auto &o : ids) {
      o = r.U32();
      if (o >= n_entities) throw DataError("corrupt index file " + path);
    }
    index.names_.emplace(std::move(surface), std::move(ids));
  }
  if (!r.AtEnd()) throw DataError("trailing bytes in index file " + path);
  return index;
}

}  // namespace vaminer

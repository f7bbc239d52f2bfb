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

#ifndef VAMINER_GAZETTEER_H_
#define VAMINER_GAZETTEER_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace vaminer {

class LineReader;

// A person entity from the knowledge base.
struct EntityRecord {
  std::string id;       // e.g. "Q41421"
  std::string label;    // canonical English name
  std::vector<std::string> aliases;

  bool operator==(const EntityRecord &) const = default;
};

// Serialization of the entity list interchange format:
// {"id": str, "label": str, "aliases": [str, ...]} on one line.
std::string EntityToJsonLine(const EntityRecord &record);

// Parses one entity list line. Returns false if the line is malformed or
// violates the record invariants (empty id or label). Empty aliases are
// dropped.
bool ParseEntityLine(std::string_view line, EntityRecord *record);

// Counters from a dump filtering pass.
struct FilterStats {
  uint64_t lines = 0;
  uint64_t entities = 0;       // well-formed entity documents seen
  uint64_t emitted = 0;
  uint64_t skipped_malformed = 0;
  uint64_t missing_label = 0;  // instances of the class without English label
};

// Streams a line-delimited knowledge-base dump and emits every entity that
// has an instanceOf (P31) claim with value `class_id` and an English label.
// Array brackets and trailing commas of the full-dump format are tolerated.
FilterStats FilterDump(LineReader &dump, std::string_view class_id,
                       const std::function<void(EntityRecord &&)> &sink);

// Same filter applied to a single dump line. Returns true and fills
// `record` if the line yields an entity.
enum class DumpLineResult { kEmitted, kFiltered, kMissingLabel, kMalformed, kBlank };
DumpLineResult FilterDumpLine(std::string_view line, std::string_view class_id,
                              EntityRecord *record);

// A versioned, immutable set of blacklisted surfaces. Copies share storage;
// adding a surface produces a new version and leaves existing copies intact.
class Blacklist {
 public:
  Blacklist();

  // Loads one surface per line; blank lines and lines starting with '#' are
  // ignored. Surfaces are normalized. A missing file yields an empty list.
  static Blacklist Load(const std::string &path);
  static Blacklist FromSurfaces(const std::vector<std::string> &surfaces);

  // `surface` must already be normalized.
  bool Contains(std::string_view surface) const;

  // Returns a new version containing `surface` (normalized). If already
  // present, returns *this unchanged.
  Blacklist With(std::string_view surface) const;

  uint64_t version() const { return version_; }
  size_t size() const { return surfaces_->size(); }
  const std::set<std::string, std::less<>> &surfaces() const { return *surfaces_; }

 private:
  std::shared_ptr<const std::set<std::string, std::less<>>> surfaces_;
  uint64_t version_ = 0;
};

struct StringHash {
  using is_transparent = void;
  size_t operator()(std::string_view s) const {
    return std::hash<std::string_view>{}(s);
  }
};

// The alias -> entity gazetteer. Immutable once built; safe to share
// across reader threads.
class NameIndex {
 public:
  static constexpr uint32_t kFormatVersion = 1;

  struct Entity {
    std::string id;
    std::string label;
  };

  class Builder {
   public:
    // Inserts the label and every alias under their normalized surfaces.
    // A repeated id merges its names into the existing entity.
    void Add(const EntityRecord &record);
    NameIndex Build() &&;

   private:
    std::vector<Entity> entities_;
    std::unordered_map<std::string, uint32_t, StringHash, std::equal_to<>> by_id_;
    std::unordered_map<std::string, std::vector<uint32_t>, StringHash, std::equal_to<>> names_;
  };

  NameIndex() = default;

  static NameIndex Build(const std::vector<EntityRecord> &records);

  // Entity ordinals indexed under the normalized surface, or nullptr.
  // Ignores the blacklist.
  const std::vector<uint32_t> *Find(std::string_view normalized) const;

  // Entity ids (sorted) for `surface`, empty if absent or blacklisted.
  std::vector<std::string> Lookup(std::string_view surface,
                                  const Blacklist &blacklist) const;

  const Entity &entity(uint32_t ordinal) const { return entities_[ordinal]; }
  size_t n_entities() const { return entities_.size(); }
  size_t n_unique_names() const { return names_.size(); }

  // Binary serialization with a magic/version header. Output is
  // byte-identical for identical input. Load throws DataError on a version
  // mismatch or a corrupt file.
  void Save(const std::string &path) const;
  static NameIndex Load(const std::string &path);

 private:
  std::vector<Entity> entities_;
  std::unordered_map<std::string, std::vector<uint32_t>, StringHash, std::equal_to<>> names_;
};

}  // namespace vaminer

#endif  // VAMINER_GAZETTEER_H_

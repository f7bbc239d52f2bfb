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

#include "vaminer/extraction.h"

#include <algorithm>
#include <condition_variable>
#include <deque>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "vaminer/error.h"
#include "vaminer/line_io.h"
#include "vaminer/text.h"

namespace vaminer {

using json = nlohmann::json;

namespace {

bool IsInnerTokenChar(char32_t cp) {
  return text::IsWordChar(cp) || cp == '.' || cp == ',' || cp == '\'' || cp == '-';
}

// Attempts the pattern at `start`, where "the"/"The" has already been seen
// at a word boundary.
std::optional<CandidatePhrase> MatchAt(std::string_view s, size_t start) {
  size_t pos = start + 3;
  if (!text::IsSpaceAt(s, pos)) return std::nullopt;
  pos = text::SkipSpace(s, pos);
  const size_t inner_start = pos;
  for (int tokens = 1; tokens <= kMaxInnerTokens; ++tokens) {
    size_t token_end = pos;
    while (token_end < s.size()) {
      text::CodePoint cp = text::DecodeAt(s, token_end);
      if (!IsInnerTokenChar(cp.value)) break;
      token_end += cp.length;
    }
    if (token_end == pos || !text::IsSpaceAt(s, token_end)) return std::nullopt;
    size_t next = text::SkipSpace(s, token_end);
    if (s.compare(next, 2, "of") == 0 && !text::IsWordCharAt(s, next + 2)) {
      return CandidatePhrase{start, next + 2, inner_start, token_end, tokens};
    }
    pos = next;
  }
  return std::nullopt;
}

bool IsHardBoundary(std::string_view s, size_t pos, char32_t cp) {
  switch (cp) {
    case '.': case ',': case ';': case ':': case '!': case '?':
    case '"': case ')': case ']':
    case 0x201C: case 0x201D: case 0x2018:
      return true;
    case '\'': case 0x2019: {
      size_t len = cp == '\'' ? 1 : 3;
      bool word_before = pos > 0 && text::IsWordChar(text::DecodeBefore(s, pos).value);
      return !(word_before && text::IsWordCharAt(s, pos + len));
    }
    default:
      return false;
  }
}

std::string CleanTsvField(std::string_view field) {
  std::string out(field);
  for (char &c : out) {
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  }
  return out;
}

template <typename T>
T Field(const json &j, const char *name) {
  auto it = j.find(name);
  if (it == j.end()) throw DataError(std::string("candidate record lacks field '") + name + "'");
  return it->get<T>();
}

}  // namespace

std::vector<CandidatePhrase> FindPhrases(std::string_view sentence, ArticleCase article) {
  std::vector<CandidatePhrase> phrases;
  const bool allow_capital = article == ArticleCase::kSentenceInitialToo;
  size_t first_word = std::string_view::npos;
  if (allow_capital) {
    for (size_t p = 0; p < sentence.size();) {
      text::CodePoint cp = text::DecodeAt(sentence, p);
      if (text::IsWordChar(cp.value)) {
        first_word = p;
        break;
      }
      p += cp.length;
    }
  }

  size_t pos = 0;
  while (pos + 3 <= sentence.size()) {
    const char c = sentence[pos];
    bool article_here = false;
    if (c == 't' || (allow_capital && c == 'T' && pos == first_word)) {
      article_here = sentence[pos + 1] == 'h' && sentence[pos + 2] == 'e' &&
                     (pos == 0 || !text::IsWordChar(text::DecodeBefore(sentence, pos).value));
    }
    if (article_here) {
      if (auto phrase = MatchAt(sentence, pos)) {
        phrases.push_back(*phrase);
        pos = phrase->end;
        continue;
      }
    }
    ++pos;
  }
  return phrases;
}

ModifierSpan FindModifier(std::string_view s, const CandidatePhrase &phrase, int max_tokens) {
  const size_t begin = text::SkipSpace(s, phrase.end);
  ModifierSpan span{begin, begin};
  int tokens = 0;
  size_t pos = begin;
  while (pos < s.size() && tokens < max_tokens) {
    const size_t token_begin = pos;
    bool stop = false;
    while (pos < s.size()) {
      text::CodePoint cp = text::DecodeAt(s, pos);
      if (text::IsSpace(cp.value)) break;
      if (IsHardBoundary(s, pos, cp.value)) {
        stop = true;
        break;
      }
      pos += cp.length;
    }
    if (pos > token_begin) {
      ++tokens;
      span.end = pos;
    }
    if (stop) break;
    pos = text::SkipSpace(s, pos);
  }
  return span;
}

std::string ExtractModifier(std::string_view sentence, const CandidatePhrase &phrase,
                            int max_tokens) {
  return std::string(FindModifier(sentence, phrase, max_tokens).text(sentence));
}

std::string MakeCandidateId(std::string_view doc_id, size_t sentence_index,
                            size_t phrase_start) {
  std::string key(doc_id);
  key.push_back('\x1f');
  key += std::to_string(sentence_index);
  key.push_back('\x1f');
  key += std::to_string(phrase_start);
  return text::Hex64(text::Fingerprint(key));
}

// ---------------------------------------------------------------------------
// Candidate

std::string Candidate::SourceLabel() const {
  std::set<std::string> labels(entity_labels.begin(), entity_labels.end());
  std::string out;
  for (const auto &l : labels) {
    if (!out.empty()) out += " / ";
    out += l;
  }
  return out.empty() ? source_surface : out;
}

json Candidate::ToJson() const {
  return {{"candidate_id", candidate_id},
          {"doc_id", doc_id},
          {"date", date},
          {"year", year ? json(*year) : json(nullptr)},
          {"section", section},
          {"author", author},
          {"sentence_index", sentence_index},
          {"sentence", sentence},
          {"phrase_start", phrase_start},
          {"phrase_end", phrase_end},
          {"source_start", source_start},
          {"source_end", source_end},
          {"source_surface", source_surface},
          {"entity_ids", entity_ids},
          {"entity_labels", entity_labels},
          {"modifier", modifier},
          {"modifier_start", modifier_start},
          {"modifier_end", modifier_end}};
}

Candidate Candidate::FromJson(const json &j) {
  Candidate c;
  try {
    c.candidate_id = Field<std::string>(j, "candidate_id");
    c.doc_id = Field<std::string>(j, "doc_id");
    c.date = j.value("date", std::string());
    auto year = j.find("year");
    if (year != j.end() && year->is_number_integer()) c.year = year->get<int>();
    c.section = j.value("section", std::string());
    c.author = j.value("author", std::string());
    c.sentence_index = j.value("sentence_index", size_t{0});
    c.sentence = Field<std::string>(j, "sentence");
    c.phrase_start = j.value("phrase_start", size_t{0});
    c.phrase_end = j.value("phrase_end", size_t{0});
    c.source_start = j.value("source_start", size_t{0});
    c.source_end = j.value("source_end", size_t{0});
    c.source_surface = Field<std::string>(j, "source_surface");
    c.entity_ids = Field<std::vector<std::string>>(j, "entity_ids");
    c.entity_labels = j.value("entity_labels", std::vector<std::string>());
    c.modifier = j.value("modifier", std::string());
    c.modifier_start = j.value("modifier_start", size_t{0});
    c.modifier_end = j.value("modifier_end", size_t{0});
  } catch (const json::exception &e) {
    throw DataError(std::string("malformed candidate record: ") + e.what());
  }
  if (c.entity_ids.empty()) throw DataError("candidate " + c.candidate_id + " has no entity ids");
  return c;
}

// ---------------------------------------------------------------------------
// RunStats

FunnelCounts &FunnelCounts::operator+=(const FunnelCounts &o) {
  n_articles += o.n_articles;
  n_sentences += o.n_sentences;
  n_phrase_matches += o.n_phrase_matches;
  n_entity_matched += o.n_entity_matched;
  n_after_blacklist += o.n_after_blacklist;
  return *this;
}

json FunnelCounts::ToJson() const {
  return {{"n_articles", n_articles},
          {"n_sentences", n_sentences},
          {"n_phrase_matches", n_phrase_matches},
          {"n_entity_matched", n_entity_matched},
          {"n_after_blacklist", n_after_blacklist}};
}

FunnelCounts FunnelCounts::FromJson(const json &j) {
  FunnelCounts f;
  f.n_articles = j.value("n_articles", uint64_t{0});
  f.n_sentences = j.value("n_sentences", uint64_t{0});
  f.n_phrase_matches = j.value("n_phrase_matches", uint64_t{0});
  f.n_entity_matched = j.value("n_entity_matched", uint64_t{0});
  f.n_after_blacklist = j.value("n_after_blacklist", uint64_t{0});
  return f;
}

void RunStats::Merge(const RunStats &other) {
  total += other.total;
  unknown_year += other.unknown_year;
  for (const auto &[year, counts] : other.per_year) per_year[year] += counts;
}

json RunStats::ToJson() const {
  json years = json::object();
  for (const auto &[year, counts] : per_year) years[std::to_string(year)] = counts.ToJson();
  return {{"total", total.ToJson()}, {"per_year", years}, {"unknown_year", unknown_year.ToJson()}};
}

RunStats RunStats::FromJson(const json &j) {
  RunStats s;
  try {
    s.total = FunnelCounts::FromJson(j.at("total"));
    if (j.contains("unknown_year")) s.unknown_year = FunnelCounts::FromJson(j.at("unknown_year"));
    if (j.contains("per_year")) {
      for (const auto &[k, v] : j.at("per_year").items()) {
        s.per_year[std::stoi(k)] = FunnelCounts::FromJson(v);
      }
    }
  } catch (const std::exception &e) {
    throw DataError(std::string("malformed run stats: ") + e.what());
  }
  return s;
}

// ---------------------------------------------------------------------------
// Matching

CandidateMatcher::CandidateMatcher(const NameIndex &index, Blacklist blacklist,
                                   ExtractOptions options)
    : index_(index), blacklist_(std::move(blacklist)), options_(options) {
  if (options_.max_modifier_tokens < 1) {
    throw ConfigError("max-modifier-tokens must be >= 1");
  }
}

void CandidateMatcher::MatchDocument(const Document &doc, const std::vector<Sentence> &sentences,
                                     std::vector<Candidate> *out, RunStats *stats) const {
  FunnelCounts counts;
  counts.n_articles = 1;
  counts.n_sentences = sentences.size();
  for (const Sentence &sentence : sentences) {
    for (const CandidatePhrase &phrase : FindPhrases(sentence.text, options_.article)) {
      ++counts.n_phrase_matches;
      std::string surface = text::NormalizeSurface(phrase.inner_text(sentence.text));
      const std::vector<uint32_t> *ordinals = index_.Find(surface);
      if (ordinals == nullptr) continue;
      ++counts.n_entity_matched;
      if (blacklist_.Contains(surface)) continue;
      ++counts.n_after_blacklist;

      Candidate c;
      c.candidate_id = MakeCandidateId(doc.doc_id, sentence.index, phrase.start);
      c.doc_id = doc.doc_id;
      c.date = doc.date;
      c.year = doc.year;
      c.section = doc.section;
      c.author = doc.author;
      c.sentence_index = sentence.index;
      c.sentence = sentence.text;
      c.phrase_start = phrase.start;
      c.phrase_end = phrase.end;
      c.source_start = phrase.inner_start;
      c.source_end = phrase.inner_end;
      c.source_surface = std::move(surface);
      std::vector<std::pair<std::string, std::string>> entities;
      for (uint32_t o : *ordinals) entities.emplace_back(index_.entity(o).id, index_.entity(o).label);
      std::sort(entities.begin(), entities.end());
      for (auto &[id, label] : entities) {
        c.entity_ids.push_back(std::move(id));
        c.entity_labels.push_back(std::move(label));
      }
      ModifierSpan modifier = FindModifier(sentence.text, phrase, options_.max_modifier_tokens);
      c.modifier = std::string(modifier.text(sentence.text));
      c.modifier_start = modifier.start;
      c.modifier_end = modifier.end;
      out->push_back(std::move(c));
    }
  }
  stats->total += counts;
  stats->ForYear(doc.year) += counts;
}

void SortCandidates(std::vector<Candidate> *candidates) {
  std::sort(candidates->begin(), candidates->end(), [](const Candidate &a, const Candidate &b) {
    if (a.candidate_id != b.candidate_id) return a.candidate_id < b.candidate_id;
    if (a.doc_id != b.doc_id) return a.doc_id < b.doc_id;
    if (a.sentence_index != b.sentence_index) return a.sentence_index < b.sentence_index;
    return a.phrase_start < b.phrase_start;
  });
}

ExtractionResult RunExtraction(CorpusReader &corpus, const SentenceSplitter &splitter,
                               const CandidateMatcher &matcher, int workers) {
  ExtractionResult result;
  if (workers <= 1) {
    Document doc;
    while (corpus.Next(&doc)) {
      result.corpus.Add(doc);
      matcher.MatchDocument(doc, splitter.Split(doc), &result.candidates, &result.stats);
    }
  } else {
    constexpr size_t kBatch = 256;
    constexpr size_t kMaxQueued = 64;
    std::mutex mu;
    std::condition_variable can_push, can_pop;
    std::deque<std::vector<Document>> queue;
    bool done = false;

    struct WorkerOutput {
      std::vector<Candidate> candidates;
      RunStats stats;
    };
    std::vector<WorkerOutput> outputs(static_cast<size_t>(workers));
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        WorkerOutput &mine = outputs[static_cast<size_t>(w)];
        for (;;) {
          std::vector<Document> batch;
          {
            std::unique_lock<std::mutex> lock(mu);
            can_pop.wait(lock, [&] { return done || !queue.empty(); });
            if (queue.empty()) return;
            batch = std::move(queue.front());
            queue.pop_front();
          }
          can_push.notify_one();
          for (const Document &doc : batch) {
            matcher.MatchDocument(doc, splitter.Split(doc), &mine.candidates, &mine.stats);
          }
        }
      });
    }

    auto push = [&](std::vector<Document> &&batch) {
      std::unique_lock<std::mutex> lock(mu);
      can_push.wait(lock, [&] { return queue.size() < kMaxQueued; });
      queue.push_back(std::move(batch));
      lock.unlock();
      can_pop.notify_one();
    };

    try {
      std::vector<Document> batch;
      Document doc;
      while (corpus.Next(&doc)) {
        result.corpus.Add(doc);
        batch.push_back(std::move(doc));
        doc = Document();
        if (batch.size() == kBatch) {
          push(std::move(batch));
          batch.clear();
        }
      }
      if (!batch.empty()) push(std::move(batch));
    } catch (...) {
      {
        std::lock_guard<std::mutex> lock(mu);
        queue.clear();
        done = true;
      }
      can_pop.notify_all();
      for (auto &t : threads) t.join();
      throw;
    }
    {
      std::lock_guard<std::mutex> lock(mu);
      done = true;
    }
    can_pop.notify_all();
    for (auto &t : threads) t.join();
    for (auto &o : outputs) {
      result.stats.Merge(o.stats);
      std::move(o.candidates.begin(), o.candidates.end(), std::back_inserter(result.candidates));
    }
  }
  result.skipped_documents = corpus.skipped_malformed() + corpus.skipped_duplicate();
  SortCandidates(&result.candidates);
  return result;
}

void WriteCandidates(const std::string &path, const std::vector<Candidate> &candidates) {
  std::string content;
  for (const auto &c : candidates) {
    content += c.ToJson().dump(-1, ' ', false, json::error_handler_t::replace);
    content.push_back('\n');
  }
  WriteFileAtomic(path, content);
}

std::vector<Candidate> ReadCandidates(const std::string &path) {
  std::vector<Candidate> out;
  LineReader reader(path);
  std::string line;
  while (reader.Next(&line)) {
    if (text::Trim(line).empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw DataError(path + ":" + std::to_string(reader.line_number()) +
                      ": malformed candidate line");
    }
    try {
      out.push_back(Candidate::FromJson(j));
    } catch (const DataError &e) {
      throw DataError(path + ":" + std::to_string(reader.line_number()) + ": " + e.what());
    }
  }
  return out;
}

std::string CandidatesToTsv(const std::vector<Candidate> &candidates) {
  std::ostringstream out;
  out << "candidate_id\tyear\tsection\tauthor\tsource_surface\tentity_ids\tmodifier\tsentence\n";
  for (const auto &c : candidates) {
    std::string ids;
    for (const auto &id : c.entity_ids) {
      if (!ids.empty()) ids += ',';
      ids += id;
    }
    out << c.candidate_id << '\t' << (c.year ? std::to_string(*c.year) : std::string()) << '\t'
        << CleanTsvField(c.section) << '\t' << CleanTsvField(c.author) << '\t'
        << CleanTsvField(c.source_surface) << '\t' << ids << '\t' << CleanTsvField(c.modifier)
        << '\t' << CleanTsvField(c.sentence) << '\n';
  }
  return out.str();
}

}  // namespace vaminer

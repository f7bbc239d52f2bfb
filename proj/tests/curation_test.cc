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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "support/test_util.h"
#include "vaminer/error.h"
#include "vaminer/line_io.h"
#include "vaminer/text.h"

namespace vaminer {
namespace {

using testing::TempDir;

Candidate Make(const std::string &doc, size_t sentence_index, size_t phrase_start,
               const std::string &surface, const std::string &id, const std::string &modifier,
               const std::string &sentence = "", const std::string &date = "2001-01-01") {
  Candidate c;
  c.doc_id = doc;
  c.sentence_index = sentence_index;
  c.phrase_start = phrase_start;
  c.candidate_id = MakeCandidateId(doc, sentence_index, phrase_start);
  c.source_surface = surface;
  c.entity_ids = {id};
  c.entity_labels = {surface};
  c.modifier = modifier;
  c.sentence = sentence.empty() ? "the " + surface + " of " + modifier + " in " + doc : sentence;
  c.date = date;
  c.year = ParseYear(date);
  return c;
}

std::vector<Candidate> ThreeCandidates() {
  return {Make("d1", 0, 0, "Picasso", "Q5593", "baseball"),
          Make("d2", 0, 0, "Hall", "Q230636", "Fame"),
          Make("d3", 1, 4, "Hall", "Q230636", "Fame")};
}

TEST(Verdict, Names) {
  EXPECT_EQ(ParseVerdict("true_va"), Verdict::kTrueVa);
  EXPECT_EQ(ParseVerdict("not_va"), Verdict::kNotVa);
  EXPECT_FALSE(ParseVerdict("maybe"));
  EXPECT_EQ(VerdictName(Verdict::kNotVa), "not_va");
}

TEST(LabelStore, LatestWins) {
  CandidateSet known(ThreeCandidates());
  const std::string id = known.all()[0].candidate_id;
  LabelStore store;
  EXPECT_TRUE(store.Set(known, id, Verdict::kTrueVa, "ann", 1));
  EXPECT_TRUE(store.Set(known, id, Verdict::kNotVa, "bob", 2));
  EXPECT_EQ(store.state().VerdictOf(id), Verdict::kNotVa);
  EXPECT_EQ(store.state().Find(id)->annotator, "bob");
  EXPECT_FALSE(store.Set(known, id, Verdict::kNotVa, "bob", 3));  // no change
  EXPECT_EQ(store.log().size(), 2u);
  EXPECT_TRUE(store.Set(known, id, std::nullopt, "bob", 4));  // undo
  EXPECT_FALSE(store.state().VerdictOf(id));
  EXPECT_EQ(store.state().size(), 0u);
}

TEST(LabelStore, UnknownIdIsRejected) {
  CandidateSet known(ThreeCandidates());
  LabelStore store;
  EXPECT_THROW(store.Set(known, "ffffffffffffffff", Verdict::kTrueVa, "ann", 1),
               UnknownCandidateError);
  EXPECT_EQ(store.log().size(), 0u);
}

TEST(LabelStoreProperty, ReplayEqualsNaiveFold) {
  std::vector<Candidate> cands;
  for (int i = 0; i < 30; ++i) cands.push_back(Make("d" + std::to_string(i), 0, 0, "X", "Q1", "m"));
  CandidateSet known(cands);
  std::mt19937_64 rng(5);
  for (int round = 0; round < 20; ++round) {
    TempDir dir;
    LabelStore store = LabelStore::Open(dir.File("labels.jsonl"));
    std::map<std::string, std::optional<Verdict>> naive;
    const int n = static_cast<int>(rng() % 300);
    for (int i = 0; i < n; ++i) {
      const std::string &id = cands[rng() % cands.size()].candidate_id;
      std::optional<Verdict> v;
      switch (rng() % 3) {
        case 0: v = Verdict::kTrueVa; break;
        case 1: v = Verdict::kNotVa; break;
        default: break;
      }
      store.Set(known, id, v, "ann", i);
      naive[id] = v;
    }
    for (const auto &c : cands) {
      auto it = naive.find(c.candidate_id);
      std::optional<Verdict> expected = it == naive.end() ? std::nullopt : it->second;
      ASSERT_EQ(store.state().VerdictOf(c.candidate_id), expected);
    }
    ASSERT_EQ(Replay(store.log()), store.state());
    ASSERT_EQ(LabelStore::Open(dir.File("labels.jsonl")).state(), store.state());
  }
}

TEST(LabelStore, SnapshotAndTornTail) {
  std::vector<Candidate> cands;
  for (int i = 0; i < 3; ++i) cands.push_back(Make("d" + std::to_string(i), 0, 0, "X", "Q1", "m"));
  CandidateSet known(cands);
  TempDir dir;
  const std::string log = dir.File("labels.jsonl");
  LabelState before;
  {
    LabelStore store = LabelStore::Open(log);
    for (size_t i = 0; i < LabelStore::kSnapshotInterval + 5; ++i) {
      store.Set(known, cands[i % 3].candidate_id, i % 2 ? Verdict::kTrueVa : Verdict::kNotVa,
                "ann", static_cast<int64_t>(i));
    }
    before = store.state();
    EXPECT_TRUE(FileExists(store.snapshot_path()));
  }
  // A half-written last line, as left by a crash mid-append.
  {
    std::string content = ReadFile(log);
    testing::WriteString(log, content + "{\"candidate_id\": \"" + cands[0].candidate_id);
  }
  LabelStore reopened = LabelStore::Open(log);
  EXPECT_EQ(reopened.state(), before);
  EXPECT_EQ(reopened.log().size(), LabelStore::kSnapshotInterval + 5);
  EXPECT_EQ(Replay(reopened.log()), before);
}

TEST(LabelStore, CorruptMiddleLineIsAnError) {
  TempDir dir;
  testing::WriteString(dir.File("l.jsonl"),
                       "garbage\n{\"candidate_id\": \"a\", \"verdict\": \"true_va\"}\n");
  EXPECT_THROW(LabelStore::Open(dir.File("l.jsonl")), DataError);
}

TEST(AddToBlacklist, SuppressesMatchingCandidates) {
  std::vector<Candidate> cands = ThreeCandidates();
  cands.push_back(Make("d4", 0, 0, "Hall", "Q230636", "Famers"));
  CandidateSet set(cands);
  Blacklist empty;
  BlacklistUpdate u = AddToBlacklist(empty, set, "Hall");
  EXPECT_TRUE(u.added);
  EXPECT_EQ(u.suppressed.size(), 3u);
  EXPECT_TRUE(std::is_sorted(u.suppressed.begin(), u.suppressed.end()));
  EXPECT_TRUE(u.blacklist.Contains("Hall"));
  EXPECT_FALSE(empty.Contains("Hall"));

  BlacklistUpdate again = AddToBlacklist(u.blacklist, set, " Hall ");
  EXPECT_FALSE(again.added);
  EXPECT_TRUE(again.suppressed.empty());
  EXPECT_EQ(again.blacklist.version(), u.blacklist.version());

  BlacklistUpdate none = AddToBlacklist(u.blacklist, set, "Church");
  EXPECT_TRUE(none.added);
  EXPECT_TRUE(none.suppressed.empty());

  EXPECT_THROW(AddToBlacklist(empty, set, "  "), ConfigError);
}

TEST(Dedup, WithinArticleRepeat) {
  const std::string s = "Maddux is the Picasso of baseball.";
  std::vector<Candidate> cands = {Make("d1", 0, 10, "Picasso", "Q5593", "baseball", s),
                                  Make("d1", 7, 10, "Picasso", "Q5593", "baseball", s),
                                  Make("d1", 3, 0, "Picasso", "Q5593", "chess")};
  auto out = Dedup(cands);
  ASSERT_EQ(out.size(), 2u);
  for (const auto &c : out) EXPECT_NE(c.sentence_index, 7u);
}

TEST(Dedup, RepublicationKeepsEarliestArticle) {
  const std::string s = "Maddux is the Picasso of baseball.";
  std::vector<Candidate> cands = {
      Make("late", 0, 10, "Picasso", "Q5593", "baseball", s, "2003-05-01"),
      Make("early", 2, 10, "Picasso", "Q5593", "baseball", s, "2001-05-01"),
      Make("undated", 0, 10, "Picasso", "Q5593", "baseball", s, ""),
      Make("other", 0, 10, "Picasso", "Q5593", "baseball", "He is the Picasso of baseball.")};
  auto out = Dedup(cands);
  ASSERT_EQ(out.size(), 2u);
  std::set<std::string> docs;
  for (const auto &c : out) docs.insert(c.doc_id);
  EXPECT_EQ(docs, (std::set<std::string>{"early", "other"}));
}

// Pairwise statement of the two rules, used as an oracle.
std::vector<Candidate> BruteForceDedup(const std::vector<Candidate> &cands) {
  auto first_in_doc = [&](const Candidate &c) {
    for (const auto &d : cands) {
      if (d.doc_id == c.doc_id && d.entity_ids == c.entity_ids &&
          text::NormalizeSurface(d.modifier) == text::NormalizeSurface(c.modifier) &&
          std::tie(d.sentence_index, d.phrase_start, d.candidate_id) <
              std::tie(c.sentence_index, c.phrase_start, c.candidate_id)) {
        return false;
      }
    }
    return true;
  };
  auto order = [](const Candidate &c) { return std::make_tuple(c.date.empty(), c.date, c.doc_id); };
  std::vector<Candidate> out;
  for (const auto &c : cands) {
    if (!first_in_doc(c)) continue;
    bool earliest = true;
    for (const auto &d : cands) {
      if (first_in_doc(d) && d.entity_ids == c.entity_ids &&
          text::NormalizeSurface(d.sentence) == text::NormalizeSurface(c.sentence) &&
          order(d) < order(c)) {
        earliest = false;
      }
    }
    if (earliest) out.push_back(c);
  }
  SortCandidates(&out);
  return out;
}

TEST(Dedup, TenWithThreeDuplicates) {
  const std::string a = "Maddux is the Picasso of baseball.";
  const std::string b = "Burton was the Frank Sinatra of Shakespeare.";
  std::vector<Candidate> cands = {
      Make("d1", 0, 10, "Picasso", "Q5593", "baseball", a, "2001-01-01"),
      Make("d1", 4, 10, "Picasso", "Q5593", "baseball", a, "2001-01-01"),  // repeat
      Make("d2", 0, 11, "Frank Sinatra", "Q40912", "Shakespeare", b, "2001-02-01"),
      Make("d3", 5, 11, "Frank Sinatra", "Q40912", "Shakespeare", b, "2002-02-01"),  // reprint
      Make("d4", 0, 10, "Picasso", "Q5593", "baseball", a, "2003-01-01"),  // reprint
      Make("d4", 1, 0, "Elvis", "Q303", "cultural theory"),
      Make("d5", 0, 0, "Mozart", "Q254", "chess"),
      Make("d5", 0, 30, "Mozart", "Q254", "checkers"),
      Make("d6", 0, 0, "MJ", "Q41421", "hockey"),
      Make("d7", 2, 0, "MJ", "Q41421", "hockey"),
  };
  auto out = Dedup(cands);
  EXPECT_EQ(out.size(), 7u);
  EXPECT_EQ(out, BruteForceDedup(cands));
}

TEST(DedupProperty, MatchesBruteForceAndIsIdempotent) {
  std::mt19937_64 rng(13);
  const char *sentences[] = {"s one", "s  one", "s two", "s three"};
  const char *modifiers[] = {"baseball", "baseball ", "chess", ""};
  const char *dates[] = {"2001-01-01", "2002-01-01", "", "2001-01-01"};
  for (int round = 0; round < 500; ++round) {
    std::vector<Candidate> cands;
    const int n = static_cast<int>(rng() % 25);
    std::set<std::string> ids;
    for (int i = 0; i < n; ++i) {
      const int doc = static_cast<int>(rng() % 5);
      Candidate c = Make("d" + std::to_string(doc), rng() % 4, rng() % 3 * 10, "X",
                         rng() % 2 ? "Q1" : "Q2", modifiers[rng() % 4], sentences[rng() % 4],
                         dates[doc % 4]);
      if (!ids.insert(c.candidate_id).second) continue;
      cands.push_back(c);
    }
    auto out = Dedup(cands);
    ASSERT_EQ(out, BruteForceDedup(cands));
    ASSERT_EQ(Dedup(out), out);
    std::shuffle(cands.begin(), cands.end(), rng);
    ASSERT_EQ(Dedup(cands), out);
  }
}

TEST(Precision, Examples) {
  EXPECT_NEAR(*Ratio(2775, 3753) * 100.0, 73.9, 0.05);
  EXPECT_FALSE(Ratio(0, 0));

  PrecisionReport empty = ComputePrecision({}, LabelState(), Blacklist());
  EXPECT_FALSE(empty.precision);
  EXPECT_EQ(empty.n_candidates, 0u);

  std::vector<Candidate> cands;
  for (int i = 0; i < 5; ++i) cands.push_back(Make("d" + std::to_string(i), 0, 0, "X", "Q1", "m"));
  LabelState labels;
  for (int i = 0; i < 5; ++i) {
    labels.Apply({cands[static_cast<size_t>(i)].candidate_id,
                  i < 4 ? Verdict::kTrueVa : Verdict::kNotVa, "ann", i});
  }
  PrecisionReport r = ComputePrecision(cands, labels, Blacklist());
  EXPECT_DOUBLE_EQ(*r.precision, 0.8);
  EXPECT_EQ(r.n_true, 4u);
  EXPECT_EQ(r.n_false, 1u);

  cands.push_back(Make("d9", 0, 0, "Y", "Q2", "m"));  // unlabeled counts
  r = ComputePrecision(cands, labels, Blacklist());
  EXPECT_NEAR(*r.precision, 4.0 / 6.0, 1e-12);
  EXPECT_DOUBLE_EQ(*r.labeled_precision, 0.8);
  r = ComputePrecision(cands, labels, Blacklist::FromSurfaces({"Y"}));
  EXPECT_DOUBLE_EQ(*r.precision, 0.8);  // suppressed ones do not
}

}  // namespace
}  // namespace vaminer

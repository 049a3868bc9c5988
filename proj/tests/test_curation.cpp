// Copyright 2026 The fgrain Authors.
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

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "fgrain/curation.hpp"
#include "fgrain/error.hpp"
#include "fgrain/scoring.hpp"
#include "json.hpp"
#include "test_util.hpp"

using namespace fgrain;
using fgrain::testing::data_path;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kOk;
}

std::vector<ScoreRecord> records_from(const std::vector<std::pair<std::string, double>>& s) {
  std::vector<ScoreRecord> out;
  for (const auto& [id, v] : s) out.push_back(make_score_record(id, v, {}));
  return out;
}

std::vector<std::string> ids(const std::vector<RankedId>& v) {
  std::vector<std::string> out;
  for (const auto& r : v) out.push_back(r.pair_id);
  return out;
}

std::vector<ScoreRecord> random_records(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<ScoreRecord> out;
  for (std::size_t i = 0; i < n; ++i) {
    // Coarse scores so ties are common.
    const double s = std::round(u(rng) * 20.0) / 20.0;
    out.push_back(make_score_record("r" + std::to_string(rng() % 100000) + "_" +
                                        std::to_string(i),
                                    s, {{"u", std::round(u(rng) * 20.0) / 20.0}}));
  }
  return out;
}

}  // namespace

TEST_CASE("rank examples") {
  std::vector<ScoredId> s{{"a", 0.1}, {"b", 0.5}, {"c", 0.3}};
  auto r = rank_scores(s);
  CHECK(r[0].rank == 1);
  CHECK(r[1].rank == 3);
  CHECK(r[2].rank == 2);
  std::vector<ScoredId> tie{{"b", 0.4}, {"a", 0.4}};
  auto t = rank_scores(tie);
  CHECK(t[0].rank == 2);
  CHECK(t[1].rank == 1);
}

TEST_CASE("ranks of 1000 records match a sort oracle") {
  std::mt19937_64 rng(8);
  auto recs = random_records(rng, 1000);
  auto ranked = rank_scores(recs, FilterMetric::kFClip);
  std::vector<std::pair<double, std::string>> oracle;
  for (const auto& r : recs) oracle.emplace_back(r.f_score, r.pair_id);
  std::sort(oracle.begin(), oracle.end());
  std::set<std::size_t> seen;
  for (const auto& r : ranked) {
    seen.insert(r.rank);
    CHECK(oracle[r.rank - 1].second == r.pair_id);
  }
  CHECK(seen.size() == 1000);
  CHECK(*seen.begin() == 1);
  CHECK(*seen.rbegin() == 1000);
}

TEST_CASE("rank errors") {
  std::vector<ScoredId> bad{{"a", std::nan("")}};
  CHECK(code_of([&] { rank_scores(bad); }) == ErrorCode::kNonFiniteScore);
  std::vector<ScoredId> dup{{"a", 0.1}, {"a", 0.2}};
  CHECK(code_of([&] { rank_scores(dup); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { rank_scores(std::span<const ScoredId>{}); }) ==
        ErrorCode::kInvalidArgument);
}

TEST_CASE("filtering the 10-record fixture at 30%") {
  auto recs = read_score_records(data_path("scores10.jsonl"));
  auto expected = nlohmann::json::parse(fgrain::testing::slurp(data_path("scores10.expected.json")));
  auto f = filter_bottom(recs, FilterMetric::kFClip, 30);
  auto c = filter_bottom(recs, FilterMetric::kClip, 30);
  CHECK(f.removed.size() == 3);
  CHECK(f.retained.size() == 7);
  CHECK(ids(f.removed) == expected["removedFclip"].get<std::vector<std::string>>());
  CHECK(ids(c.removed) == expected["removedClip"].get<std::vector<std::string>>());
  CHECK_FALSE(f.seed.has_value());
}

TEST_CASE("removal counts use floor") {
  CHECK(removal_count(30, 10) == 3);
  CHECK(removal_count(10, 9) == 0);
  CHECK(removal_count(33.3, 100) == 33);
  CHECK(removal_count(10, 30) == 3);
  CHECK(removal_count(70, 10) == 7);
}

TEST_CASE("rate bounds") {
  auto recs = records_from({{"a", 0.1}, {"b", 0.2}});
  for (double rate : {0.0, 100.0, -5.0, 120.0, std::nan("")}) {
    CHECK(code_of([&] { filter_bottom(recs, FilterMetric::kClip, rate); }) ==
          ErrorCode::kRateOutOfRange);
  }
}

TEST_CASE("random filtering is seeded and input-order independent") {
  auto recs = read_score_records(data_path("scores10.jsonl"));
  CHECK(code_of([&] { filter_bottom(recs, FilterMetric::kRandom, 30); }) ==
        ErrorCode::kInvalidArgument);
  auto a = filter_bottom(recs, FilterMetric::kRandom, 30, 42);
  auto b = filter_bottom(recs, FilterMetric::kRandom, 30, 42);
  CHECK(a == b);
  CHECK(a.removed.size() == 3);
  CHECK(a.seed == std::optional<std::uint64_t>(42));
  std::reverse(recs.begin(), recs.end());
  auto c = filter_bottom(recs, FilterMetric::kRandom, 30, 42);
  CHECK(ids(c.removed) == ids(a.removed));
}

TEST_CASE("filter algebra on random record sets") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 60;
    auto recs = random_records(rng, n);
    for (FilterMetric m : {FilterMetric::kClip, FilterMetric::kFClip}) {
      auto low = filter_bottom(recs, m, 20);
      auto high = filter_bottom(recs, m, 50);
      // Partition.
      std::set<std::string> all, got;
      for (const auto& r : recs) all.insert(r.pair_id);
      for (const auto& r : high.removed) got.insert(r.pair_id);
      for (const auto& r : high.retained) CHECK(got.insert(r.pair_id).second);
      CHECK(got == all);
      // Nesting.
      std::set<std::string> high_removed;
      for (const auto& r : high.removed) high_removed.insert(r.pair_id);
      for (const auto& r : low.removed) CHECK(high_removed.count(r.pair_id) == 1);
      // Sort oracle.
      std::vector<std::pair<double, std::string>> oracle;
      for (const auto& s : scores_for(recs, m)) oracle.emplace_back(s.score, s.pair_id);
      std::sort(oracle.begin(), oracle.end());
      REQUIRE(high.removed.size() == n * 50 / 100);
      for (std::size_t i = 0; i < high.removed.size(); ++i) {
        CHECK(high.removed[i].pair_id == oracle[i].second);
      }
    }
    auto f = filter_bottom(recs, FilterMetric::kFClip, 30);
    auto c = filter_bottom(recs, FilterMetric::kClip, 30);
    CHECK(overlap(f, c) == overlap(c, f));
  }
}

TEST_CASE("overlap examples and errors") {
  auto recs = records_from({{"a", 0.1}, {"b", 0.2}, {"c", 0.3}, {"d", 0.4}});
  auto m = filter_bottom(recs, FilterMetric::kClip, 50);
  CHECK(overlap(m, m) == 1.0);

  auto flipped = records_from({{"a", 0.4}, {"b", 0.3}, {"c", 0.2}, {"d", 0.1}});
  auto n = filter_bottom(flipped, FilterMetric::kClip, 50);
  CHECK(overlap(m, n) == 0.0);

  auto other_rate = filter_bottom(recs, FilterMetric::kClip, 25);
  CHECK(code_of([&] { overlap(m, other_rate); }) == ErrorCode::kRateMismatch);
  auto other_pop = filter_bottom(records_from({{"a", 0.1}, {"b", 0.2}, {"c", 0.3}, {"e", 0.4}}),
                                 FilterMetric::kClip, 50);
  CHECK(code_of([&] { overlap(m, other_pop); }) == ErrorCode::kPopulationMismatch);

  auto none = filter_bottom(records_from({{"a", 0.1}}), FilterMetric::kClip, 50);
  CHECK(none.removed.empty());
  CHECK(overlap(none, none) == 1.0);
}

TEST_CASE("rank difference on a hand-computed fixture") {
  // f ranks: p1=1 p2=2 p3=3 p4=4 p5=5 ; c ranks: p1=5 p2=3 p3=1 p4=2 p5=4
  std::vector<ScoredId> f{{"p1", 0.1}, {"p2", 0.2}, {"p3", 0.3}, {"p4", 0.4}, {"p5", 0.5}};
  std::vector<ScoredId> c{{"p1", 0.9}, {"p2", 0.5}, {"p3", 0.1}, {"p4", 0.2}, {"p5", 0.6}};
  auto r = rank_difference(f, c, 2);
  std::vector<std::pair<std::string, long long>> got;
  for (const auto& e : r.entries) got.emplace_back(e.pair_id, e.diff);
  CHECK(got == std::vector<std::pair<std::string, long long>>{
                   {"p3", 2}, {"p4", 2}, {"p5", 1}, {"p2", -1}, {"p1", -4}});
  REQUIRE(r.top_k.size() == 2);
  CHECK(r.top_k[0].pair_id == "p3");
  CHECK(r.bottom_k[0].pair_id == "p1");
  CHECK(r.bottom_k[1].pair_id == "p2");

  auto swapped = rank_difference(c, f, 2);
  for (const auto& e : swapped.entries) {
    auto it = std::find_if(r.entries.begin(), r.entries.end(),
                           [&](const RankDiffEntry& x) { return x.pair_id == e.pair_id; });
    CHECK(it->diff == -e.diff);
  }
}

TEST_CASE("rank difference trivia and errors") {
  std::vector<ScoredId> one{{"x", 0.3}};
  auto r = rank_difference(one, one, 5);
  REQUIRE(r.entries.size() == 1);
  CHECK(r.entries[0].diff == 0);
  CHECK(r.entries[0].f_rank == 1);

  std::vector<ScoredId> s{{"a", 0.3}, {"b", 0.1}, {"c", 0.2}};
  for (const auto& e : rank_difference(s, s, 3).entries) CHECK(e.diff == 0);

  std::vector<ScoredId> t{{"a", 0.3}, {"b", 0.1}, {"z", 0.2}};
  CHECK(code_of([&] { rank_difference(s, t, 1); }) == ErrorCode::kPopulationMismatch);
}

TEST_CASE("filter manifests round-trip") {
  auto recs = read_score_records(data_path("scores10.jsonl"));
  for (auto m : {filter_bottom(recs, FilterMetric::kFClip, 30),
                 filter_bottom(recs, FilterMetric::kRandom, 40, 7)}) {
    const std::string text = format_filter_manifest(m);
    auto back = parse_filter_manifest(text);
    CHECK(back.metric == m.metric);
    CHECK(back.seed == m.seed);
    CHECK(ids(back.removed) == ids(m.removed));
    CHECK(format_filter_manifest(back) == text);
    CHECK(overlap(back, m) == 1.0);
  }
  auto m = filter_bottom(recs, FilterMetric::kFClip, 30);
  auto retained = format_retained_ids(m);
  CHECK(std::count(retained.begin(), retained.end(), '\n') == 7);
  CHECK(code_of([] { parse_filter_manifest("{\"pairId\":\"a\"}\n"); }) == ErrorCode::kParse);
}

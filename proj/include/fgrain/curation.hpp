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

// Score-based data curation. Ranks are ascending in score (rank 1 is the
// lowest score) with ties broken by pairId, so every output is
// byte-reproducible.

#ifndef FGRAIN_CURATION_HPP_
#define FGRAIN_CURATION_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fgrain/metric.hpp"

namespace fgrain {

enum class FilterMetric { kClip, kFClip, kRandom };

std::string_view filter_metric_name(FilterMetric metric);
std::optional<FilterMetric> parse_filter_metric(std::string_view name);

struct ScoredId {
  std::string pair_id;
  double score = 0.0;
};

// sentenceScore for kClip, fScore for kFClip. kRandom is rejected.
std::vector<ScoredId> scores_for(std::span<const ScoreRecord> records, FilterMetric metric);

struct RankedId {
  std::string pair_id;
  double score = 0.0;
  std::size_t rank = 0;

  bool operator==(const RankedId&) const = default;
};

// Input order preserved, rank filled in. Throws kNonFiniteScore and
// kInvalidArgument on empty input or duplicate ids.
std::vector<RankedId> rank_scores(std::span<const ScoredId> scores);
std::vector<RankedId> rank_scores(std::span<const ScoreRecord> records, FilterMetric metric);

struct FilterManifest {
  double rate_pct = 0.0;
  FilterMetric metric = FilterMetric::kFClip;
  std::optional<std::uint64_t> seed;
  std::size_t total = 0;
  std::vector<RankedId> removed;   // ascending rank
  std::vector<RankedId> retained;  // ascending rank

  bool operator==(const FilterManifest&) const = default;
};

// Number of items a bottom-x% filter removes: floor(rate_pct * total / 100).
std::size_t removal_count(double rate_pct, std::size_t total);

// Removes the floor(rate% * n) lowest-ranked records. For kRandom the rank
// comes from seeded uniform keys (the key is recorded as the score) and a
// seed is required. Throws kRateOutOfRange unless 0 < rate_pct < 100.
FilterManifest filter_bottom(std::span<const ScoreRecord> records, FilterMetric metric,
                             double rate_pct, std::optional<std::uint64_t> seed = {});

// |removed(a) ∩ removed(b)| / |removed(a)|; 1 when nothing was removed.
// Throws kPopulationMismatch and kRateMismatch.
double overlap(const FilterManifest& a, const FilterManifest& b);

struct RankDiffEntry {
  std::string pair_id;
  std::size_t f_rank = 0;
  std::size_t c_rank = 0;
  long long diff = 0;  // f_rank - c_rank

  bool operator==(const RankDiffEntry&) const = default;
};

struct RankDiffReport {
  std::vector<RankDiffEntry> entries;  // diff descending, ties by pairId
  std::vector<RankDiffEntry> top_k;     // largest positive diffs first
  std::vector<RankDiffEntry> bottom_k;  // most negative diffs first
};

// Throws kPopulationMismatch when the two inputs cover different ids.
RankDiffReport rank_difference(std::span<const ScoredId> f_scores,
                               std::span<const ScoredId> c_scores, std::size_t k);
// fScore of f_records against sentenceScore of c_records.
RankDiffReport rank_difference(std::span<const ScoreRecord> f_records,
                               std::span<const ScoreRecord> c_records, std::size_t k);

// Header line {"kind":"filter-manifest", ratePct, metric, seed, total}
// followed by one {"pairId", "status", "score", "rank"} line per record,
// removed first.
std::string format_filter_manifest(const FilterManifest& manifest);
FilterManifest parse_filter_manifest(std::string_view text);
FilterManifest read_filter_manifest(const std::filesystem::path& path);
// One retained pairId per line, in rank order.
std::string format_retained_ids(const FilterManifest& manifest);

std::string format_rank_diff(const RankDiffReport& report);

}  // namespace fgrain

#endif  // FGRAIN_CURATION_HPP_

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

// Caption-selection benchmarks: pick the candidate caption a metric scores
// highest and compare against the gold (non-hallucinated) caption.

#ifndef FGRAIN_BENCHMARK_HPP_
#define FGRAIN_BENCHMARK_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fgrain/metric.hpp"
#include "fgrain/scoring.hpp"
#include "fgrain/stats.hpp"
#include "fgrain/store.hpp"

namespace fgrain {

struct Candidate {
  std::string caption_id;
  std::string text;

  bool operator==(const Candidate&) const = default;
};

struct CandidateSet {
  std::string image_id;
  std::vector<Candidate> candidates;
  std::size_t gold_index = 0;

  bool operator==(const CandidateSet&) const = default;
};

// Throws kInvariantViolation unless |candidates| >= 2 and gold is in range.
void validate(const CandidateSet& set);

// JSON Lines: {"imageId", "goldIndex", "candidates": [{"captionId", "text"}]}.
std::vector<CandidateSet> parse_candidate_sets(std::string_view text);
std::vector<CandidateSet> read_candidate_sets(const std::filesystem::path& path);
std::string format_candidate_sets(std::span<const CandidateSet> sets);

enum class SelectionMetric { kClip, kFClip };

std::string_view selection_metric_name(SelectionMetric metric);
std::optional<SelectionMetric> parse_selection_metric(std::string_view name);

// Score of every candidate under the metric, in candidate order.
std::vector<double> candidate_scores(const CandidateSet& set, const ScoringContext& ctx,
                                     const MetricConfig& cfg, SelectionMetric metric);

// Argmax of candidate_scores; ties go to the lowest index.
std::size_t select_caption(const CandidateSet& set, const ScoringContext& ctx,
                           const MetricConfig& cfg, SelectionMetric metric);

std::size_t argmax_lowest(std::span<const double> scores);

struct ItemChoice {
  std::string image_id;
  std::size_t chosen_index = 0;
  bool correct = false;

  bool operator==(const ItemChoice&) const = default;
};

struct EvalResult {
  std::string dataset_name;
  double accuracy_pct = 0.0;
  std::vector<ItemChoice> choices;
  std::optional<std::uint64_t> seed;

  std::size_t correct_count() const;
  bool operator==(const EvalResult&) const = default;
};

// Throws kInvalidArgument on an empty set list. jobs = 0 uses all cores;
// results do not depend on jobs.
EvalResult evaluate(std::span<const CandidateSet> sets, const ScoringContext& ctx,
                    const MetricConfig& cfg, SelectionMetric metric,
                    std::string dataset_name = {}, std::size_t jobs = 1);

// F-CLIPScore selection where every unit embedding is independently
// replaced, with probability `rate`, by a uniform draw (with replacement)
// from the pool. Each candidate set draws from its own stream derived from
// (seed, set index). Throws kEmptyPool and kRateOutOfRange.
EvalResult noun_replacement_ablation(std::span<const CandidateSet> sets,
                                     const ScoringContext& ctx, const EmbeddingStore& pool,
                                     double rate, std::uint64_t seed, const MetricConfig& cfg,
                                     std::string dataset_name = {}, std::size_t jobs = 1);

struct HistogramBin {
  double lower = 0.0;
  std::size_t count_a = 0;
  std::size_t count_b = 0;
};

struct DriftReport {
  std::vector<double> cosines_a;  // per id of subset A, in input order
  std::vector<double> cosines_b;
  std::vector<HistogramBin> histogram;
  double bin_width = 0.0;
  GroupSummary group_a;
  GroupSummary group_b;
  WelchResult welch;
};

// Per-id cosine between the two stores' vectors, histogrammed over the
// joint range with `bins` equal-width bins, plus a Welch test of group A
// against group B. Throws UnknownIdError and kDimensionMismatch.
DriftReport compare_stores(const EmbeddingStore& store_a, const EmbeddingStore& store_b,
                           std::span<const std::string> ids_a,
                           std::span<const std::string> ids_b, std::size_t bins);

// Report renderers (JSON Lines) and the plain histogram table.
std::string format_eval_result(const EvalResult& result);
std::string format_drift_report(const DriftReport& report);
std::string format_histogram_table(const DriftReport& report);

}  // namespace fgrain

#endif  // FGRAIN_BENCHMARK_HPP_

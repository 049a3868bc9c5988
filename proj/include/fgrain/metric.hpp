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

// Image-text alignment kernels.
//
//   clip_score(I, T)   = w * max(cos(I, T), 0)
//   f_clip_score(I, C) = (clip_score(I, C) + sum_i clip_score(I, u_i)) / (N + 1)
//
// where u_1..u_N are the embeddings of the units (nouns by default) extracted
// from caption C. All kernels are pure.

#ifndef FGRAIN_METRIC_HPP_
#define FGRAIN_METRIC_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fgrain/tagger.hpp"

namespace fgrain {

using Vector = std::span<const float>;

struct MetricConfig {
  double w = 2.5;
  bool clamp_negative = true;
  UnitKind variant = UnitKind::kNoun;
};

// Throws kInvalidArgument unless w > 0 and finite.
void validate(const MetricConfig& cfg);

// Throws kDimensionMismatch or kZeroVector.
double cosine(Vector a, Vector b);

double clip_score(Vector image, Vector text, const MetricConfig& cfg);

// Summation runs left to right: sentence term first, then units in order.
double f_clip_score(Vector image, Vector sentence, std::span<const Vector> units,
                    const MetricConfig& cfg);

struct UnitScore {
  std::string surface;
  double score = 0.0;

  bool operator==(const UnitScore&) const = default;
};

struct ScoreRecord {
  std::string pair_id;
  double sentence_score = 0.0;
  std::vector<UnitScore> unit_scores;
  double f_score = 0.0;

  std::size_t unit_count() const { return unit_scores.size(); }
  bool operator==(const ScoreRecord&) const = default;
};

// Assembles a record with the same summation order as f_clip_score.
ScoreRecord make_score_record(std::string pair_id, double sentence_score,
                              std::vector<UnitScore> unit_scores);

struct PenaltyConfig {
  double alpha = 0.3;
  std::size_t batch_size = 1;
};

// (alpha / B) * sum_i (1 - fScore_i) over one batch of B records whose
// fScores are on the unit (w = 1) scale. Throws kBatchSizeMismatch when
// records.size() != B and kInvariantViolation for fScores above 1.
double f_clip_penalty(std::span<const ScoreRecord> records, const PenaltyConfig& cfg);
double f_clip_penalty(std::span<const double> f_scores, const PenaltyConfig& cfg);

struct BatchPenalty {
  std::size_t first = 0;  // index of the batch's first record
  std::size_t size = 0;
  double penalty = 0.0;
};

// Splits records into consecutive batches of cfg.batch_size; a trailing
// partial batch is evaluated with B equal to its own size.
std::vector<BatchPenalty> batched_penalties(std::span<const ScoreRecord> records,
                                            const PenaltyConfig& cfg);

}  // namespace fgrain

#endif  // FGRAIN_METRIC_HPP_

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

#include "fgrain/metric.hpp"

#include <algorithm>
#include <cmath>

#include "fgrain/error.hpp"

namespace fgrain {

void validate(const MetricConfig& cfg) {
  if (!(cfg.w > 0.0) || !std::isfinite(cfg.w)) {
    throw Error(ErrorCode::kInvalidArgument, "metric scale w must be positive");
  }
}

double cosine(Vector a, Vector b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kDimensionMismatch, std::to_string(a.size()) + " vs " +
                                                   std::to_string(b.size()));
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double x = a[i];
    const double y = b[i];
    dot += x * y;
    na += x * x;
    nb += y * y;
  }
  if (na == 0.0 || nb == 0.0) throw Error(ErrorCode::kZeroVector, "cosine of a zero vector");
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

double clip_score(Vector image, Vector text, const MetricConfig& cfg) {
  const double c = cosine(image, text);
  return cfg.w * (cfg.clamp_negative ? std::max(c, 0.0) : c);
}

double f_clip_score(Vector image, Vector sentence, std::span<const Vector> units,
                    const MetricConfig& cfg) {
  double sum = clip_score(image, sentence, cfg);
  for (const auto& u : units) sum += clip_score(image, u, cfg);
  return sum / static_cast<double>(units.size() + 1);
}

ScoreRecord make_score_record(std::string pair_id, double sentence_score,
                              std::vector<UnitScore> unit_scores) {
  ScoreRecord r;
  r.pair_id = std::move(pair_id);
  r.sentence_score = sentence_score;
  double sum = sentence_score;
  for (const auto& u : unit_scores) sum += u.score;
  r.f_score = sum / static_cast<double>(unit_scores.size() + 1);
  r.unit_scores = std::move(unit_scores);
  return r;
}

double f_clip_penalty(std::span<const double> f_scores, const PenaltyConfig& cfg) {
  if (!(cfg.alpha >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "alpha must be >= 0");
  if (cfg.batch_size == 0) throw Error(ErrorCode::kInvalidArgument, "batch size must be positive");
  if (f_scores.size() != cfg.batch_size) {
    throw Error(ErrorCode::kBatchSizeMismatch,
                "got " + std::to_string(f_scores.size()) + " records for B=" +
                    std::to_string(cfg.batch_size));
  }
  double sum = 0.0;
  for (double f : f_scores) {
    if (!std::isfinite(f)) throw Error(ErrorCode::kNonFiniteScore, "penalty input");
    // Slack for rounding in the mean of unit-scale scores.
    if (f > 1.0 + 1e-9) {
      throw Error(ErrorCode::kInvariantViolation,
                  "fScore " + std::to_string(f) + " exceeds the unit scale");
    }
    sum += 1.0 - f;
  }
  return cfg.alpha / static_cast<double>(cfg.batch_size) * sum;
}

double f_clip_penalty(std::span<const ScoreRecord> records, const PenaltyConfig& cfg) {
  std::vector<double> f;
  f.reserve(records.size());
  for (const auto& r : records) f.push_back(r.f_score);
  return f_clip_penalty(std::span<const double>(f), cfg);
}

std::vector<BatchPenalty> batched_penalties(std::span<const ScoreRecord> records,
                                            const PenaltyConfig& cfg) {
  if (cfg.batch_size == 0) throw Error(ErrorCode::kInvalidArgument, "batch size must be positive");
  std::vector<BatchPenalty> out;
  for (std::size_t first = 0; first < records.size(); first += cfg.batch_size) {
    const std::size_t size = std::min(cfg.batch_size, records.size() - first);
    out.push_back({first, size,
                   f_clip_penalty(records.subspan(first, size), PenaltyConfig{cfg.alpha, size})});
  }
  return out;
}

}  // namespace fgrain

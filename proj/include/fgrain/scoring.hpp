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

// Corpus-wide scoring: binds stores, the tagger and the optional embedding
// provider to the metric kernels.

#ifndef FGRAIN_SCORING_HPP_
#define FGRAIN_SCORING_HPP_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fgrain/metric.hpp"
#include "fgrain/provider.hpp"
#include "fgrain/store.hpp"
#include "fgrain/tagger.hpp"

namespace fgrain {

struct ScoringContext {
  const EmbeddingStore* images = nullptr;
  const EmbeddingStore* texts = nullptr;   // captions by captionId
  const EmbeddingStore* units = nullptr;   // unit surfaces; defaults to texts
  EmbeddingProvider* provider = nullptr;   // embeds unit surfaces missing from units
  const TaggerModel* tagger = nullptr;
  std::string model_tag = "default";

  const EmbeddingStore& unit_store() const { return units ? *units : *texts; }
};

// Units of `text` with their resolved embeddings, in sentence order.
struct ResolvedUnits {
  std::vector<TextUnit> units;
  std::vector<std::vector<float>> vectors;
};

ResolvedUnits resolve_caption_units(const ScoringContext& ctx, std::string_view text,
                                    UnitKind kind);

// Scores one caption against one image.
ScoreRecord score_caption(const ScoringContext& ctx, std::string pair_id, Vector image,
                          Vector sentence, std::string_view caption_text,
                          const MetricConfig& cfg);

// One record per manifest entry, in manifest order; jobs = 0 uses all cores.
// Output does not depend on jobs. Unknown ids raise UnknownIdError naming
// the pair.
std::vector<ScoreRecord> score_pairs(const PairManifest& manifest, const ScoringContext& ctx,
                                     const MetricConfig& cfg, std::size_t jobs = 1);

// JSON Lines with keys pairId, sentenceScore, fScore, N, unitScores; reals
// printed with 9 significant digits.
std::string format_score_record(const ScoreRecord& record);
std::string format_score_records(const std::vector<ScoreRecord>& records);
std::vector<ScoreRecord> parse_score_records(std::string_view text);
std::vector<ScoreRecord> read_score_records(const std::filesystem::path& path);

}  // namespace fgrain

#endif  // FGRAIN_SCORING_HPP_

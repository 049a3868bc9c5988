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

#include "fgrain/scoring.hpp"

#include "fgrain/error.hpp"
#include "parallel.hpp"
#include "text_io.hpp"

namespace fgrain {

ResolvedUnits resolve_caption_units(const ScoringContext& ctx, std::string_view text,
                                    UnitKind kind) {
  if (ctx.tagger == nullptr) throw Error(ErrorCode::kModelNotLoaded, "no tagger in context");
  ResolvedUnits out;
  out.units = extract_units(*ctx.tagger, text, kind);
  out.vectors = resolve_unit_embeddings(out.units, ctx.unit_store(), ctx.provider, ctx.model_tag);
  return out;
}

ScoreRecord score_caption(const ScoringContext& ctx, std::string pair_id, Vector image,
                          Vector sentence, std::string_view caption_text,
                          const MetricConfig& cfg) {
  auto resolved = resolve_caption_units(ctx, caption_text, cfg.variant);
  std::vector<UnitScore> unit_scores;
  unit_scores.reserve(resolved.units.size());
  for (std::size_t i = 0; i < resolved.units.size(); ++i) {
    unit_scores.push_back({resolved.units[i].surface,
                           clip_score(image, resolved.vectors[i], cfg)});
  }
  return make_score_record(std::move(pair_id), clip_score(image, sentence, cfg),
                           std::move(unit_scores));
}

std::vector<ScoreRecord> score_pairs(const PairManifest& manifest, const ScoringContext& ctx,
                                     const MetricConfig& cfg, std::size_t jobs) {
  validate(cfg);
  if (ctx.images == nullptr || ctx.texts == nullptr) {
    throw Error(ErrorCode::kInvalidArgument, "image and text stores are required");
  }
  std::vector<ScoreRecord> out(manifest.size());
  detail::parallel_for(manifest.size(), jobs, [&](std::size_t i) {
    const PairRecord& pair = manifest[i];
    try {
      out[i] = score_caption(ctx, pair.pair_id, ctx.images->get(pair.image_id),
                             ctx.texts->get(pair.caption_id), pair.caption_text, cfg);
    } catch (const UnknownIdError& e) {
      throw UnknownIdError(e.id(), "pair '" + pair.pair_id + "'");
    }
  });
  return out;
}

std::string format_score_record(const ScoreRecord& r) {
  std::string line = "{\"pairId\":" + detail::quote(r.pair_id) +
                     ",\"sentenceScore\":" + detail::format_real(r.sentence_score) +
                     ",\"fScore\":" + detail::format_real(r.f_score) +
                     ",\"N\":" + std::to_string(r.unit_count()) + ",\"unitScores\":[";
  for (std::size_t i = 0; i < r.unit_scores.size(); ++i) {
    if (i > 0) line += ',';
    line += "{\"unit\":" + detail::quote(r.unit_scores[i].surface) +
            ",\"score\":" + detail::format_real(r.unit_scores[i].score) + "}";
  }
  line += "]}";
  return line;
}

std::string format_score_records(const std::vector<ScoreRecord>& records) {
  std::string out;
  for (const auto& r : records) out += format_score_record(r) + "\n";
  return out;
}

std::vector<ScoreRecord> parse_score_records(std::string_view text) {
  constexpr std::string_view kWhat = "score records";
  std::vector<ScoreRecord> out;
  detail::for_each_record(text, kWhat, [&](const nlohmann::json& obj, std::size_t line) {
    ScoreRecord r;
    r.pair_id = detail::string_field(obj, "pairId", line, kWhat);
    r.sentence_score = detail::real_field(obj, "sentenceScore", line, kWhat);
    r.f_score = detail::real_field(obj, "fScore", line, kWhat);
    const auto n = detail::integer_field(obj, "N", line, kWhat);
    auto it = obj.find("unitScores");
    if (it == obj.end() || !it->is_array()) {
      throw Error(ErrorCode::kParse, "score records line " + std::to_string(line) +
                                         ": unitScores missing");
    }
    for (const auto& u : *it) {
      if (!u.is_object()) {
        throw Error(ErrorCode::kParse, "score records line " + std::to_string(line) +
                                           ": unitScores entry is not an object");
      }
      r.unit_scores.push_back({detail::string_field(u, "unit", line, kWhat),
                               detail::real_field(u, "score", line, kWhat)});
    }
    if (n != static_cast<long long>(r.unit_scores.size())) {
      throw Error(ErrorCode::kParse, "score records line " + std::to_string(line) +
                                         ": N disagrees with unitScores");
    }
    out.push_back(std::move(r));
  });
  return out;
}

std::vector<ScoreRecord> read_score_records(const std::filesystem::path& path) {
  return parse_score_records(detail::read_file(path));
}

}  // namespace fgrain

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

#include "fgrain/benchmark.hpp"

#include <algorithm>
#include <cmath>

#include "fgrain/error.hpp"
#include "fgrain/random.hpp"
#include "parallel.hpp"
#include "text_io.hpp"

namespace fgrain {

void validate(const CandidateSet& set) {
  if (set.candidates.size() < 2) {
    throw Error(ErrorCode::kInvariantViolation,
                "candidate set for '" + set.image_id + "' needs at least two candidates");
  }
  if (set.gold_index >= set.candidates.size()) {
    throw Error(ErrorCode::kInvariantViolation,
                "gold index " + std::to_string(set.gold_index) + " out of range for '" +
                    set.image_id + "'");
  }
}

std::vector<CandidateSet> parse_candidate_sets(std::string_view text) {
  constexpr std::string_view kWhat = "candidate sets";
  std::vector<CandidateSet> sets;
  detail::for_each_record(text, kWhat, [&](const nlohmann::json& obj, std::size_t line) {
    CandidateSet set;
    set.image_id = detail::string_field(obj, "imageId", line, kWhat);
    const auto gold = detail::integer_field(obj, "goldIndex", line, kWhat);
    auto it = obj.find("candidates");
    if (it == obj.end() || !it->is_array()) {
      throw Error(ErrorCode::kParse,
                  "candidate sets line " + std::to_string(line) + ": candidates missing");
    }
    for (const auto& c : *it) {
      if (!c.is_object()) {
        throw Error(ErrorCode::kParse,
                    "candidate sets line " + std::to_string(line) + ": bad candidate");
      }
      set.candidates.push_back({detail::string_field(c, "captionId", line, kWhat),
                                detail::string_field(c, "text", line, kWhat)});
    }
    if (gold < 0) {
      throw Error(ErrorCode::kInvariantViolation,
                  "candidate sets line " + std::to_string(line) + ": negative goldIndex");
    }
    set.gold_index = static_cast<std::size_t>(gold);
    validate(set);
    sets.push_back(std::move(set));
  });
  return sets;
}

std::vector<CandidateSet> read_candidate_sets(const std::filesystem::path& path) {
  return parse_candidate_sets(detail::read_file(path));
}

std::string format_candidate_sets(std::span<const CandidateSet> sets) {
  std::string out;
  for (const auto& s : sets) {
    out += "{\"imageId\":" + detail::quote(s.image_id) +
           ",\"goldIndex\":" + std::to_string(s.gold_index) + ",\"candidates\":[";
    for (std::size_t i = 0; i < s.candidates.size(); ++i) {
      if (i > 0) out += ',';
      out += "{\"captionId\":" + detail::quote(s.candidates[i].caption_id) +
             ",\"text\":" + detail::quote(s.candidates[i].text) + "}";
    }
    out += "]}\n";
  }
  return out;
}

std::string_view selection_metric_name(SelectionMetric metric) {
  return metric == SelectionMetric::kClip ? "clip" : "fclip";
}

std::optional<SelectionMetric> parse_selection_metric(std::string_view name) {
  if (name == "clip") return SelectionMetric::kClip;
  if (name == "fclip") return SelectionMetric::kFClip;
  return std::nullopt;
}

std::size_t argmax_lowest(std::span<const double> scores) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] > scores[best]) best = i;
  }
  return best;
}

std::vector<double> candidate_scores(const CandidateSet& set, const ScoringContext& ctx,
                                     const MetricConfig& cfg, SelectionMetric metric) {
  const Vector image = ctx.images->get(set.image_id);
  std::vector<double> scores;
  scores.reserve(set.candidates.size());
  for (const auto& c : set.candidates) {
    const Vector sentence = ctx.texts->get(c.caption_id);
    if (metric == SelectionMetric::kClip) {
      scores.push_back(clip_score(image, sentence, cfg));
    } else {
      scores.push_back(score_caption(ctx, c.caption_id, image, sentence, c.text, cfg).f_score);
    }
  }
  return scores;
}

std::size_t select_caption(const CandidateSet& set, const ScoringContext& ctx,
                           const MetricConfig& cfg, SelectionMetric metric) {
  validate(set);
  return argmax_lowest(candidate_scores(set, ctx, cfg, metric));
}

std::size_t EvalResult::correct_count() const {
  return static_cast<std::size_t>(
      std::count_if(choices.begin(), choices.end(), [](const ItemChoice& c) { return c.correct; }));
}

namespace {

template <typename ChooseFn>
EvalResult run_selection(std::span<const CandidateSet> sets, std::string dataset_name,
                         std::size_t jobs, ChooseFn&& choose) {
  if (sets.empty()) throw Error(ErrorCode::kInvalidArgument, "no candidate sets to evaluate");
  for (const auto& s : sets) validate(s);
  EvalResult result;
  result.dataset_name = std::move(dataset_name);
  result.choices.resize(sets.size());
  detail::parallel_for(sets.size(), jobs, [&](std::size_t i) {
    const std::size_t chosen = choose(i);
    result.choices[i] = {sets[i].image_id, chosen, chosen == sets[i].gold_index};
  });
  result.accuracy_pct = 100.0 * static_cast<double>(result.correct_count()) /
                        static_cast<double>(sets.size());
  return result;
}

}  // namespace

EvalResult evaluate(std::span<const CandidateSet> sets, const ScoringContext& ctx,
                    const MetricConfig& cfg, SelectionMetric metric, std::string dataset_name,
                    std::size_t jobs) {
  validate(cfg);
  return run_selection(sets, std::move(dataset_name), jobs, [&](std::size_t i) {
    return argmax_lowest(candidate_scores(sets[i], ctx, cfg, metric));
  });
}

EvalResult noun_replacement_ablation(std::span<const CandidateSet> sets,
                                     const ScoringContext& ctx, const EmbeddingStore& pool,
                                     double rate, std::uint64_t seed, const MetricConfig& cfg,
                                     std::string dataset_name, std::size_t jobs) {
  validate(cfg);
  if (pool.empty()) throw Error(ErrorCode::kEmptyPool, "noun pool has no vectors");
  if (!(rate >= 0.0 && rate <= 1.0)) {
    throw Error(ErrorCode::kRateOutOfRange, "replacement rate must be in [0, 1]");
  }
  if (pool.dim() != ctx.images->dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "noun pool dim " + std::to_string(pool.dim()) +
                                                   " vs image dim " +
                                                   std::to_string(ctx.images->dim()));
  }
  auto result = run_selection(sets, std::move(dataset_name), jobs, [&](std::size_t i) {
    const CandidateSet& set = sets[i];
    Rng rng = Rng::derive(seed, i);
    const Vector image = ctx.images->get(set.image_id);
    std::vector<double> scores;
    scores.reserve(set.candidates.size());
    for (const auto& c : set.candidates) {
      const Vector sentence = ctx.texts->get(c.caption_id);
      auto resolved = resolve_caption_units(ctx, c.text, cfg.variant);
      std::vector<Vector> units;
      units.reserve(resolved.vectors.size());
      for (const auto& v : resolved.vectors) {
        if (rng.uniform() < rate) {
          units.push_back(pool.vector_at(static_cast<std::size_t>(rng.below(pool.size()))));
        } else {
          units.push_back(v);
        }
      }
      scores.push_back(f_clip_score(image, sentence, units, cfg));
    }
    return argmax_lowest(scores);
  });
  result.seed = seed;
  return result;
}

DriftReport compare_stores(const EmbeddingStore& store_a, const EmbeddingStore& store_b,
                           std::span<const std::string> ids_a,
                           std::span<const std::string> ids_b, std::size_t bins) {
  if (bins == 0) throw Error(ErrorCode::kInvalidArgument, "bins must be positive");
  if (store_a.dim() != store_b.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "store dims " + std::to_string(store_a.dim()) +
                                                   " vs " + std::to_string(store_b.dim()));
  }
  DriftReport report;
  auto drift = [&](const std::string& id) {
    try {
      return cosine(store_a.get(id), store_b.get(id));
    } catch (const UnknownIdError& e) {
      throw UnknownIdError(e.id(), "compare-stores");
    }
  };
  for (const auto& id : ids_a) report.cosines_a.push_back(drift(id));
  for (const auto& id : ids_b) report.cosines_b.push_back(drift(id));
  report.group_a = summarize(report.cosines_a);
  report.group_b = summarize(report.cosines_b);
  report.welch = welch_t_test(report.cosines_a, report.cosines_b);

  double lo = 0.0, hi = 0.0;
  bool first = true;
  for (const auto* group : {&report.cosines_a, &report.cosines_b}) {
    for (double c : *group) {
      lo = first ? c : std::min(lo, c);
      hi = first ? c : std::max(hi, c);
      first = false;
    }
  }
  double width = (hi - lo) / static_cast<double>(bins);
  if (!(width > 0.0)) width = 1.0 / static_cast<double>(bins);
  report.bin_width = width;
  report.histogram.resize(bins);
  for (std::size_t k = 0; k < bins; ++k) report.histogram[k].lower = lo + width * static_cast<double>(k);
  auto bin_of = [&](double c) {
    auto k = static_cast<std::size_t>(std::floor((c - lo) / width));
    return std::min(k, bins - 1);
  };
  for (double c : report.cosines_a) ++report.histogram[bin_of(c)].count_a;
  for (double c : report.cosines_b) ++report.histogram[bin_of(c)].count_b;
  return report;
}

std::string format_eval_result(const EvalResult& r) {
  std::string out = "{\"kind\":\"eval\",\"dataset\":" + detail::quote(r.dataset_name) +
                    ",\"items\":" + std::to_string(r.choices.size()) +
                    ",\"correct\":" + std::to_string(r.correct_count()) +
                    ",\"accuracyPct\":" + detail::format_real(r.accuracy_pct) +
                    ",\"seed\":" + (r.seed ? std::to_string(*r.seed) : "null") + "}\n";
  for (const auto& c : r.choices) {
    out += "{\"imageId\":" + detail::quote(c.image_id) +
           ",\"chosenIndex\":" + std::to_string(c.chosen_index) +
           ",\"correct\":" + (c.correct ? "true" : "false") + "}\n";
  }
  return out;
}

std::string format_drift_report(const DriftReport& r) {
  auto group = [](const GroupSummary& g) {
    return "{\"mean\":" + detail::format_real(g.mean) +
           ",\"stddev\":" + detail::format_real(g.stddev) + ",\"n\":" + std::to_string(g.n) + "}";
  };
  std::string out = "{\"kind\":\"drift\",\"groupA\":" + group(r.group_a) +
                    ",\"groupB\":" + group(r.group_b) +
                    ",\"welchT\":" + detail::format_real(r.welch.t) +
                    ",\"df\":" + detail::format_real(r.welch.df) +
                    ",\"pValue\":" + detail::format_real(r.welch.p_value) +
                    ",\"zeroVariance\":" + (r.welch.zero_variance ? "true" : "false") +
                    ",\"bins\":" + std::to_string(r.histogram.size()) +
                    ",\"binWidth\":" + detail::format_real(r.bin_width) + "}\n";
  for (const auto& b : r.histogram) {
    out += "{\"binLowerEdge\":" + detail::format_real(b.lower) +
           ",\"countA\":" + std::to_string(b.count_a) +
           ",\"countB\":" + std::to_string(b.count_b) + "}\n";
  }
  return out;
}

std::string format_histogram_table(const DriftReport& r) {
  std::string out = "bin_lower\tcount_a\tcount_b\n";
  for (const auto& b : r.histogram) {
    out += detail::format_real(b.lower) + "\t" + std::to_string(b.count_a) + "\t" +
           std::to_string(b.count_b) + "\n";
  }
  return out;
}

}  // namespace fgrain

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

#include "fgrain/curation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "fgrain/error.hpp"
#include "fgrain/random.hpp"
#include "text_io.hpp"

namespace fgrain {

std::string_view filter_metric_name(FilterMetric metric) {
  switch (metric) {
    case FilterMetric::kClip: return "clip";
    case FilterMetric::kFClip: return "fclip";
    case FilterMetric::kRandom: return "random";
  }
  return "fclip";
}

std::optional<FilterMetric> parse_filter_metric(std::string_view name) {
  if (name == "clip") return FilterMetric::kClip;
  if (name == "fclip") return FilterMetric::kFClip;
  if (name == "random") return FilterMetric::kRandom;
  return std::nullopt;
}

std::vector<ScoredId> scores_for(std::span<const ScoreRecord> records, FilterMetric metric) {
  if (metric == FilterMetric::kRandom) {
    throw Error(ErrorCode::kInvalidArgument, "random is not a score column");
  }
  std::vector<ScoredId> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    out.push_back({r.pair_id, metric == FilterMetric::kClip ? r.sentence_score : r.f_score});
  }
  return out;
}

std::vector<RankedId> rank_scores(std::span<const ScoredId> scores) {
  if (scores.empty()) throw Error(ErrorCode::kInvalidArgument, "nothing to rank");
  std::unordered_set<std::string_view> seen;
  for (const auto& s : scores) {
    if (!std::isfinite(s.score)) {
      throw Error(ErrorCode::kNonFiniteScore, "pair '" + s.pair_id + "'");
    }
    if (!seen.insert(s.pair_id).second) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate pairId '" + s.pair_id + "'");
    }
  }
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a].score != scores[b].score) return scores[a].score < scores[b].score;
    return scores[a].pair_id < scores[b].pair_id;
  });
  std::vector<RankedId> out(scores.size());
  for (std::size_t r = 0; r < order.size(); ++r) {
    const auto& s = scores[order[r]];
    out[order[r]] = {s.pair_id, s.score, r + 1};
  }
  return out;
}

std::vector<RankedId> rank_scores(std::span<const ScoreRecord> records, FilterMetric metric) {
  return rank_scores(scores_for(records, metric));
}

std::size_t removal_count(double rate_pct, std::size_t total) {
  // Multiply before dividing so integral rates never round down by one ulp.
  return static_cast<std::size_t>(std::floor(rate_pct * static_cast<double>(total) / 100.0));
}

FilterManifest filter_bottom(std::span<const ScoreRecord> records, FilterMetric metric,
                             double rate_pct, std::optional<std::uint64_t> seed) {
  if (!(rate_pct > 0.0 && rate_pct < 100.0)) {
    throw Error(ErrorCode::kRateOutOfRange, "filtering rate must be in (0, 100)");
  }
  if (records.empty()) throw Error(ErrorCode::kInvalidArgument, "no records to filter");

  std::vector<ScoredId> scored;
  if (metric == FilterMetric::kRandom) {
    if (!seed) throw Error(ErrorCode::kInvalidArgument, "random filtering requires a seed");
    // Keys are drawn in pairId order so the sample ignores input order.
    std::vector<std::size_t> by_id(records.size());
    std::iota(by_id.begin(), by_id.end(), std::size_t{0});
    std::sort(by_id.begin(), by_id.end(), [&](std::size_t a, std::size_t b) {
      return records[a].pair_id < records[b].pair_id;
    });
    scored.resize(records.size());
    Rng rng(*seed);
    for (std::size_t i : by_id) scored[i] = {records[i].pair_id, rng.uniform()};
  } else {
    scored = scores_for(records, metric);
  }

  auto ranked = rank_scores(scored);
  std::sort(ranked.begin(), ranked.end(),
            [](const RankedId& a, const RankedId& b) { return a.rank < b.rank; });
  FilterManifest m;
  m.rate_pct = rate_pct;
  m.metric = metric;
  m.seed = metric == FilterMetric::kRandom ? seed : std::nullopt;
  m.total = records.size();
  const std::size_t k = removal_count(rate_pct, records.size());
  m.removed.assign(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(k));
  m.retained.assign(ranked.begin() + static_cast<std::ptrdiff_t>(k), ranked.end());
  return m;
}

namespace {

std::vector<std::string> population(const FilterManifest& m) {
  std::vector<std::string> ids;
  ids.reserve(m.removed.size() + m.retained.size());
  for (const auto& r : m.removed) ids.push_back(r.pair_id);
  for (const auto& r : m.retained) ids.push_back(r.pair_id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace

double overlap(const FilterManifest& a, const FilterManifest& b) {
  if (a.total != b.total || population(a) != population(b)) {
    throw Error(ErrorCode::kPopulationMismatch, "manifests cover different pairs");
  }
  if (a.rate_pct != b.rate_pct) {
    throw Error(ErrorCode::kRateMismatch, detail::format_real(a.rate_pct) + "% vs " +
                                              detail::format_real(b.rate_pct) + "%");
  }
  if (a.removed.empty()) return 1.0;
  std::unordered_set<std::string_view> removed_b;
  for (const auto& r : b.removed) removed_b.insert(r.pair_id);
  std::size_t shared = 0;
  for (const auto& r : a.removed) shared += removed_b.count(r.pair_id);
  return static_cast<double>(shared) / static_cast<double>(a.removed.size());
}

RankDiffReport rank_difference(std::span<const ScoredId> f_scores,
                               std::span<const ScoredId> c_scores, std::size_t k) {
  auto f_ranked = rank_scores(f_scores);
  auto c_ranked = rank_scores(c_scores);
  if (f_ranked.size() != c_ranked.size()) {
    throw Error(ErrorCode::kPopulationMismatch, "inputs differ in size");
  }
  std::unordered_map<std::string_view, std::size_t> c_rank;
  for (const auto& r : c_ranked) c_rank.emplace(r.pair_id, r.rank);

  RankDiffReport report;
  report.entries.reserve(f_ranked.size());
  for (const auto& r : f_ranked) {
    auto it = c_rank.find(r.pair_id);
    if (it == c_rank.end()) {
      throw Error(ErrorCode::kPopulationMismatch, "pair '" + r.pair_id + "' missing");
    }
    report.entries.push_back({r.pair_id, r.rank, it->second,
                              static_cast<long long>(r.rank) - static_cast<long long>(it->second)});
  }
  std::sort(report.entries.begin(), report.entries.end(),
            [](const RankDiffEntry& a, const RankDiffEntry& b) {
              if (a.diff != b.diff) return a.diff > b.diff;
              return a.pair_id < b.pair_id;
            });
  const std::size_t n = std::min(k, report.entries.size());
  report.top_k.assign(report.entries.begin(), report.entries.begin() + static_cast<std::ptrdiff_t>(n));
  report.bottom_k.assign(report.entries.rbegin(), report.entries.rbegin() + static_cast<std::ptrdiff_t>(n));
  return report;
}

RankDiffReport rank_difference(std::span<const ScoreRecord> f_records,
                               std::span<const ScoreRecord> c_records, std::size_t k) {
  return rank_difference(scores_for(f_records, FilterMetric::kFClip),
                         scores_for(c_records, FilterMetric::kClip), k);
}

std::string format_filter_manifest(const FilterManifest& m) {
  std::string out = "{\"kind\":\"filter-manifest\",\"ratePct\":" + detail::format_real(m.rate_pct) +
                    ",\"metric\":" + detail::quote(filter_metric_name(m.metric)) +
                    ",\"seed\":" + (m.seed ? std::to_string(*m.seed) : "null") +
                    ",\"total\":" + std::to_string(m.total) +
                    ",\"removed\":" + std::to_string(m.removed.size()) + "}\n";
  auto line = [&](const RankedId& r, const char* status) {
    out += "{\"pairId\":" + detail::quote(r.pair_id) + ",\"status\":\"" + status +
           "\",\"score\":" + detail::format_real(r.score) +
           ",\"rank\":" + std::to_string(r.rank) + "}\n";
  };
  for (const auto& r : m.removed) line(r, "removed");
  for (const auto& r : m.retained) line(r, "retained");
  return out;
}

FilterManifest parse_filter_manifest(std::string_view text) {
  constexpr std::string_view kWhat = "filter manifest";
  FilterManifest m;
  bool have_header = false;
  std::size_t declared_removed = 0;
  detail::for_each_record(text, kWhat, [&](const nlohmann::json& obj, std::size_t line) {
    if (!have_header) {
      if (obj.value("kind", "") != "filter-manifest") {
        throw Error(ErrorCode::kParse, "filter manifest: header line missing");
      }
      m.rate_pct = detail::real_field(obj, "ratePct", line, kWhat);
      auto metric = parse_filter_metric(detail::string_field(obj, "metric", line, kWhat));
      if (!metric) throw Error(ErrorCode::kParse, "filter manifest: unknown metric");
      m.metric = *metric;
      if (auto s = obj.find("seed"); s != obj.end() && !s->is_null()) {
        m.seed = s->get<std::uint64_t>();
      }
      m.total = static_cast<std::size_t>(detail::integer_field(obj, "total", line, kWhat));
      declared_removed = static_cast<std::size_t>(detail::integer_field(obj, "removed", line, kWhat));
      have_header = true;
      return;
    }
    RankedId r{detail::string_field(obj, "pairId", line, kWhat),
               detail::real_field(obj, "score", line, kWhat),
               static_cast<std::size_t>(detail::integer_field(obj, "rank", line, kWhat))};
    const auto status = detail::string_field(obj, "status", line, kWhat);
    if (status == "removed") {
      m.removed.push_back(std::move(r));
    } else if (status == "retained") {
      m.retained.push_back(std::move(r));
    } else {
      throw Error(ErrorCode::kParse, "filter manifest line " + std::to_string(line) +
                                         ": unknown status '" + status + "'");
    }
  });
  if (!have_header) throw Error(ErrorCode::kParse, "filter manifest: empty file");
  if (m.removed.size() != declared_removed || m.removed.size() + m.retained.size() != m.total) {
    throw Error(ErrorCode::kParse, "filter manifest: record counts disagree with header");
  }
  return m;
}

FilterManifest read_filter_manifest(const std::filesystem::path& path) {
  return parse_filter_manifest(detail::read_file(path));
}

std::string format_retained_ids(const FilterManifest& m) {
  std::string out;
  for (const auto& r : m.retained) out += r.pair_id + "\n";
  return out;
}

std::string format_rank_diff(const RankDiffReport& r) {
  std::string out = "{\"kind\":\"rank-diff\",\"total\":" + std::to_string(r.entries.size()) +
                    ",\"k\":" + std::to_string(r.top_k.size()) + "}\n";
  auto line = [&](const RankDiffEntry& e, const char* slice) {
    out += "{\"slice\":\"" + std::string(slice) + "\",\"pairId\":" + detail::quote(e.pair_id) +
           ",\"fRank\":" + std::to_string(e.f_rank) + ",\"cRank\":" + std::to_string(e.c_rank) +
           ",\"diff\":" + std::to_string(e.diff) + "}\n";
  };
  for (const auto& e : r.top_k) line(e, "top");
  for (const auto& e : r.bottom_k) line(e, "bottom");
  for (const auto& e : r.entries) line(e, "all");
  return out;
}

}  // namespace fgrain

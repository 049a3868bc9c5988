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

#include "fgrain/fgrain.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <memory>
#include <new>
#include <string>

#include "fgrain/benchmark.hpp"
#include "fgrain/curation.hpp"
#include "fgrain/error.hpp"
#include "fgrain/metric.hpp"
#include "fgrain/provider.hpp"
#include "fgrain/scoring.hpp"
#include "fgrain/store.hpp"
#include "fgrain/tagger.hpp"
#include "text_io.hpp"

struct fg_text {
  std::string value;
};

struct fg_store {
  fgrain::EmbeddingStore store;
};

struct fg_tagger {
  fgrain::TaggerModel model;
};

struct fg_provider {
  std::unique_ptr<fgrain::EmbeddingProvider> provider;
};

struct fg_scorer {
  fgrain::ScoringContext ctx;
};

namespace {

thread_local std::string g_last_error;

fg_status fail(fg_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs fn, translating exceptions into status codes.
template <typename Fn>
fg_status guarded(Fn&& fn) {
  g_last_error.clear();
  try {
    fn();
    return FG_OK;
  } catch (const fgrain::Error& e) {
    return fail(static_cast<fg_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(FG_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(FG_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(FG_ERR_INTERNAL, "unknown exception");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw fgrain::Error(fgrain::ErrorCode::kInvalidArgument, what);
}

fg_text* make_text(std::string value) { return new fg_text{std::move(value)}; }

fgrain::UnitKind to_kind(fg_unit_kind kind) {
  switch (kind) {
    case FG_UNITS_NOUN: return fgrain::UnitKind::kNoun;
    case FG_UNITS_NOUN_PHRASE: return fgrain::UnitKind::kNounPhrase;
    case FG_UNITS_VERB: return fgrain::UnitKind::kVerb;
  }
  throw fgrain::Error(fgrain::ErrorCode::kInvalidArgument, "unknown unit kind");
}

fgrain::MetricConfig to_config(const fg_metric_config* cfg) {
  fgrain::MetricConfig out;
  if (cfg != nullptr) {
    out.w = cfg->w;
    out.clamp_negative = cfg->clamp_negative != 0;
    out.variant = to_kind(cfg->variant);
  }
  fgrain::validate(out);
  return out;
}

std::vector<std::string> read_id_list(const char* path) {
  std::vector<std::string> ids;
  const std::string text = fgrain::detail::read_file(path);
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line[0] != '#') ids.push_back(std::move(line));
    pos = end + 1;
  }
  return ids;
}

}  // namespace

extern "C" {

const char* fg_version(void) { return "1.0.0"; }

const char* fg_status_name(fg_status status) {
  static thread_local std::string name;
  name = std::string(fgrain::error_code_name(static_cast<fgrain::ErrorCode>(status)));
  return name.c_str();
}

const char* fg_last_error(void) { return g_last_error.c_str(); }

const char* fg_text_data(const fg_text* text) { return text ? text->value.c_str() : ""; }
size_t fg_text_size(const fg_text* text) { return text ? text->value.size() : 0; }
void fg_text_free(fg_text* text) { delete text; }

// ---- stores

fg_status fg_store_open(const char* path, fg_store** out) {
  return guarded([&] {
    require(path && out, "fg_store_open: null argument");
    *out = new fg_store{fgrain::EmbeddingStore::open(path)};
  });
}

void fg_store_free(fg_store* store) { delete store; }
uint32_t fg_store_dim(const fg_store* store) { return store ? store->store.dim() : 0; }
uint64_t fg_store_count(const fg_store* store) { return store ? store->store.size() : 0; }
int fg_store_normalized(const fg_store* store) {
  return store && store->store.normalized() ? 1 : 0;
}

fg_status fg_store_id_at(const fg_store* store, uint64_t index, const char** id) {
  return guarded([&] {
    require(store && id, "fg_store_id_at: null argument");
    if (index >= store->store.size()) {
      throw fgrain::Error(fgrain::ErrorCode::kInvalidArgument, "index out of range");
    }
    *id = store->store.id_at(index).c_str();
  });
}

fg_status fg_store_get(const fg_store* store, const char* id, float* out, size_t capacity) {
  return guarded([&] {
    require(store && id && out, "fg_store_get: null argument");
    auto v = store->store.get(id);
    require(capacity >= v.size(), "fg_store_get: buffer too small");
    std::memcpy(out, v.data(), v.size() * sizeof(float));
  });
}

fg_status fg_store_write(const char* path, const char* const* ids, const float* vectors,
                         uint64_t count, uint32_t dim, int normalized) {
  return guarded([&] {
    require(path != nullptr, "fg_store_write: null path");
    require(count == 0 || (ids && vectors), "fg_store_write: null data");
    std::vector<fgrain::StoreEntry> entries;
    entries.reserve(count);
    for (uint64_t i = 0; i < count; ++i) {
      require(ids[i] != nullptr, "fg_store_write: null id");
      entries.push_back({ids[i], std::vector<float>(vectors + i * dim, vectors + (i + 1) * dim)});
    }
    fgrain::write_store(path, entries, normalized != 0, dim);
  });
}

// ---- tagger

fg_status fg_tagger_load(const char* path, fg_tagger** out) {
  return guarded([&] {
    require(path && out, "fg_tagger_load: null argument");
    *out = new fg_tagger{fgrain::TaggerModel::load(path)};
  });
}

void fg_tagger_free(fg_tagger* tagger) { delete tagger; }

const char* fg_tagger_version(const fg_tagger* tagger) {
  return tagger ? tagger->model.version().c_str() : "";
}

fg_status fg_tagger_save(const fg_tagger* tagger, const char* path) {
  return guarded([&] {
    require(tagger && path, "fg_tagger_save: null argument");
    tagger->model.save(path);
  });
}

fg_status fg_tagger_train(const char* corpus_path, int epochs, uint64_t seed,
                          size_t hold_out_every, fg_tagger** out, double* train_accuracy,
                          double* held_out_accuracy) {
  return guarded([&] {
    require(corpus_path && out, "fg_tagger_train: null argument");
    auto corpus = fgrain::read_tagged_corpus(corpus_path);
    auto result = fgrain::train_tagger(corpus, {epochs, seed, hold_out_every});
    if (train_accuracy) *train_accuracy = result.train_accuracy;
    if (held_out_accuracy) {
      *held_out_accuracy =
          result.held_out_accuracy.value_or(std::numeric_limits<double>::quiet_NaN());
    }
    *out = new fg_tagger{std::move(result.model)};
  });
}

fg_status fg_tag_text(const fg_tagger* tagger, const char* text, fg_text** out) {
  return guarded([&] {
    require(text && out, "fg_tag_text: null argument");
    if (tagger == nullptr) {
      throw fgrain::Error(fgrain::ErrorCode::kModelNotLoaded, "no tagger model");
    }
    std::string lines;
    for (const auto& t : fgrain::tag(tagger->model, fgrain::tokenize(text))) {
      lines += t.surface + "\t" + std::string(fgrain::tag_name(*t.tag)) + "\n";
    }
    *out = make_text(std::move(lines));
  });
}

fg_status fg_extract_units(const fg_tagger* tagger, const char* text, fg_unit_kind kind,
                           fg_text** out) {
  return guarded([&] {
    require(text && out, "fg_extract_units: null argument");
    if (tagger == nullptr) {
      throw fgrain::Error(fgrain::ErrorCode::kModelNotLoaded, "no tagger model");
    }
    std::string lines;
    for (const auto& u : fgrain::extract_units(tagger->model, text, to_kind(kind))) {
      lines += u.surface + "\t" + std::to_string(u.first_token) + "\t" +
               std::to_string(u.last_token) + "\n";
    }
    *out = make_text(std::move(lines));
  });
}

// ---- provider

void fg_provider_config_init(fg_provider_config* cfg) {
  if (cfg == nullptr) return;
  const fgrain::ProviderConfig defaults;
  cfg->endpoint_url = nullptr;
  cfg->timeout_ms = defaults.timeout_ms;
  cfg->max_batch = defaults.max_batch;
  cfg->cache_path = nullptr;
  cfg->retries = defaults.retries;
  cfg->bearer_token = nullptr;
  cfg->backoff_ms = defaults.backoff_ms;
}

fg_status fg_provider_create(const fg_provider_config* cfg, fg_provider** out) {
  return guarded([&] {
    require(cfg && out, "fg_provider_create: null argument");
    fgrain::ProviderConfig pc;
    pc.endpoint_url = cfg->endpoint_url ? cfg->endpoint_url : "";
    pc.timeout_ms = cfg->timeout_ms;
    pc.max_batch = cfg->max_batch;
    if (cfg->cache_path) pc.cache_path = cfg->cache_path;
    pc.retries = cfg->retries;
    if (cfg->bearer_token) pc.bearer_token = cfg->bearer_token;
    pc.backoff_ms = cfg->backoff_ms;
    *out = new fg_provider{std::make_unique<fgrain::EmbeddingProvider>(std::move(pc))};
  });
}

void fg_provider_free(fg_provider* provider) { delete provider; }

fg_status fg_provider_embed_text(fg_provider* provider, const char* model_tag,
                                 const char* const* payloads, size_t n, float* out,
                                 size_t capacity, uint32_t* dim) {
  return guarded([&] {
    require(provider && payloads && out && dim, "fg_provider_embed_text: null argument");
    fgrain::EmbeddingRequest req{fgrain::PayloadKind::kText, {}, model_tag ? model_tag : "default"};
    for (size_t i = 0; i < n; ++i) req.payloads.emplace_back(payloads[i]);
    auto vectors = provider->provider->embed(req);
    const size_t d = vectors.front().size();
    require(capacity >= n * d, "fg_provider_embed_text: buffer too small");
    for (size_t i = 0; i < n; ++i) std::memcpy(out + i * d, vectors[i].data(), d * sizeof(float));
    *dim = static_cast<uint32_t>(d);
  });
}

size_t fg_provider_network_calls(const fg_provider* provider) {
  return provider ? provider->provider->network_calls() : 0;
}

// ---- kernels

void fg_metric_config_init(fg_metric_config* cfg) {
  if (cfg == nullptr) return;
  cfg->w = 2.5;
  cfg->clamp_negative = 1;
  cfg->variant = FG_UNITS_NOUN;
}

fg_status fg_cosine(const float* a, const float* b, size_t dim, double* out) {
  return guarded([&] {
    require(a && b && out, "fg_cosine: null argument");
    *out = fgrain::cosine({a, dim}, {b, dim});
  });
}

fg_status fg_clip_score(const float* image, const float* text, size_t dim,
                        const fg_metric_config* cfg, double* out) {
  return guarded([&] {
    require(image && text && out, "fg_clip_score: null argument");
    *out = fgrain::clip_score({image, dim}, {text, dim}, to_config(cfg));
  });
}

fg_status fg_f_clip_score(const float* image, const float* sentence, const float* units,
                          size_t n_units, size_t dim, const fg_metric_config* cfg, double* out) {
  return guarded([&] {
    require(image && sentence && out && (n_units == 0 || units), "fg_f_clip_score: null argument");
    std::vector<fgrain::Vector> unit_views;
    unit_views.reserve(n_units);
    for (size_t i = 0; i < n_units; ++i) unit_views.emplace_back(units + i * dim, dim);
    *out = fgrain::f_clip_score({image, dim}, {sentence, dim}, unit_views, to_config(cfg));
  });
}

fg_status fg_f_clip_penalty(const double* f_scores, size_t n, double alpha, size_t batch_size,
                            double* out) {
  return guarded([&] {
    require((f_scores || n == 0) && out, "fg_f_clip_penalty: null argument");
    *out = fgrain::f_clip_penalty(std::span<const double>(f_scores, n), {alpha, batch_size});
  });
}

// ---- scoring and benchmarks

fg_status fg_scorer_create(const fg_store* images, const fg_store* texts, const fg_store* units,
                           const fg_tagger* tagger, fg_provider* provider, const char* model_tag,
                           fg_scorer** out) {
  return guarded([&] {
    require(images && texts && out, "fg_scorer_create: image and text stores are required");
    auto scorer = std::make_unique<fg_scorer>();
    scorer->ctx.images = &images->store;
    scorer->ctx.texts = &texts->store;
    scorer->ctx.units = units ? &units->store : nullptr;
    scorer->ctx.tagger = tagger ? &tagger->model : nullptr;
    scorer->ctx.provider = provider ? provider->provider.get() : nullptr;
    if (model_tag) scorer->ctx.model_tag = model_tag;
    *out = scorer.release();
  });
}

void fg_scorer_free(fg_scorer* scorer) { delete scorer; }

fg_status fg_score_pairs(const fg_scorer* scorer, const char* manifest_path,
                         const fg_metric_config* cfg, size_t jobs, fg_text** out) {
  return guarded([&] {
    require(scorer && manifest_path && out, "fg_score_pairs: null argument");
    auto manifest = fgrain::read_pair_manifest(manifest_path);
    auto records = fgrain::score_pairs(manifest, scorer->ctx, to_config(cfg), jobs);
    *out = make_text(fgrain::format_score_records(records));
  });
}

fg_status fg_penalty_report(const fg_scorer* scorer, const char* manifest_path,
                            const fg_metric_config* cfg, double alpha, size_t batch_size,
                            size_t jobs, fg_text** out) {
  return guarded([&] {
    require(scorer && manifest_path && out, "fg_penalty_report: null argument");
    auto metric = to_config(cfg);
    metric.w = 1.0;
    auto manifest = fgrain::read_pair_manifest(manifest_path);
    auto records = fgrain::score_pairs(manifest, scorer->ctx, metric, jobs);
    auto batches = fgrain::batched_penalties(records, {alpha, batch_size});
    double sum = 0.0;
    for (const auto& b : batches) sum += b.penalty;
    const double mean = batches.empty() ? 0.0 : sum / static_cast<double>(batches.size());
    std::string report = "{\"kind\":\"penalty\",\"alpha\":" + fgrain::detail::format_real(alpha) +
                         ",\"batchSize\":" + std::to_string(batch_size) +
                         ",\"records\":" + std::to_string(records.size()) +
                         ",\"batches\":" + std::to_string(batches.size()) +
                         ",\"meanPenalty\":" + fgrain::detail::format_real(mean) + "}\n";
    for (std::size_t i = 0; i < batches.size(); ++i) {
      report += "{\"batch\":" + std::to_string(i) + ",\"first\":" +
                std::to_string(batches[i].first) + ",\"size\":" + std::to_string(batches[i].size) +
                ",\"penalty\":" + fgrain::detail::format_real(batches[i].penalty) + "}\n";
    }
    *out = make_text(std::move(report));
  });
}

fg_status fg_evaluate(const fg_scorer* scorer, const char* sets_path, const char* dataset_name,
                      const fg_metric_config* cfg, fg_selection_metric metric, size_t jobs,
                      fg_text** report, double* accuracy_pct) {
  return guarded([&] {
    require(scorer && sets_path, "fg_evaluate: null argument");
    auto sets = fgrain::read_candidate_sets(sets_path);
    auto result = fgrain::evaluate(
        sets, scorer->ctx, to_config(cfg),
        metric == FG_SELECT_CLIP ? fgrain::SelectionMetric::kClip : fgrain::SelectionMetric::kFClip,
        dataset_name ? dataset_name : "", jobs);
    if (accuracy_pct) *accuracy_pct = result.accuracy_pct;
    if (report) *report = make_text(fgrain::format_eval_result(result));
  });
}

fg_status fg_ablate(const fg_scorer* scorer, const char* sets_path, const char* dataset_name,
                    const fg_store* pool, double rate, uint64_t seed, const fg_metric_config* cfg,
                    size_t jobs, fg_text** report, double* accuracy_pct) {
  return guarded([&] {
    require(scorer && sets_path && pool, "fg_ablate: null argument");
    auto sets = fgrain::read_candidate_sets(sets_path);
    auto result = fgrain::noun_replacement_ablation(sets, scorer->ctx, pool->store, rate, seed,
                                                    to_config(cfg),
                                                    dataset_name ? dataset_name : "", jobs);
    if (accuracy_pct) *accuracy_pct = result.accuracy_pct;
    if (report) *report = make_text(fgrain::format_eval_result(result));
  });
}

fg_status fg_compare_stores(const fg_store* a, const fg_store* b, const char* ids_a_path,
                            const char* ids_b_path, size_t bins, fg_text** report,
                            fg_text** histogram) {
  return guarded([&] {
    require(a && b && ids_a_path && ids_b_path && report, "fg_compare_stores: null argument");
    auto ids_a = read_id_list(ids_a_path);
    auto ids_b = read_id_list(ids_b_path);
    auto drift = fgrain::compare_stores(a->store, b->store, ids_a, ids_b, bins);
    *report = make_text(fgrain::format_drift_report(drift));
    if (histogram) *histogram = make_text(fgrain::format_histogram_table(drift));
  });
}

// ---- curation

fg_status fg_filter(const char* scores_path, fg_filter_metric metric, double rate_pct,
                    const uint64_t* seed, fg_text** manifest, fg_text** retained_ids) {
  return guarded([&] {
    require(scores_path && manifest, "fg_filter: null argument");
    fgrain::FilterMetric m = metric == FG_FILTER_CLIP    ? fgrain::FilterMetric::kClip
                             : metric == FG_FILTER_FCLIP ? fgrain::FilterMetric::kFClip
                                                         : fgrain::FilterMetric::kRandom;
    require(metric == FG_FILTER_CLIP || metric == FG_FILTER_FCLIP || metric == FG_FILTER_RANDOM,
            "fg_filter: unknown metric");
    auto records = fgrain::read_score_records(scores_path);
    std::optional<std::uint64_t> s;
    if (seed) s = *seed;
    auto result = fgrain::filter_bottom(records, m, rate_pct, s);
    *manifest = make_text(fgrain::format_filter_manifest(result));
    if (retained_ids) *retained_ids = make_text(fgrain::format_retained_ids(result));
  });
}

fg_status fg_overlap(const char* manifest_a_path, const char* manifest_b_path, double* out) {
  return guarded([&] {
    require(manifest_a_path && manifest_b_path && out, "fg_overlap: null argument");
    *out = fgrain::overlap(fgrain::read_filter_manifest(manifest_a_path),
                           fgrain::read_filter_manifest(manifest_b_path));
  });
}

fg_status fg_rank_difference(const char* f_scores_path, const char* c_scores_path, size_t k,
                             fg_text** out) {
  return guarded([&] {
    require(f_scores_path && c_scores_path && out, "fg_rank_difference: null argument");
    auto f = fgrain::read_score_records(f_scores_path);
    auto c = fgrain::read_score_records(c_scores_path);
    *out = make_text(fgrain::format_rank_diff(fgrain::rank_difference(f, c, k)));
  });
}

}  // extern "C"

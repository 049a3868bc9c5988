/*
 * Copyright 2026 The fgrain Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to libfgrain: embedding stores, the caption tagger, the
 * CLIPScore / F-CLIPScore kernels, caption-selection benchmarks and
 * score-based curation.
 *
 * Conventions:
 *  - Every fallible call returns fg_status. On failure a message describing
 *    the error is available from fg_last_error() on the calling thread until
 *    the next libfgrain call on that thread.
 *  - Objects are opaque handles released with their *_free function; free
 *    functions accept NULL.
 *  - Text results are returned as fg_text handles owned by the caller.
 *  - Handles are safe for concurrent read-only use. An fg_scorer borrows the
 *    stores, tagger and provider it was created from; they must outlive it.
 */

#ifndef FGRAIN_FGRAIN_H_
#define FGRAIN_FGRAIN_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(FGRAIN_BUILDING_LIBRARY)
#    define FG_API __declspec(dllexport)
#  else
#    define FG_API __declspec(dllimport)
#  endif
#else
#  define FG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fg_status {
  FG_OK = 0,
  FG_ERR_MALFORMED_HEADER = 1,
  FG_ERR_DIMENSION_MISMATCH = 2,
  FG_ERR_DUPLICATE_ID = 3,
  FG_ERR_INVARIANT_VIOLATION = 4,
  FG_ERR_IO = 5,
  FG_ERR_UNKNOWN_ID = 6,
  FG_ERR_ZERO_VECTOR = 7,
  FG_ERR_MODEL_NOT_LOADED = 8,
  FG_ERR_EMPTY_CORPUS = 9,
  FG_ERR_UNKNOWN_TAG_IN_CORPUS = 10,
  FG_ERR_BATCH_SIZE_MISMATCH = 11,
  FG_ERR_EMPTY_POOL = 12,
  FG_ERR_RATE_OUT_OF_RANGE = 13,
  FG_ERR_NON_FINITE_SCORE = 14,
  FG_ERR_POPULATION_MISMATCH = 15,
  FG_ERR_RATE_MISMATCH = 16,
  FG_ERR_TIMEOUT = 17,
  FG_ERR_REMOTE = 18,
  FG_ERR_DIMENSION_INCONSISTENT = 19,
  FG_ERR_CACHE_CORRUPT = 20,
  FG_ERR_PARSE = 21,
  FG_ERR_INVALID_ARGUMENT = 22,
  FG_ERR_INSUFFICIENT_DATA = 23,
  FG_ERR_INTERNAL = 24
} fg_status;

typedef enum fg_unit_kind {
  FG_UNITS_NOUN = 0,
  FG_UNITS_NOUN_PHRASE = 1,
  FG_UNITS_VERB = 2
} fg_unit_kind;

typedef enum fg_selection_metric {
  FG_SELECT_CLIP = 0,
  FG_SELECT_FCLIP = 1
} fg_selection_metric;

typedef enum fg_filter_metric {
  FG_FILTER_CLIP = 0,
  FG_FILTER_FCLIP = 1,
  FG_FILTER_RANDOM = 2
} fg_filter_metric;

FG_API const char* fg_version(void);
FG_API const char* fg_status_name(fg_status status);
FG_API const char* fg_last_error(void);

/* ---- owned text ------------------------------------------------------- */

typedef struct fg_text fg_text;

FG_API const char* fg_text_data(const fg_text* text);
FG_API size_t fg_text_size(const fg_text* text);
FG_API void fg_text_free(fg_text* text);

/* ---- embedding stores ------------------------------------------------- */

typedef struct fg_store fg_store;

FG_API fg_status fg_store_open(const char* path, fg_store** out);
FG_API void fg_store_free(fg_store* store);
FG_API uint32_t fg_store_dim(const fg_store* store);
FG_API uint64_t fg_store_count(const fg_store* store);
FG_API int fg_store_normalized(const fg_store* store);
/* The returned id lives as long as the store. */
FG_API fg_status fg_store_id_at(const fg_store* store, uint64_t index, const char** id);
/* Copies the vector of `id` into out[0..dim). capacity must be >= dim. */
FG_API fg_status fg_store_get(const fg_store* store, const char* id, float* out,
                              size_t capacity);
/* vectors is row-major count x dim. */
FG_API fg_status fg_store_write(const char* path, const char* const* ids, const float* vectors,
                                uint64_t count, uint32_t dim, int normalized);

/* ---- tagger ----------------------------------------------------------- */

typedef struct fg_tagger fg_tagger;

FG_API fg_status fg_tagger_load(const char* path, fg_tagger** out);
FG_API void fg_tagger_free(fg_tagger* tagger);
FG_API const char* fg_tagger_version(const fg_tagger* tagger);
FG_API fg_status fg_tagger_save(const fg_tagger* tagger, const char* path);
/* held_out_accuracy is NaN when hold_out_every is 0. Either may be NULL. */
FG_API fg_status fg_tagger_train(const char* corpus_path, int epochs, uint64_t seed,
                                 size_t hold_out_every, fg_tagger** out,
                                 double* train_accuracy, double* held_out_accuracy);
/* One "surface<TAB>TAG" line per token. */
FG_API fg_status fg_tag_text(const fg_tagger* tagger, const char* text, fg_text** out);
/* One "surface<TAB>firstToken<TAB>lastToken" line per unit. */
FG_API fg_status fg_extract_units(const fg_tagger* tagger, const char* text, fg_unit_kind kind,
                                  fg_text** out);

/* ---- embedding provider ----------------------------------------------- */

typedef struct fg_provider_config {
  const char* endpoint_url; /* FGRAIN_EMBED_URL overrides */
  int timeout_ms;
  size_t max_batch;
  const char* cache_path; /* NULL disables the cache */
  int retries;
  const char* bearer_token; /* NULL sends no Authorization header */
  int backoff_ms;
} fg_provider_config;

FG_API void fg_provider_config_init(fg_provider_config* cfg);

typedef struct fg_provider fg_provider;

FG_API fg_status fg_provider_create(const fg_provider_config* cfg, fg_provider** out);
FG_API void fg_provider_free(fg_provider* provider);
/* Writes n x dim floats row-major into out; *dim receives the dimension. */
FG_API fg_status fg_provider_embed_text(fg_provider* provider, const char* model_tag,
                                        const char* const* payloads, size_t n, float* out,
                                        size_t capacity, uint32_t* dim);
FG_API size_t fg_provider_network_calls(const fg_provider* provider);

/* ---- metric kernels --------------------------------------------------- */

typedef struct fg_metric_config {
  double w;
  int clamp_negative;
  fg_unit_kind variant;
} fg_metric_config;

/* w = 2.5, clamp_negative = 1, variant = nouns */
FG_API void fg_metric_config_init(fg_metric_config* cfg);

FG_API fg_status fg_cosine(const float* a, const float* b, size_t dim, double* out);
FG_API fg_status fg_clip_score(const float* image, const float* text, size_t dim,
                               const fg_metric_config* cfg, double* out);
/* units is row-major n_units x dim and may be NULL when n_units is 0. */
FG_API fg_status fg_f_clip_score(const float* image, const float* sentence, const float* units,
                                 size_t n_units, size_t dim, const fg_metric_config* cfg,
                                 double* out);
FG_API fg_status fg_f_clip_penalty(const double* f_scores, size_t n, double alpha,
                                   size_t batch_size, double* out);

/* ---- corpus scoring and benchmarks ------------------------------------ */

typedef struct fg_scorer fg_scorer;

/* units, tagger and provider may be NULL. Unit surfaces are looked up in
 * `units` when given, else in `texts`. */
FG_API fg_status fg_scorer_create(const fg_store* images, const fg_store* texts,
                                  const fg_store* units, const fg_tagger* tagger,
                                  fg_provider* provider, const char* model_tag,
                                  fg_scorer** out);
FG_API void fg_scorer_free(fg_scorer* scorer);

/* Score records as JSON Lines, in manifest order. */
FG_API fg_status fg_score_pairs(const fg_scorer* scorer, const char* manifest_path,
                                const fg_metric_config* cfg, size_t jobs, fg_text** out);

/* Per-batch penalty report. Scores are computed on the unit scale (w = 1)
 * regardless of cfg->w; a trailing partial batch is evaluated at its own
 * size. */
FG_API fg_status fg_penalty_report(const fg_scorer* scorer, const char* manifest_path,
                                   const fg_metric_config* cfg, double alpha, size_t batch_size,
                                   size_t jobs, fg_text** out);

FG_API fg_status fg_evaluate(const fg_scorer* scorer, const char* sets_path,
                             const char* dataset_name, const fg_metric_config* cfg,
                             fg_selection_metric metric, size_t jobs, fg_text** report,
                             double* accuracy_pct);

FG_API fg_status fg_ablate(const fg_scorer* scorer, const char* sets_path,
                           const char* dataset_name, const fg_store* pool, double rate,
                           uint64_t seed, const fg_metric_config* cfg, size_t jobs,
                           fg_text** report, double* accuracy_pct);

/* ids files hold one id per line; lines starting with # are skipped.
 * histogram may be NULL. */
FG_API fg_status fg_compare_stores(const fg_store* a, const fg_store* b, const char* ids_a_path,
                                   const char* ids_b_path, size_t bins, fg_text** report,
                                   fg_text** histogram);

/* ---- curation --------------------------------------------------------- */

/* seed may be NULL except for FG_FILTER_RANDOM. retained_ids may be NULL. */
FG_API fg_status fg_filter(const char* scores_path, fg_filter_metric metric, double rate_pct,
                           const uint64_t* seed, fg_text** manifest, fg_text** retained_ids);
FG_API fg_status fg_overlap(const char* manifest_a_path, const char* manifest_b_path,
                            double* out);
/* Ranks fScore from f_scores_path against sentenceScore from
 * c_scores_path (which may name the same file). */
FG_API fg_status fg_rank_difference(const char* f_scores_path, const char* c_scores_path,
                                    size_t k, fg_text** out);

#ifdef __cplusplus
}
#endif

#endif /* FGRAIN_FGRAIN_H_ */

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

#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "fgrain/fgrain.h"
#include "json.hpp"

#ifndef FGRAIN_DEFAULT_MODEL
#define FGRAIN_DEFAULT_MODEL "tagger.model"
#endif

namespace fgrain::cli {
namespace {

using Json = nlohmann::ordered_json;

// Raised for failures reported by libfgrain; maps to kExitData.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised for flag combinations CLI11 cannot express; maps to kExitUsage.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void check(fg_status status) {
  if (status != FG_OK) throw DataError(fg_last_error());
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Text = std::unique_ptr<fg_text, Deleter<fg_text, fg_text_free>>;
using Store = std::unique_ptr<fg_store, Deleter<fg_store, fg_store_free>>;
using Tagger = std::unique_ptr<fg_tagger, Deleter<fg_tagger, fg_tagger_free>>;
using Provider = std::unique_ptr<fg_provider, Deleter<fg_provider, fg_provider_free>>;
using Scorer = std::unique_ptr<fg_scorer, Deleter<fg_scorer, fg_scorer_free>>;

std::string take(fg_text* raw) {
  Text t(raw);
  return std::string(fg_text_data(t.get()), fg_text_size(t.get()));
}

Store open_store(const std::string& path) {
  fg_store* s = nullptr;
  check(fg_store_open(path.c_str(), &s));
  return Store(s);
}

fg_unit_kind unit_kind(const std::string& name) {
  if (name == "np") return FG_UNITS_NOUN_PHRASE;
  if (name == "verb") return FG_UNITS_VERB;
  return FG_UNITS_NOUN;
}

fg_metric_config metric_config(const RunConfig& c) {
  fg_metric_config m;
  fg_metric_config_init(&m);
  m.w = c.w;
  m.clamp_negative = c.clamp_negative ? 1 : 0;
  m.variant = unit_kind(c.variant);
  return m;
}

std::string input(const RunConfig& c, const std::string& role) {
  auto it = c.inputs.find(role);
  return it == c.inputs.end() ? std::string() : it->second;
}

// Writes to c.output, or to `out` when no path (or "-") was given.
void emit(const RunConfig& c, const std::string& text, std::ostream& out) {
  if (c.output.empty() || c.output == "-") {
    out << text;
    return;
  }
  std::ofstream f(c.output, std::ios::binary | std::ios::trunc);
  if (!f) throw DataError("IoError: cannot open " + c.output + " for writing");
  f << text;
  if (!f.flush()) throw DataError("IoError: write failed for " + c.output);
}

void write_side_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f || !(f << text).flush()) throw DataError("IoError: cannot write " + path);
}

std::string jsonl(const RunConfig& c, const std::string& body) {
  return config_header(c) + "\n" + body;
}

std::string commented(const RunConfig& c, const std::string& body) {
  return "# " + config_header(c) + "\n" + body;
}

// Stores, tagger and provider shared by the scoring subcommands.
struct Pipeline {
  Store images, texts, units;
  Tagger tagger;
  Provider provider;
  Scorer scorer;
};

struct PipelineFlags {
  std::string img, txt, units, model, embed_cache, bearer_token;
  int timeout_ms = 10000, retries = 2;
  std::size_t max_batch = 64;
};

Pipeline open_pipeline(const RunConfig& c, const PipelineFlags& f) {
  Pipeline p;
  p.images = open_store(input(c, "img"));
  p.texts = open_store(input(c, "txt"));
  if (!input(c, "units").empty()) p.units = open_store(input(c, "units"));

  // An explicit --model must load; the bundled default is optional until
  // a caption actually needs tagging.
  const std::string model = input(c, "model");
  fg_tagger* t = nullptr;
  const fg_status st = fg_tagger_load(model.c_str(), &t);
  if (st == FG_OK) {
    p.tagger.reset(t);
  } else if (!f.model.empty()) {
    check(st);
  }

  if (!c.embed_url.empty()) {
    fg_provider_config pc;
    fg_provider_config_init(&pc);
    pc.endpoint_url = c.embed_url.c_str();
    pc.timeout_ms = f.timeout_ms;
    pc.retries = f.retries;
    pc.max_batch = f.max_batch;
    const std::string cache = input(c, "embed-cache");
    if (!cache.empty()) pc.cache_path = cache.c_str();
    if (!f.bearer_token.empty()) pc.bearer_token = f.bearer_token.c_str();
    fg_provider* prov = nullptr;
    check(fg_provider_create(&pc, &prov));
    p.provider.reset(prov);
  }

  fg_scorer* s = nullptr;
  check(fg_scorer_create(p.images.get(), p.texts.get(), p.units.get(), p.tagger.get(),
                         p.provider.get(), c.model_tag.c_str(), &s));
  p.scorer.reset(s);
  return p;
}

// Shared state filled in by CLI11 before the selected subcommand runs.
struct Flags {
  RunConfig config;
  PipelineFlags pipeline;
  std::string metric = "fclip";
  std::string variant = "noun";
  double w = 2.5;
  bool no_clamp = false;
  double rate = 0.0;
  std::uint64_t seed = 0;
  double alpha = 0.3;
  std::size_t batch_size = 1;
  std::size_t k = 10;
  std::size_t bins = 20;
  int epochs = 5;
  std::size_t hold_out_every = 0;
  std::string dataset;
  std::string model_tag = "default";
  std::string embed_url;
  std::string output;
  std::size_t jobs = 0;
  std::string text, units_kind, retained, histogram;
  std::map<std::string, std::string> paths;
};

void add_path(CLI::App* sub, Flags& f, const std::string& role, const std::string& help,
              bool required) {
  auto* opt = sub->add_option("--" + role, f.paths[role], help);
  if (required) opt->required();
}

void add_metric_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--variant", f.variant, "Units extracted from captions")
      ->check(CLI::IsMember({"noun", "np", "verb"}))
      ->default_val("noun");
  sub->add_option("--w", f.w, "CLIPScore scale factor")
      ->check(CLI::PositiveNumber)
      ->default_val(2.5);
  sub->add_flag("--no-clamp", f.no_clamp, "Keep negative cosines");
}

void add_pipeline_flags(CLI::App* sub, Flags& f) {
  add_path(sub, f, "img", "Image embedding store (.fgrn)", true);
  add_path(sub, f, "txt", "Caption embedding store (.fgrn)", true);
  add_path(sub, f, "units", "Unit embedding store; defaults to --txt", false);
  sub->add_option("--model", f.pipeline.model, "Tagger model file");
  sub->add_option("--embed-url", f.embed_url,
                  "Embedding service for unit surfaces missing from the stores");
  add_path(sub, f, "embed-cache", "Embedding cache store", false);
  sub->add_option("--model-tag", f.model_tag, "Model tag sent to the embedding service")
      ->default_val("default");
  sub->add_option("--timeout-ms", f.pipeline.timeout_ms, "Embedding request timeout")
      ->default_val(10000);
  sub->add_option("--retries", f.pipeline.retries, "Embedding request retries")
      ->default_val(2);
  sub->add_option("--max-batch", f.pipeline.max_batch, "Embedding request batch size")
      ->default_val(64);
  sub->add_option("--bearer-token", f.pipeline.bearer_token, "Embedding service token");
}

void add_common(CLI::App* sub, Flags& f, bool jobs) {
  sub->add_option("--out,-o", f.output, "Output file (default: stdout)");
  if (jobs) {
    sub->add_option("--jobs,-j", f.jobs, "Worker threads (0 = all cores)")->default_val(0);
  }
}

// Copies the parsed flags relevant to `sub` into f.config.
void resolve(CLI::App* sub, Flags& f) {
  RunConfig& c = f.config;
  c = RunConfig{};
  c.subcommand = sub->get_name();
  for (const auto& [role, path] : f.paths) {
    if (sub->get_option_no_throw("--" + role) != nullptr && !path.empty()) c.inputs[role] = path;
  }
  auto given = [&](const std::string& name) {
    const CLI::Option* o = sub->get_option_no_throw(name);
    return o != nullptr && o->count() > 0;
  };
  auto has = [&](const std::string& name) { return sub->get_option_no_throw(name) != nullptr; };

  if (has("--metric")) c.metric = f.metric;
  if (has("--variant")) {
    c.variant = f.variant;
    c.w = f.w;
    c.clamp_negative = !f.no_clamp;
  }
  if (has("--model")) {
    c.inputs["model"] = f.pipeline.model.empty() ? FGRAIN_DEFAULT_MODEL : f.pipeline.model;
  }
  if (has("--rate")) c.rate = f.rate;
  if (given("--seed")) c.seed = f.seed;
  if (has("--alpha")) c.alpha = f.alpha;
  if (has("--batch-size")) c.batch_size = f.batch_size;
  if (has("--k")) c.k = f.k;
  if (has("--bins")) c.bins = f.bins;
  if (has("--epochs")) c.epochs = f.epochs;
  if (has("--hold-out")) c.hold_out_every = f.hold_out_every;
  if (has("--name")) c.dataset = f.dataset;
  if (has("--model-tag")) {
    c.model_tag = f.model_tag;
    const char* env = std::getenv("FGRAIN_EMBED_URL");
    c.embed_url = (env != nullptr && *env != '\0') ? std::string(env) : f.embed_url;
  }
  if (has("--jobs")) c.jobs = f.jobs;
  c.output = f.output;
}

// ---- subcommands

void cmd_tag(const Flags& f, std::ostream& out) {
  const RunConfig& c = f.config;
  std::string text = f.text;
  if (!input(c, "input").empty()) {
    std::ifstream in(input(c, "input"), std::ios::binary);
    if (!in) throw DataError("IoError: cannot read " + input(c, "input"));
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  fg_tagger* t = nullptr;
  check(fg_tagger_load(input(c, "model").c_str(), &t));
  Tagger tagger(t);
  fg_text* result = nullptr;
  if (f.units_kind.empty()) {
    check(fg_tag_text(tagger.get(), text.c_str(), &result));
  } else {
    check(fg_extract_units(tagger.get(), text.c_str(), unit_kind(f.units_kind), &result));
  }
  const std::string body = take(result);
  emit(c, c.output.empty() || c.output == "-" ? body : commented(c, body), out);
}

void cmd_score(const Flags& f, std::ostream& out) {
  const RunConfig& c = f.config;
  Pipeline p = open_pipeline(c, f.pipeline);
  const fg_metric_config m = metric_config(c);
  fg_text* result = nullptr;
  check(fg_score_pairs(p.scorer.get(), input(c, "manifest").c_str(), &m, c.jobs, &result));
  emit(c, jsonl(c, take(result)), out);
}

void cmd_penalty(const Flags& f, std::ostream& out) {
  const RunConfig& c = f.config;
  Pipeline p = open_pipeline(c, f.pipeline);
  const fg_metric_config m = metric_config(c);
  fg_text* result = nullptr;
  check(fg_penalty_report(p.scorer.get(), input(c, "manifest").c_str(), &m, *c.alpha,
                          *c.batch_size, c.jobs, &result));
  emit(c, jsonl(c, take(result)), out);
}

void cmd_eval(const Flags& f, std::ostream& out) {
  const RunConfig& c = f.config;
  Pipeline p = open_pipeline(c, f.pipeline);
  const fg_metric_config m = metric_config(c);
  fg_text* result = nullptr;
  double accuracy = 0.0;
  check(fg_evaluate(p.scorer.get(), input(c, "sets").c_str(), c.dataset.c_str(), &m,
                    c.metric == "clip" ? FG_SELECT_CLIP : FG_SELECT_FCLIP, c.jobs, &result,
                    &accuracy));
  emit(c, jsonl(c, take(result)), out);
}

void cmd_ablate(const Flags& f, std::ostream& out) {
  const RunConfig& c = f.config;
  if (!c.seed) throw UsageError("ablate requires --seed");
  Pipeline p = open_pipeline(c, f.pipeline);
  Store pool = open_store(input(c, "pool"));
  const fg_metric_config m = metric_config(c);
  fg_text* result = nullptr;
  double accuracy = 0.0;
  check(fg_ablate(p.scorer.get(), input(c, "sets").c_str(), c.dataset.c_str(), pool.get(),
                  *c.rate, *c.seed, &m, c.jobs, &result, &accuracy));
  emit(c, jsonl(c, take(result)), out);
}

void cmd_filter(const Flags& f, std::ostream& out) {
  const RunConfig& c = f.config;
  fg_filter_metric metric = FG_FILTER_FCLIP;
  if (c.metric == "clip") metric = FG_FILTER_CLIP;
  if (c.metric == "random") {
    if (!c.seed) throw UsageError("--metric random requires --seed");
    metric = FG_FILTER_RANDOM;
  }
  const std::uint64_t seed = c.seed.value_or(0);
  fg_text* manifest = nullptr;
  fg_text* retained = nullptr;
  check(fg_filter(input(c, "scores").c_str(), metric, *c.rate, c.seed ? &seed : nullptr,
                  &manifest, &retained));
  const std::string manifest_text = take(manifest);
  const std::string retained_text = take(retained);
  if (!f.retained.empty()) write_side_file(f.retained, commented(c, retained_text));
  emit(c, jsonl(c, manifest_text), out);
}

void cmd_overlap(const Flags& f, std::ostream& out) {
  const RunConfig& c = f.config;
  double value = 0.0;
  check(fg_overlap(input(c, "a").c_str(), input(c, "b").c_str(), &value));
  Json j;
  j["kind"] = "overlap";
  j["overlap"] = value;
  j["overlapPct"] = value * 100.0;
  emit(c, jsonl(c, j.dump() + "\n"), out);
}

void cmd_rankdiff(const Flags& f, std::ostream& out) {
  const RunConfig& c = f.config;
  std::string fs = input(c, "f-scores"), cs = input(c, "c-scores");
  if (!input(c, "scores").empty()) fs = cs = input(c, "scores");
  if (fs.empty() || cs.empty()) {
    throw UsageError("rankdiff needs --scores or both --f-scores and --c-scores");
  }
  fg_text* result = nullptr;
  check(fg_rank_difference(fs.c_str(), cs.c_str(), *c.k, &result));
  emit(c, jsonl(c, take(result)), out);
}

void cmd_compare(const Flags& f, std::ostream& out) {
  const RunConfig& c = f.config;
  Store a = open_store(input(c, "a"));
  Store b = open_store(input(c, "b"));
  fg_text* report = nullptr;
  fg_text* histogram = nullptr;
  check(fg_compare_stores(a.get(), b.get(), input(c, "ids-a").c_str(),
                          input(c, "ids-b").c_str(), *c.bins, &report, &histogram));
  const std::string report_text = take(report);
  const std::string table = take(histogram);
  if (!f.histogram.empty()) write_side_file(f.histogram, commented(c, table));
  emit(c, jsonl(c, report_text), out);
}

void cmd_train(const Flags& f, std::ostream& out) {
  const RunConfig& c = f.config;
  fg_tagger* t = nullptr;
  double train_acc = 0.0, held_acc = 0.0;
  check(fg_tagger_train(input(c, "corpus").c_str(), *c.epochs, c.seed.value_or(0),
                        *c.hold_out_every, &t, &train_acc, &held_acc));
  Tagger tagger(t);
  check(fg_tagger_save(tagger.get(), f.output.c_str()));
  Json j;
  j["kind"] = "tagger";
  j["version"] = fg_tagger_version(tagger.get());
  j["trainAccuracy"] = train_acc;
  j["heldOutAccuracy"] = std::isnan(held_acc) ? Json(nullptr) : Json(held_acc);
  out << config_header(c) << "\n" << j.dump() << "\n";
}

const char* kUsage =
    "usage: fgrain <subcommand> [options]\n"
    "subcommands: tag score eval ablate penalty filter overlap rankdiff compare-stores "
    "train-tagger\n"
    "run 'fgrain <subcommand> --help' for options\n";

}  // namespace

std::string config_header(const RunConfig& c) {
  Json cfg;
  cfg["subcommand"] = c.subcommand;
  Json inputs = Json::object();
  for (const auto& [role, path] : c.inputs) inputs[role] = path;
  cfg["inputs"] = inputs;
  cfg["metric"] = c.metric;
  cfg["variant"] = c.variant;
  cfg["w"] = c.w;
  cfg["clampNegative"] = c.clamp_negative;
  auto opt = [&](const char* key, const auto& v) {
    if (v) cfg[key] = *v;
  };
  opt("rate", c.rate);
  opt("seed", c.seed);
  opt("alpha", c.alpha);
  opt("batchSize", c.batch_size);
  opt("k", c.k);
  opt("bins", c.bins);
  opt("epochs", c.epochs);
  opt("holdOutEvery", c.hold_out_every);
  cfg["dataset"] = c.dataset;
  cfg["modelTag"] = c.model_tag;
  cfg["embedUrl"] = c.embed_url;
  cfg["output"] = c.output;
  cfg["jobs"] = c.jobs;
  Json line;
  line["config"] = std::move(cfg);
  return line.dump();
}

RunConfig parse_config_header(std::string_view line) {
  if (line.substr(0, 2) == "# ") line.remove_prefix(2);
  Json j = Json::parse(line);
  const Json& cfg = j.at("config");
  RunConfig c;
  c.subcommand = cfg.at("subcommand").get<std::string>();
  for (const auto& [role, path] : cfg.at("inputs").items()) c.inputs[role] = path.get<std::string>();
  c.metric = cfg.at("metric").get<std::string>();
  c.variant = cfg.at("variant").get<std::string>();
  c.w = cfg.at("w").get<double>();
  c.clamp_negative = cfg.at("clampNegative").get<bool>();
  auto opt = [&](const char* key, auto& v) {
    if (auto it = cfg.find(key); it != cfg.end()) {
      v = it->template get<typename std::remove_reference_t<decltype(v)>::value_type>();
    }
  };
  opt("rate", c.rate);
  opt("seed", c.seed);
  opt("alpha", c.alpha);
  opt("batchSize", c.batch_size);
  opt("k", c.k);
  opt("bins", c.bins);
  opt("epochs", c.epochs);
  opt("holdOutEvery", c.hold_out_every);
  c.dataset = cfg.at("dataset").get<std::string>();
  c.model_tag = cfg.at("modelTag").get<std::string>();
  c.embed_url = cfg.at("embedUrl").get<std::string>();
  c.output = cfg.at("output").get<std::string>();
  c.jobs = cfg.at("jobs").get<std::size_t>();
  return c;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"fgrain: fine-grained image-text alignment scoring and curation", "fgrain"};
  app.require_subcommand(1);
  app.set_version_flag("--version", fg_version());
  Flags f;
  std::map<CLI::App*, std::function<void(const Flags&, std::ostream&)>> handlers;

  auto* tag = app.add_subcommand("tag", "Print one surface<TAB>TAG line per token");
  tag->add_option("--model", f.pipeline.model, "Tagger model file");
  auto* text_opt = tag->add_option("--text", f.text, "Caption text");
  auto* input_opt = tag->add_option("--input", f.paths["input"], "File holding the text");
  text_opt->excludes(input_opt);
  tag->add_option("--units", f.units_kind, "Print units of this kind instead of tags")
      ->check(CLI::IsMember({"noun", "np", "verb"}));
  add_common(tag, f, false);
  handlers[tag] = cmd_tag;

  auto* score = app.add_subcommand("score", "Score image-caption pairs");
  add_path(score, f, "manifest", "Pair manifest (JSON Lines)", true);
  add_pipeline_flags(score, f);
  add_metric_flags(score, f);
  add_common(score, f, true);
  handlers[score] = cmd_score;

  auto* eval = app.add_subcommand("eval", "Caption-selection accuracy on candidate sets");
  add_path(eval, f, "sets", "Candidate sets (JSON Lines)", true);
  add_pipeline_flags(eval, f);
  add_metric_flags(eval, f);
  eval->add_option("--metric", f.metric, "Selection metric")
      ->check(CLI::IsMember({"clip", "fclip"}))
      ->default_val("fclip");
  eval->add_option("--name", f.dataset, "Dataset name for the report");
  add_common(eval, f, true);
  handlers[eval] = cmd_eval;

  auto* ablate = app.add_subcommand("ablate", "Random unit replacement ablation");
  add_path(ablate, f, "sets", "Candidate sets (JSON Lines)", true);
  add_path(ablate, f, "pool", "Replacement pool store", true);
  add_pipeline_flags(ablate, f);
  add_metric_flags(ablate, f);
  ablate->add_option("--rate", f.rate, "Replacement probability in [0, 1]")->required();
  ablate->add_option("--seed", f.seed, "Random seed (required)");
  ablate->add_option("--name", f.dataset, "Dataset name for the report");
  add_common(ablate, f, true);
  handlers[ablate] = cmd_ablate;

  auto* penalty = app.add_subcommand("penalty", "Per-batch F-CLIPScore penalty term");
  add_path(penalty, f, "manifest", "Pair manifest (JSON Lines)", true);
  add_pipeline_flags(penalty, f);
  add_metric_flags(penalty, f);
  penalty->add_option("--alpha", f.alpha, "Penalty weight")->default_val(0.3);
  penalty->add_option("--batch-size", f.batch_size, "Records per batch")
      ->check(CLI::PositiveNumber)
      ->default_val(1);
  add_common(penalty, f, true);
  handlers[penalty] = cmd_penalty;

  auto* filter = app.add_subcommand("filter", "Remove the lowest-scoring pairs");
  add_path(filter, f, "scores", "Score records (JSON Lines)", true);
  filter->add_option("--rate", f.rate, "Percentage to remove, in (0, 100)")->required();
  filter->add_option("--metric", f.metric, "Ranking metric")
      ->check(CLI::IsMember({"clip", "fclip", "random"}))
      ->default_val("fclip");
  filter->add_option("--seed", f.seed, "Random seed (required for --metric random)");
  filter->add_option("--retained", f.retained, "Also write retained pair ids here");
  add_common(filter, f, false);
  handlers[filter] = cmd_filter;

  auto* overlap = app.add_subcommand("overlap", "Fraction of removed ids shared by two manifests");
  add_path(overlap, f, "a", "First filter manifest", true);
  add_path(overlap, f, "b", "Second filter manifest", true);
  add_common(overlap, f, false);
  handlers[overlap] = cmd_overlap;

  auto* rankdiff = app.add_subcommand("rankdiff", "F-CLIPScore rank minus CLIPScore rank");
  auto* both = rankdiff->add_option("--scores", f.paths["scores"], "Score records for both ranks");
  auto* fopt = rankdiff->add_option("--f-scores", f.paths["f-scores"], "Records for fScore ranks");
  auto* copt = rankdiff->add_option("--c-scores", f.paths["c-scores"],
                                    "Records for sentenceScore ranks");
  both->excludes(fopt)->excludes(copt);
  rankdiff->add_option("--k", f.k, "Entries per slice")->default_val(10);
  add_common(rankdiff, f, false);
  handlers[rankdiff] = cmd_rankdiff;

  auto* compare = app.add_subcommand("compare-stores", "Cosine drift between two stores");
  add_path(compare, f, "a", "First store", true);
  add_path(compare, f, "b", "Second store", true);
  add_path(compare, f, "ids-a", "Ids of group A, one per line", true);
  add_path(compare, f, "ids-b", "Ids of group B, one per line", true);
  compare->add_option("--bins", f.bins, "Histogram bins")
      ->check(CLI::PositiveNumber)
      ->default_val(20);
  compare->add_option("--histogram", f.histogram, "Also write a TSV histogram table");
  add_common(compare, f, false);
  handlers[compare] = cmd_compare;

  auto* train = app.add_subcommand("train-tagger", "Train a tagger model from a tagged corpus");
  add_path(train, f, "corpus", "Tagged corpus (surface<TAB>TAG lines)", true);
  train->add_option("--epochs", f.epochs, "Training epochs")->default_val(5);
  train->add_option("--seed", f.seed, "Shuffle seed");
  train->add_option("--hold-out", f.hold_out_every, "Hold out every n-th sentence")
      ->default_val(0);
  train->add_option("--out,-o", f.output, "Model output path")->required();
  handlers[train] = cmd_train;

  for (auto& [sub, _] : handlers) sub->fallthrough(false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  CLI::App* active = nullptr;
  try {
    if (!args.empty() && !args[0].empty() && args[0][0] != '-' &&
        app.get_subcommand_no_throw(args[0]) == nullptr) {
      throw UsageError("unknown subcommand '" + args[0] + "'");
    }
    app.parse(reversed);
    for (auto& [sub, handler] : handlers) {
      if (sub->parsed()) active = sub;
    }
    if (active == nullptr) throw CLI::RequiredError("a subcommand");
    if (active == tag && f.text.empty() && f.paths["input"].empty()) {
      throw UsageError("tag needs --text or --input");
    }
    resolve(active, f);
    handlers[active](f, out);
    return kExitOk;
  } catch (const CLI::CallForHelp&) {
    for (auto& [sub, _] : handlers) {
      if (sub->parsed()) {
        out << sub->help();
        return kExitOk;
      }
    }
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << fg_version() << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "fgrain: error: " << e.what() << "\n" << kUsage;
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "fgrain: error: " << e.what() << "\n" << kUsage;
    return kExitUsage;
  } catch (const DataError& e) {
    err << "fgrain: error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "fgrain: error: " << e.what() << "\n";
    return kExitData;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace fgrain::cli

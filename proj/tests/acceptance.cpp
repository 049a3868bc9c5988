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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "fgrain/benchmark.hpp"
#include "fgrain/curation.hpp"
#include "fgrain/error.hpp"
#include "fgrain/metric.hpp"
#include "fgrain/scoring.hpp"
#include "fgrain/stats.hpp"
#include "fgrain/store.hpp"
#include "fgrain/tagger.hpp"
#include "json.hpp"
#include "test_util.hpp"

using namespace fgrain;
using fgrain::testing::data_path;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::vector<float> random_vec(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<float> g;
  std::vector<float> v(dim);
  for (auto& x : v) x = g(rng);
  return v;
}

// Independent scoring oracle: plain double arithmetic, no library calls.
double oracle_clip(const std::vector<float>& a, const std::vector<float>& b, double w) {
  long double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += static_cast<long double>(a[i]) * b[i];
    na += static_cast<long double>(a[i]) * a[i];
    nb += static_cast<long double>(b[i]) * b[i];
  }
  const double c = static_cast<double>(dot / std::sqrt(na * nb));
  return w * std::max(c, 0.0);
}

const TaggerModel& bundled_tagger() {
  static const TaggerModel model = TaggerModel::load(FGRAIN_TEST_MODEL);
  return model;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Outcome eq1_oracle() {
  std::mt19937_64 rng(101);
  const std::size_t dim = 256;
  struct Tuple {
    std::vector<float> img, sent;
    std::vector<std::vector<float>> units;
  };
  std::vector<Tuple> tuples(1000);
  for (auto& t : tuples) {
    t.img = random_vec(rng, dim);
    // Bias the sentence towards the image so most clip terms are positive.
    t.sent = random_vec(rng, dim);
    for (std::size_t i = 0; i < dim; ++i) t.sent[i] += 0.5f * t.img[i];
    t.units.resize(rng() % 9);
    for (auto& u : t.units) {
      u = random_vec(rng, dim);
      for (std::size_t i = 0; i < dim; ++i) u[i] += 0.3f * t.img[i];
    }
  }
  MetricConfig cfg;
  std::vector<double> got(tuples.size());
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t k = 0; k < tuples.size(); ++k) {
    std::vector<Vector> views(tuples[k].units.begin(), tuples[k].units.end());
    got[k] = f_clip_score(tuples[k].img, tuples[k].sent, views, cfg);
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  double worst = 0.0;
  for (std::size_t k = 0; k < tuples.size(); ++k) {
    double sum = oracle_clip(tuples[k].img, tuples[k].sent, cfg.w);
    for (const auto& u : tuples[k].units) sum += oracle_clip(tuples[k].img, u, cfg.w);
    const double want = sum / static_cast<double>(tuples[k].units.size() + 1);
    const double rel = want == 0.0 ? std::fabs(got[k]) : std::fabs(got[k] - want) / std::fabs(want);
    worst = std::max(worst, rel);
  }
  return {worst <= 1e-6 && secs < 1.0,
          fmt("1000 tuples, max rel err %.3g, %.3f s", worst, secs)};
}

Outcome degeneracy() {
  std::mt19937_64 rng(102);
  int mismatches = 0;
  for (int i = 0; i < 100; ++i) {
    auto img = random_vec(rng, 64), s = random_vec(rng, 64);
    const double f = f_clip_score(img, s, {}, {});
    const double c = clip_score(img, s, {});
    if (std::memcmp(&f, &c, sizeof f) != 0) ++mismatches;
  }
  return {mismatches == 0, fmt("100 pairs, %g bitwise mismatches", mismatches)};
}

// Random candidate sets over an in-memory fixture whose unit store holds
// every lowercased token, so any tag the model assigns resolves.
Outcome argmax_invariance() {
  static const char* kNouns[] = {"dog", "cat", "man", "woman", "table", "grass", "car",
                                 "street", "pizza", "plate", "horse", "beach", "bench", "tree"};
  std::mt19937_64 rng(103);
  const std::size_t dim = 48;
  std::vector<StoreEntry> images, texts;
  std::map<std::string, std::vector<float>> vocab;
  std::vector<CandidateSet> sets;
  for (int s = 0; s < 200; ++s) {
    CandidateSet set;
    set.image_id = "img" + std::to_string(s);
    auto img = random_vec(rng, dim);
    images.push_back({set.image_id, img});
    const std::size_t n = 2 + rng() % 4;
    for (std::size_t c = 0; c < n; ++c) {
      std::string text = "A " + std::string(kNouns[rng() % 14]);
      const std::size_t extra = rng() % 4;
      for (std::size_t e = 0; e < extra; ++e) text += " and a " + std::string(kNouns[rng() % 14]);
      text += ".";
      const std::string id = set.image_id + "_c" + std::to_string(c);
      auto v = random_vec(rng, dim);
      for (std::size_t i = 0; i < dim; ++i) v[i] += 0.4f * img[i];
      texts.push_back({id, v});
      set.candidates.push_back({id, text});
      for (const auto& tok : tokenize(text)) {
        std::string key = unit_key(tok.surface);
        if (!vocab.count(key)) {
          auto u = random_vec(rng, dim);
          vocab.emplace(key, u);
        }
      }
    }
    sets.push_back(std::move(set));
  }
  std::vector<StoreEntry> unit_entries;
  for (auto& [k, v] : vocab) unit_entries.push_back({k, v});
  auto img_store = EmbeddingStore::from_entries(images, false);
  auto txt_store = EmbeddingStore::from_entries(texts, false);
  auto unit_store = EmbeddingStore::from_entries(unit_entries, false);
  ScoringContext ctx{&img_store, &txt_store, &unit_store, nullptr, &bundled_tagger()};

  int changed = 0;
  for (const auto& set : sets) {
    std::set<std::size_t> picks;
    for (double w : {0.5, 1.0, 2.5, 7.0}) {
      MetricConfig cfg;
      cfg.w = w;
      picks.insert(select_caption(set, ctx, cfg, SelectionMetric::kFClip));
    }
    if (picks.size() != 1) ++changed;
  }
  return {changed == 0, fmt("200 sets x 4 weights, %g sets changed their pick", changed)};
}

Outcome dilution() {
  std::mt19937_64 rng(104);
  const std::size_t dim = 32;
  int failures = 0, done = 0;
  while (done < 500) {
    auto img = random_vec(rng, dim), s = random_vec(rng, dim);
    for (std::size_t i = 0; i < dim; ++i) s[i] += 0.5f * img[i];
    std::vector<std::vector<float>> us(rng() % 9);
    for (auto& u : us) u = random_vec(rng, dim);
    std::vector<Vector> views(us.begin(), us.end());
    const double f = f_clip_score(img, s, views, {});
    if (!(f > 0.0)) continue;
    std::vector<float> extra;
    do {
      extra = random_vec(rng, dim);
    } while (!(clip_score(img, extra, {}) < f));
    views.push_back(extra);
    if (!(f_clip_score(img, s, views, {}) < f)) ++failures;
    ++done;
  }
  return {failures == 0, fmt("500 instances, %g non-decreasing", failures)};
}

struct SynthFixture {
  EmbeddingStore images = EmbeddingStore::open(data_path("synth_img.fgrn"));
  EmbeddingStore texts = EmbeddingStore::open(data_path("synth_txt.fgrn"));
  EmbeddingStore units = EmbeddingStore::open(data_path("synth_units.fgrn"));
  EmbeddingStore pool = EmbeddingStore::open(data_path("synth_pool.fgrn"));
  std::vector<CandidateSet> sets = read_candidate_sets(data_path("synth50.cset"));

  ScoringContext context() const {
    return {&images, &texts, &units, nullptr, &bundled_tagger()};
  }
};

const SynthFixture& synth() {
  static const SynthFixture s;
  return s;
}

Outcome synthetic_benchmark() {
  const auto& s = synth();
  auto expected = nlohmann::json::parse(fgrain::testing::slurp(data_path("synth50.expected.json")));
  auto f = evaluate(s.sets, s.context(), {}, SelectionMetric::kFClip, "synth50", 0);
  auto c = evaluate(s.sets, s.context(), {}, SelectionMetric::kClip, "synth50", 0);
  const bool oracle = f.correct_count() == expected["fclipCorrect"].get<std::size_t>() &&
                      c.correct_count() == expected["clipCorrect"].get<std::size_t>();
  return {s.sets.size() == 50 && f.accuracy_pct == 100.0 && c.accuracy_pct <= 60.0 && oracle,
          fmt("50 sets, fclip %.1f%%, clip %.1f%%, oracle match %g", f.accuracy_pct,
              c.accuracy_pct, oracle)};
}

Outcome ablation_monotone() {
  const auto& s = synth();
  const std::vector<double> rates{0.0, 0.25, 0.5, 0.75, 1.0};
  std::vector<double> means;
  for (double rate : rates) {
    double sum = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      sum += noun_replacement_ablation(s.sets, s.context(), s.pool, rate, seed, {}, "", 0)
                 .accuracy_pct;
    }
    means.push_back(sum / 20.0);
  }
  bool ok = true;
  std::string detail = "mean accuracy over 20 seeds:";
  for (std::size_t i = 0; i < rates.size(); ++i) {
    if (i > 0 && means[i] > means[i - 1]) ok = false;
    detail += fmt(" %.2f->%.2f%%", rates[i], means[i]);
  }
  return {ok, detail};
}

Outcome penalty() {
  std::vector<double> f{0.5, 0.7};
  const double p = f_clip_penalty(std::span<const double>(f), {0.3, 2});
  return {std::fabs(p - 0.12) <= 1e-12, fmt("B=2 alpha=0.3 -> %.17g", p)};
}

Outcome filtering_algebra() {
  std::mt19937_64 rng(105);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int violations = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 80;
    std::vector<ScoreRecord> recs;
    for (std::size_t i = 0; i < n; ++i) {
      recs.push_back(make_score_record("p" + std::to_string(rng() % 1000) + "_" + std::to_string(i),
                                       std::round(u(rng) * 10) / 10,
                                       {{"x", std::round(u(rng) * 10) / 10}}));
    }
    const std::vector<double> rates{10, 25, 30, 50, 75};
    for (FilterMetric m : {FilterMetric::kClip, FilterMetric::kFClip}) {
      std::vector<std::pair<double, std::string>> oracle;
      for (const auto& s : scores_for(recs, m)) oracle.emplace_back(s.score, s.pair_id);
      std::sort(oracle.begin(), oracle.end());
      std::set<std::string> previous;
      for (double rate : rates) {
        auto man = filter_bottom(recs, m, rate);
        std::set<std::string> removed, retained;
        for (const auto& r : man.removed) removed.insert(r.pair_id);
        for (const auto& r : man.retained) retained.insert(r.pair_id);
        // Partition.
        if (removed.size() + retained.size() != n) ++violations;
        for (const auto& id : removed) violations += retained.count(id);
        // Nesting.
        for (const auto& id : previous) violations += removed.count(id) == 0;
        previous = removed;
        // Sort oracle.
        const std::size_t k = static_cast<std::size_t>(rate * n / 100);
        if (man.removed.size() != k) ++violations;
        for (std::size_t i = 0; i < man.removed.size() && i < k; ++i) {
          violations += man.removed[i].pair_id != oracle[i].second;
        }
      }
    }
    for (double rate : rates) {
      auto a = filter_bottom(recs, FilterMetric::kClip, rate);
      auto b = filter_bottom(recs, FilterMetric::kFClip, rate);
      violations += overlap(a, b) != overlap(b, a);
    }
  }
  return {violations == 0, fmt("100 record sets, %g violations", violations)};
}

Outcome welch() {
  std::mt19937_64 rng(106);
  std::normal_distribution<double> g;
  double worst_t = 0.0, worst_p = 0.0;
  for (int i = 0; i < 100; ++i) {
    std::vector<double> a(3 + rng() % 30), b(3 + rng() % 30);
    const double shift = 0.5 * g(rng), scale = 0.2 + std::fabs(g(rng));
    for (auto& x : a) x = g(rng);
    for (auto& x : b) x = shift + scale * g(rng);
    auto r = welch_t_test(a, b);

    auto moments = [](const std::vector<double>& v) {
      double m = 0;
      for (double x : v) m += x;
      m /= v.size();
      double ss = 0;
      for (double x : v) ss += (x - m) * (x - m);
      return std::pair{m, ss / (v.size() - 1)};
    };
    auto [ma, va] = moments(a);
    auto [mb, vb] = moments(b);
    const double sa = va / a.size(), sb = vb / b.size();
    const double t = (ma - mb) / std::sqrt(sa + sb);
    const double df = (sa + sb) * (sa + sb) / (sa * sa / (a.size() - 1) + sb * sb / (b.size() - 1));
    boost::math::students_t dist(df);
    const double p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(t)));
    worst_t = std::max(worst_t, std::fabs(r.t - t));
    worst_p = std::max(worst_p, std::fabs(r.p_value - p));
  }
  return {worst_t <= 1e-6 && worst_p <= 1e-6,
          fmt("100 instances, max |dt| %.3g, max |dp| %.3g", worst_t, worst_p)};
}

Outcome tagger_quality() {
  const auto fixture = read_tagged_corpus(std::filesystem::path(FGRAIN_TAGGER_DATA) /
                                          "oracle_fixture.conll");
  const auto& model = bundled_tagger();
  std::size_t tokens = 0, agree = 0;
  for (const auto& s : fixture) tokens += s.words.size();
  const double acc = token_accuracy(model, fixture);
  auto is_noun = [](const std::string& t) { return t == "NOUN" || t == "PROPN"; };
  for (const auto& s : fixture) {
    auto pred = model.predict(s.words);
    std::multiset<std::string> gold, got;
    for (std::size_t i = 0; i < s.words.size(); ++i) {
      if (is_noun(s.tags[i])) gold.insert(unit_key(s.words[i]));
      if (is_noun(std::string(tag_name(pred[i])))) got.insert(unit_key(s.words[i]));
    }
    agree += gold == got;
  }
  const double noun_rate = static_cast<double>(agree) / static_cast<double>(fixture.size());
  return {tokens >= 500 && acc >= 0.90 && noun_rate >= 0.85,
          fmt("%g tokens, token accuracy %.2f%%, noun-multiset agreement %.2f%%",
              static_cast<double>(tokens), 100.0 * acc, 100.0 * noun_rate)};
}

Outcome format_round_trip() {
  fgrain::testing::TempDir tmp;
  std::mt19937_64 rng(107);
  std::vector<StoreEntry> entries;
  for (int i = 0; i < 100; ++i) {
    auto v = random_vec(rng, 16);
    double n = 0;
    for (float x : v) n += double(x) * x;
    for (auto& x : v) x = static_cast<float>(x / std::sqrt(n));
    entries.push_back({"e" + std::to_string(i), v});
  }
  int problems = 0;
  write_store(tmp / "s.fgrn", entries, true);
  auto store = EmbeddingStore::open(tmp / "s.fgrn");
  if (store.size() != entries.size()) ++problems;
  for (std::size_t i = 0; i < entries.size() && i < store.size(); ++i) {
    auto v = store.vector_at(i);
    problems += store.id_at(i) != entries[i].id;
    problems += std::memcmp(v.data(), entries[i].vector.data(), v.size() * sizeof(float)) != 0;
  }
  PairManifest m;
  for (int i = 0; i < 20; ++i) {
    m.push_back({"p" + std::to_string(i), "i" + std::to_string(i), "c" + std::to_string(i),
                 "caption \"" + std::to_string(i) + "\"\twith ünïcode"});
  }
  write_pair_manifest(tmp / "m.jsonl", m);
  problems += read_pair_manifest(tmp / "m.jsonl") != m;

  auto expected = nlohmann::json::parse(fgrain::testing::slurp(data_path("corrupt.json")));
  int corrupt_ok = 0;
  for (const auto& [name, err] : expected.items()) {
    std::string got = "Ok";
    try {
      if (name.ends_with(".jsonl")) {
        read_pair_manifest(data_path(name));
      } else {
        EmbeddingStore::open(data_path(name));
      }
    } catch (const Error& e) {
      got = std::string(error_code_name(e.code()));
    }
    if (got == err.get<std::string>()) {
      ++corrupt_ok;
    } else {
      ++problems;
    }
  }
  return {problems == 0, fmt("100-vector store and 20-pair manifest round-trip, %g/%g corrupted "
                             "fixtures raise the listed error",
                             corrupt_ok, static_cast<double>(expected.size()))};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"f-clipscore-oracle", eq1_oracle},
      {"degeneracy", degeneracy},
      {"argmax-invariance", argmax_invariance},
      {"monotone-dilution", dilution},
      {"synthetic-benchmark", synthetic_benchmark},
      {"ablation-monotonicity", ablation_monotone},
      {"penalty-arithmetic", penalty},
      {"filtering-algebra", filtering_algebra},
      {"welch-t-test", welch},
      {"tagger-quality", tagger_quality},
      {"format-round-trip", format_round_trip},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    failed += !o.pass;
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
  return failed == 0 ? 0 : 1;
}

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

#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "fgrain/error.hpp"
#include "fgrain/metric.hpp"

using namespace fgrain;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kOk;
}

std::vector<float> random_vec(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<float> g;
  std::vector<float> v(dim);
  for (auto& x : v) x = g(rng);
  return v;
}

}  // namespace

TEST_CASE("cosine of the worked example") {
  std::vector<float> a{1, 2, 3}, b{4, 5, 6};
  CHECK(cosine(a, b) == doctest::Approx(0.974631846).epsilon(1e-9));
  CHECK(clip_score(a, b, {}) == doctest::Approx(2.436579615).epsilon(1e-9));
}

TEST_CASE("cosine errors") {
  std::vector<float> a{1, 2, 3}, b{1, 2}, z{0, 0, 0};
  CHECK(code_of([&] { cosine(a, b); }) == ErrorCode::kDimensionMismatch);
  CHECK(code_of([&] { cosine(a, z); }) == ErrorCode::kZeroVector);
}

TEST_CASE("clamping and the unclamped variant") {
  std::vector<float> a{1, 0}, b{-1, 0};
  CHECK(clip_score(a, b, {}) == 0.0);
  MetricConfig raw;
  raw.clamp_negative = false;
  CHECK(clip_score(a, b, raw) == doctest::Approx(-2.5));
}

TEST_CASE("cosine identities") {
  std::vector<float> v{0.3f, -1.2f, 2.0f}, x{1, 0}, y{0, 1};
  CHECK(cosine(v, v) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cosine(x, y) == 0.0);
  std::vector<float> a{1, 2, 3}, b{4, 5, 6};
  CHECK(cosine(a, b) == cosine(b, a));
}

TEST_CASE("clip_score examples") {
  std::vector<float> u{0.6f, 0.8f};
  CHECK(clip_score(u, u, {}) == doctest::Approx(2.5));
  // cosine -0.3 is clamped to zero.
  std::vector<float> x{1, 0}, n{-0.3f, std::sqrt(1 - 0.09f)};
  CHECK(cosine(x, n) == doctest::Approx(-0.3).epsilon(1e-7));
  CHECK(clip_score(x, n, {}) == 0.0);
}

TEST_CASE("f_clip_score examples") {
  std::vector<float> u{0.6f, 0.8f};
  std::vector<Vector> three{u, u, u};
  CHECK(f_clip_score(u, u, three, {}) == doctest::Approx(2.5));

  std::vector<float> img{1, 0}, sentence{1, 0}, unit{0, 1};
  std::vector<Vector> units{unit};
  MetricConfig cfg;
  cfg.w = 1.0;
  CHECK(f_clip_score(img, sentence, units, cfg) == 0.5);
}

TEST_CASE("no units reduces to clip_score exactly") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) {
    auto img = random_vec(rng, 8), s = random_vec(rng, 8);
    CHECK(f_clip_score(img, s, {}, {}) == clip_score(img, s, {}));
  }
}

TEST_CASE("bounds and permutation invariance") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    auto img = random_vec(rng, 6), s = random_vec(rng, 6);
    std::vector<std::vector<float>> us;
    for (int k = 0; k < 5; ++k) us.push_back(random_vec(rng, 6));
    std::vector<Vector> views(us.begin(), us.end());
    const double f = f_clip_score(img, s, views, {});
    CHECK(f >= 0.0);
    CHECK(f <= 2.5);
    std::reverse(views.begin(), views.end());
    CHECK(f_clip_score(img, s, views, {}) == doctest::Approx(f).epsilon(1e-12));
  }
}

TEST_CASE("metric config validation") {
  MetricConfig bad;
  bad.w = 0.0;
  CHECK(code_of([&] { validate(bad); }) == ErrorCode::kInvalidArgument);
  bad.w = -1.0;
  CHECK(code_of([&] { validate(bad); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("make_score_record agrees with f_clip_score") {
  auto r = make_score_record("p", 1.0, {{"dog", 0.5}, {"grass", 0.0}});
  CHECK(r.f_score == doctest::Approx(0.5));
  CHECK(r.unit_count() == 2);
  CHECK(make_score_record("q", 0.7, {}).f_score == 0.7);
}

TEST_CASE("penalty examples") {
  std::vector<double> f{0.5, 0.7};
  CHECK(std::abs(f_clip_penalty(std::span<const double>(f), {0.3, 2}) - 0.12) <= 1e-12);
  std::vector<double> ones{1.0, 1.0, 1.0};
  CHECK(f_clip_penalty(std::span<const double>(ones), {0.3, 3}) == 0.0);
  CHECK(f_clip_penalty(std::span<const double>(f), {0.0, 2}) == 0.0);
}

TEST_CASE("penalty errors") {
  std::vector<double> f{0.5, 0.7};
  CHECK(code_of([&] { f_clip_penalty(std::span<const double>(f), {0.3, 3}); }) ==
        ErrorCode::kBatchSizeMismatch);
  std::vector<double> over{1.5};
  CHECK(code_of([&] { f_clip_penalty(std::span<const double>(over), {0.3, 1}); }) ==
        ErrorCode::kInvariantViolation);
  std::vector<double> nan{std::nan("")};
  CHECK(code_of([&] { f_clip_penalty(std::span<const double>(nan), {0.3, 1}); }) ==
        ErrorCode::kNonFiniteScore);
}

TEST_CASE("batched penalties use each batch's own size") {
  std::vector<ScoreRecord> rs;
  for (double f : {0.5, 0.7, 0.9}) rs.push_back(make_score_record("p", f, {}));
  auto b = batched_penalties(rs, {0.3, 2});
  REQUIRE(b.size() == 2);
  CHECK(b[0].size == 2);
  CHECK(b[0].penalty == doctest::Approx(0.12));
  CHECK(b[1].first == 2);
  CHECK(b[1].penalty == doctest::Approx(0.03));
}

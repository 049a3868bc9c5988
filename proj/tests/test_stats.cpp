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

// Boost.Math is the reference implementation here; the library itself does
// not depend on it.

#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <random>

#include "doctest.h"
#include "fgrain/error.hpp"
#include "fgrain/stats.hpp"

using namespace fgrain;

namespace {

double boost_two_sided(double t, double df) {
  boost::math::students_t dist(df);
  return 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(t)));
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kOk;
}

}  // namespace

TEST_CASE("incomplete beta agrees with Boost") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ab(0.05, 60.0), xs(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double a = ab(rng), b = ab(rng), x = xs(rng);
    CAPTURE(a);
    CAPTURE(b);
    CAPTURE(x);
    CHECK(std::abs(regularized_incomplete_beta(a, b, x) - boost::math::ibeta(a, b, x)) <= 1e-10);
  }
  CHECK(regularized_incomplete_beta(2, 3, 0.0) == 0.0);
  CHECK(regularized_incomplete_beta(2, 3, 1.0) == 1.0);
  CHECK(code_of([] { regularized_incomplete_beta(0, 1, 0.5); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("two-sided t tail agrees with Boost") {
  for (double df : {0.5, 1.0, 2.5, 7.0, 30.0, 300.0, 1e5}) {
    for (double t : {0.0, 0.1, 1.0, 2.0, 4.5, -3.0, 12.0}) {
      CAPTURE(df);
      CAPTURE(t);
      CHECK(std::abs(student_t_two_sided_p(t, df) - boost_two_sided(t, df)) <= 1e-10);
    }
  }
  CHECK(student_t_two_sided_p(INFINITY, 3) == 0.0);
}

TEST_CASE("Welch test on a textbook pair") {
  std::vector<double> a{27.5, 21.0, 19.0, 23.6, 17.0, 17.9, 16.9, 20.1, 21.9, 22.6, 23.1, 19.6,
                        19.0, 21.7, 21.4};
  std::vector<double> b{27.1, 22.0, 20.8, 23.4, 23.4, 23.5, 25.8, 22.0, 24.8, 20.2, 21.9, 22.1,
                        22.9, 20.5, 24.4};
  auto r = welch_t_test(a, b);
  // Published worked-example values, rounded.
  CHECK(r.t == doctest::Approx(-2.46).epsilon(1e-2));
  CHECK(r.df == doctest::Approx(24.99).epsilon(1e-3));
  CHECK(r.p_value == doctest::Approx(0.021).epsilon(2e-2));
  CHECK(std::abs(r.p_value - boost_two_sided(r.t, r.df)) <= 1e-10);
}

TEST_CASE("Welch on random groups matches a direct computation") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g;
  std::uniform_int_distribution<int> sizes(2, 40);
  for (int i = 0; i < 100; ++i) {
    std::vector<double> a(sizes(rng)), b(sizes(rng));
    const double shift = g(rng), scale = 0.1 + std::fabs(g(rng));
    for (auto& x : a) x = g(rng);
    for (auto& x : b) x = shift + scale * g(rng);
    auto r = welch_t_test(a, b);
    auto ma = summarize(a), mb = summarize(b);
    const double va = ma.stddev * ma.stddev / a.size(), vb = mb.stddev * mb.stddev / b.size();
    const double t = (ma.mean - mb.mean) / std::sqrt(va + vb);
    const double df =
        (va + vb) * (va + vb) / (va * va / (a.size() - 1.0) + vb * vb / (b.size() - 1.0));
    CHECK(r.t == doctest::Approx(t).epsilon(1e-12));
    CHECK(r.df == doctest::Approx(df).epsilon(1e-12));
    CHECK(std::abs(r.p_value - boost_two_sided(t, df)) <= 1e-9);
  }
}

TEST_CASE("Welch edge cases") {
  std::vector<double> one{1.0}, two{1.0, 2.0};
  CHECK(code_of([&] { welch_t_test(one, two); }) == ErrorCode::kInsufficientData);

  std::vector<double> same{2.0, 2.0, 2.0}, other{3.0, 3.0};
  auto eq = welch_t_test(same, same);
  CHECK(eq.zero_variance);
  CHECK(eq.p_value == 1.0);
  auto ne = welch_t_test(same, other);
  CHECK(ne.zero_variance);
  CHECK(ne.p_value == 0.0);
  CHECK(std::isinf(ne.t));

  // One group constant, the other not: finite and well-defined.
  std::vector<double> varied{1.0, 2.0, 4.0};
  auto mixed = welch_t_test(same, varied);
  CHECK_FALSE(mixed.zero_variance);
  CHECK(mixed.df == doctest::Approx(2.0));
}

TEST_CASE("summaries use the sample standard deviation") {
  std::vector<double> v{2, 4, 4, 4, 5, 5, 7, 9};
  auto s = summarize(v);
  CHECK(s.n == 8);
  CHECK(s.mean == 5.0);
  CHECK(s.stddev == doctest::Approx(std::sqrt(32.0 / 7.0)));
  CHECK(summarize({}).n == 0);
}

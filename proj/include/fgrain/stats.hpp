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

#ifndef FGRAIN_STATS_HPP_
#define FGRAIN_STATS_HPP_

#include <cstddef>
#include <span>

namespace fgrain {

struct GroupSummary {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation (n - 1)
  std::size_t n = 0;
};

GroupSummary summarize(std::span<const double> values);

// I_x(a, b) for a, b > 0 and x in [0, 1].
double regularized_incomplete_beta(double a, double b, double x);

// P(|T| >= |t|) for Student's t with df > 0 degrees of freedom.
double student_t_two_sided_p(double t, double df);

struct WelchResult {
  double t = 0.0;
  double df = 0.0;
  double p_value = 1.0;
  // Both groups have zero variance: t is undefined. p is reported as 1 when
  // the means agree and 0 otherwise.
  bool zero_variance = false;
};

// Two-sided Welch test with Welch-Satterthwaite degrees of freedom. Throws
// kInsufficientData when either group has fewer than two values.
WelchResult welch_t_test(std::span<const double> a, std::span<const double> b);

}  // namespace fgrain

#endif  // FGRAIN_STATS_HPP_

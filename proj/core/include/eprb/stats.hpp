// Copyright 2026 The eprb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EPRB_STATS_HPP_
#define EPRB_STATS_HPP_

#include <array>
#include <cstdint>

#include "eprb/types.hpp"

namespace eprb {

// Two-sided 95% normal quantile.
inline constexpr double kZ95 = 1.959963984540054;

struct Interval {
  double lo;
  double hi;
  bool contains(double x) const { return lo <= x && x <= hi; }
};

// Wilson score interval for `successes` out of `n` (n > 0). Clamped to [0, 1]
// and widened, if rounding requires it, so it always contains successes/n.
Interval wilson_interval(std::uint64_t successes, std::uint64_t n, double z = kZ95);

// 5-sigma binomial band sqrt(p(1-p)/n) * 5. For p at 0 or 1 (within 1e-12)
// the band is floored at 10/n so that a single stray count is still caught.
double binomial_band(double p, std::uint64_t n, double sigmas = 5.0);

struct EmpiricalDistribution {
  std::array<std::uint64_t, 4> counts{};
  std::uint64_t n = 0;
  std::array<double, 4> p_hat{};
  std::array<Interval, 4> ci{};

  static EmpiricalDistribution from_counts(const std::array<std::uint64_t, 4>& counts);

  std::uint64_t count(JointOutcome j) const { return counts[index_of(j)]; }
  double frequency(JointOutcome j) const { return p_hat[index_of(j)]; }
  std::uint64_t opposite_count() const { return counts[2] + counts[3]; }
  double opposite_frequency() const;
  Interval opposite_interval() const;
};

}  // namespace eprb

#endif  // EPRB_STATS_HPP_

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

#include "eprb/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eprb {

Interval wilson_interval(std::uint64_t successes, std::uint64_t n, double z) {
  if (n == 0) throw std::invalid_argument("wilson_interval with n = 0");
  if (successes > n) throw std::invalid_argument("wilson_interval with successes > n");
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (p + z2 / (2.0 * nn)) / denom;
  const double half = (z / denom) * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
  double lo = std::clamp(center - half, 0.0, 1.0);
  double hi = std::clamp(center + half, 0.0, 1.0);
  lo = std::min(lo, p);
  hi = std::max(hi, p);
  return {lo, hi};
}

double binomial_band(double p, std::uint64_t n, double sigmas) {
  if (n == 0) throw std::invalid_argument("binomial_band with n = 0");
  const double nn = static_cast<double>(n);
  const double var = p * (1.0 - p);
  if (var < 1e-12) return std::max(sigmas * std::sqrt(std::max(var, 0.0) / nn), 10.0 / nn);
  return sigmas * std::sqrt(var / nn);
}

EmpiricalDistribution EmpiricalDistribution::from_counts(
    const std::array<std::uint64_t, 4>& counts) {
  EmpiricalDistribution e;
  e.counts = counts;
  for (std::uint64_t c : counts) e.n += c;
  if (e.n == 0) throw std::invalid_argument("empirical distribution with no trials");
  for (std::size_t i = 0; i < 4; ++i) {
    e.p_hat[i] = static_cast<double>(counts[i]) / static_cast<double>(e.n);
    e.ci[i] = wilson_interval(counts[i], e.n);
  }
  return e;
}

double EmpiricalDistribution::opposite_frequency() const {
  return static_cast<double>(opposite_count()) / static_cast<double>(n);
}

Interval EmpiricalDistribution::opposite_interval() const {
  return wilson_interval(opposite_count(), n);
}

}  // namespace eprb

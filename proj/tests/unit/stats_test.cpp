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

#include <cmath>
#include <random>

#include "gtest/gtest.h"

namespace eprb {
namespace {

// Independent route to the score interval: the endpoints are the roots in p
// of (phat - p)^2 = z^2 p (1 - p) / n, found by bisection on each side of phat.
double score_gap(double p, double phat, double n, double z) {
  return (phat - p) * (phat - p) - z * z * p * (1.0 - p) / n;
}

double bisect(double lo, double hi, double phat, double n, double z) {
  // Invariant: gap(lo) and gap(hi) have opposite signs.
  double glo = score_gap(lo, phat, n, z);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double g = score_gap(mid, phat, n, z);
    if ((g <= 0) == (glo <= 0)) {
      lo = mid;
      glo = g;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Interval oracle_wilson(std::uint64_t k, std::uint64_t n, double z) {
  const double phat = static_cast<double>(k) / n;
  const double nn = static_cast<double>(n);
  const double lo = k == 0 ? 0.0 : bisect(0.0, phat, phat, nn, z);
  const double hi = k == n ? 1.0 : bisect(phat, 1.0, phat, nn, z);
  return {lo, hi};
}

TEST(Wilson, MatchesScoreEquationRoots) {
  std::mt19937_64 gen(4);
  for (int i = 0; i < 3000; ++i) {
    const std::uint64_t n = std::uniform_int_distribution<std::uint64_t>(1, 2000000)(gen);
    const std::uint64_t k = std::uniform_int_distribution<std::uint64_t>(0, n)(gen);
    const Interval a = wilson_interval(k, n);
    const Interval b = oracle_wilson(k, n, kZ95);
    ASSERT_NEAR(a.lo, b.lo, 1e-9) << k << "/" << n;
    ASSERT_NEAR(a.hi, b.hi, 1e-9) << k << "/" << n;
  }
}

TEST(Wilson, Examples) {
  // Frozen from the bisection oracle.
  const Interval o = oracle_wilson(50, 100, kZ95);
  const Interval w = wilson_interval(50, 100);
  EXPECT_NEAR(w.lo, o.lo, 1e-12);
  EXPECT_NEAR(w.hi, o.hi, 1e-12);
  EXPECT_NEAR(w.lo, 0.4038315, 1e-6);
  EXPECT_NEAR(w.hi, 0.5961685, 1e-6);

  const Interval zero = wilson_interval(0, 10);
  EXPECT_EQ(zero.lo, 0.0);
  EXPECT_GT(zero.hi, 0.0);
  const Interval all = wilson_interval(10, 10);
  EXPECT_EQ(all.hi, 1.0);
  EXPECT_LT(all.lo, 1.0);
}

TEST(Wilson, ContainsEstimateAndStaysInUnitInterval) {
  std::mt19937_64 gen(5);
  for (int i = 0; i < 20000; ++i) {
    const std::uint64_t n = std::uniform_int_distribution<std::uint64_t>(1, 1000)(gen);
    const std::uint64_t k = std::uniform_int_distribution<std::uint64_t>(0, n)(gen);
    const Interval w = wilson_interval(k, n);
    const double p = static_cast<double>(k) / n;
    ASSERT_LE(0.0, w.lo);
    ASSERT_LE(w.hi, 1.0);
    ASSERT_TRUE(w.contains(p));
  }
}

TEST(Wilson, RejectsBadCounts) {
  EXPECT_THROW(wilson_interval(0, 0), std::invalid_argument);
  EXPECT_THROW(wilson_interval(3, 2), std::invalid_argument);
}

TEST(BinomialBand, Values) {
  EXPECT_DOUBLE_EQ(binomial_band(0.25, 100), 5.0 * std::sqrt(0.1875 / 100));
  EXPECT_DOUBLE_EQ(binomial_band(0.5, 10000, 3.0), 3.0 * 0.005);
  // Degenerate probabilities still leave room for a few stray counts.
  EXPECT_DOUBLE_EQ(binomial_band(0.0, 1000), 0.01);
  EXPECT_DOUBLE_EQ(binomial_band(1.0, 1000), 0.01);
  EXPECT_THROW(binomial_band(0.5, 0), std::invalid_argument);
}

TEST(EmpiricalDistribution, FromCounts) {
  const auto e = EmpiricalDistribution::from_counts({3, 1, 4, 2});
  EXPECT_EQ(e.n, 10u);
  EXPECT_DOUBLE_EQ(e.frequency(JointOutcome::UpUp), 0.3);
  EXPECT_EQ(e.count(JointOutcome::UpDown), 4u);
  EXPECT_EQ(e.opposite_count(), 6u);
  EXPECT_DOUBLE_EQ(e.opposite_frequency(), 0.6);
  const Interval oi = e.opposite_interval();
  const Interval oo = oracle_wilson(6, 10, kZ95);
  EXPECT_NEAR(oi.lo, oo.lo, 1e-12);
  EXPECT_NEAR(oi.hi, oo.hi, 1e-12);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_TRUE(e.ci[i].contains(e.p_hat[i]));
  EXPECT_THROW(EmpiricalDistribution::from_counts({0, 0, 0, 0}), std::invalid_argument);
}

}  // namespace
}  // namespace eprb

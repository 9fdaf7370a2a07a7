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

#include "eprb/quantum.hpp"

#include <boost/math/special_functions/cos_pi.hpp>
#include <boost/math/special_functions/sin_pi.hpp>
#include <numbers>

namespace eprb {

SinCos sin_cos_deg(double deg) {
  const double turns = deg / 180.0;
  return {boost::math::sin_pi(turns), boost::math::cos_pi(turns)};
}

SingletAmplitudes singlet_amplitudes(const SettingPair& pair) {
  const auto [s, c] = sin_cos_deg(half_difference(pair));
  const double r = 1.0 / std::numbers::sqrt2;
  SingletAmplitudes out;
  out.amp[index_of(JointOutcome::UpUp)] = {0.0, -r * s};
  out.amp[index_of(JointOutcome::DownDown)] = {0.0, r * s};
  out.amp[index_of(JointOutcome::UpDown)] = {r * c, 0.0};
  out.amp[index_of(JointOutcome::DownUp)] = {-r * c, 0.0};
  return out;
}

double joint_probability(const SettingPair& pair, JointOutcome outcome) {
  const auto [s, c] = sin_cos_deg(half_difference(pair));
  return is_opposite(outcome) ? 0.5 * c * c : 0.5 * s * s;
}

JointDistribution quantum_distribution(const SettingPair& pair) {
  const auto [s, c] = sin_cos_deg(half_difference(pair));
  const double same = 0.5 * s * s;
  const double opp = 0.5 * c * c;
  return JointDistribution({same, same, opp, opp});
}

double opposite_spin_probability(const SettingPair& pair) {
  const double c = sin_cos_deg(half_difference(pair)).cos;
  return c * c;
}

double correlation(const SettingPair& pair) {
  const auto [s, c] = sin_cos_deg(half_difference(pair));
  return s * s - c * c;
}

}  // namespace eprb

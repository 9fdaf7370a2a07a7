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

// Exact singlet-state predictions for two spin-1/2 particles measured along
// directions theta (particle 1) and phi (particle 2).

#ifndef EPRB_QUANTUM_HPP_
#define EPRB_QUANTUM_HPP_

#include <array>
#include <complex>

#include "eprb/types.hpp"

namespace eprb {

// sin and cos of an angle given in degrees, exact at multiples of 90.
struct SinCos {
  double sin;
  double cos;
};
SinCos sin_cos_deg(double deg);

// Expansion coefficients of the singlet in the product basis
// {|s1,theta>|s2,phi>}, canonical outcome order. With d = (theta - phi)/2:
//   ++ : -i sin(d)/sqrt2    -- : +i sin(d)/sqrt2
//   +- :    cos(d)/sqrt2    -+ :   -cos(d)/sqrt2
// The phase convention is kept as written so amplitudes compare exactly.
struct SingletAmplitudes {
  std::array<std::complex<double>, 4> amp;

  const std::complex<double>& operator[](JointOutcome j) const {
    return amp[index_of(j)];
  }
};

SingletAmplitudes singlet_amplitudes(const SettingPair& pair);

// (1/2) sin^2 d for ++ and --, (1/2) cos^2 d for +- and -+.
double joint_probability(const SettingPair& pair, JointOutcome outcome);

JointDistribution quantum_distribution(const SettingPair& pair);

// P(+-) + P(-+) = cos^2 d.
double opposite_spin_probability(const SettingPair& pair);

// E = P(++) + P(--) - P(+-) - P(-+) = -cos(theta - phi).
double correlation(const SettingPair& pair);

}  // namespace eprb

#endif  // EPRB_QUANTUM_HPP_

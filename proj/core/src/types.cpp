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

#include "eprb/types.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace eprb {

double normalize_angle(double x) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument("angle must be finite");
  }
  double r = std::fmod(x, 360.0);
  if (r < 0.0) r += 360.0;
  // -tiny + 360 rounds to 360.
  if (r >= 360.0) r = 0.0;
  // Collapse -0.0 so equal angles compare and serialize identically.
  return r == 0.0 ? 0.0 : r;
}

Angle Angle::degrees(double x) { return Angle(normalize_angle(x)); }

double Angle::rad() const { return deg_ * std::numbers::pi / 180.0; }

char label_char(SettingLabel l) {
  switch (l) {
    case SettingLabel::A: return 'a';
    case SettingLabel::B: return 'b';
    case SettingLabel::C: return 'c';
  }
  return '?';
}

std::optional<SettingLabel> parse_label(char c) {
  switch (c) {
    case 'a': case 'A': return SettingLabel::A;
    case 'b': case 'B': return SettingLabel::B;
    case 'c': case 'C': return SettingLabel::C;
    default: return std::nullopt;
  }
}

LabelBinding::LabelBinding(double a_deg, double b_deg, double c_deg)
    : angles_{Angle::degrees(a_deg), Angle::degrees(b_deg), Angle::degrees(c_deg)} {}

std::optional<SettingLabel> LabelBinding::label_at(Angle angle) const {
  std::optional<SettingLabel> found;
  for (SettingLabel l : kAllLabels) {
    if (angle_of(l) == angle) {
      if (found) return std::nullopt;  // ambiguous
      found = l;
    }
  }
  return found;
}

SettingPair SettingPair::of_degrees(double theta_deg, double phi_deg) {
  return SettingPair{Angle::degrees(theta_deg), Angle::degrees(phi_deg),
                     std::nullopt, std::nullopt};
}

SettingPair SettingPair::of_labels(const LabelBinding& binding, SettingLabel theta,
                                   SettingLabel phi) {
  return SettingPair{binding.angle_of(theta), binding.angle_of(phi), theta, phi};
}

std::optional<std::pair<SettingLabel, SettingLabel>> resolve_labels(
    const LabelBinding& binding, const SettingPair& pair) {
  std::optional<SettingLabel> t = pair.theta_label;
  std::optional<SettingLabel> p = pair.phi_label;
  if (t && binding.angle_of(*t) != pair.theta) t.reset();
  if (p && binding.angle_of(*p) != pair.phi) p.reset();
  if (!t) t = binding.label_at(pair.theta);
  if (!p) p = binding.label_at(pair.phi);
  if (!t || !p) return std::nullopt;
  return std::make_pair(*t, *p);
}

double half_difference(const SettingPair& pair) {
  return (pair.theta.deg() - pair.phi.deg()) / 2.0;
}

std::string describe(const SettingPair& pair) {
  std::ostringstream os;
  os << "(theta=" << pair.theta.deg();
  if (pair.theta_label) os << "[" << label_char(*pair.theta_label) << "]";
  os << ", phi=" << pair.phi.deg();
  if (pair.phi_label) os << "[" << label_char(*pair.phi_label) << "]";
  os << ")";
  return os.str();
}

JointOutcome make_joint(Outcome a, Outcome b) {
  if (a == b) return a == Outcome::Up ? JointOutcome::UpUp : JointOutcome::DownDown;
  return a == Outcome::Up ? JointOutcome::UpDown : JointOutcome::DownUp;
}

Outcome first(JointOutcome j) {
  return (j == JointOutcome::UpUp || j == JointOutcome::UpDown) ? Outcome::Up
                                                                 : Outcome::Down;
}

Outcome second(JointOutcome j) {
  return (j == JointOutcome::UpUp || j == JointOutcome::DownUp) ? Outcome::Up
                                                                 : Outcome::Down;
}

std::string_view to_string(JointOutcome j) {
  switch (j) {
    case JointOutcome::UpUp: return "++";
    case JointOutcome::DownDown: return "--";
    case JointOutcome::UpDown: return "+-";
    case JointOutcome::DownUp: return "-+";
  }
  return "??";
}

std::optional<JointOutcome> parse_joint(std::string_view s) {
  for (JointOutcome j : kAllJointOutcomes) {
    if (to_string(j) == s) return j;
  }
  return std::nullopt;
}

JointDistribution::JointDistribution(const std::array<double, 4>& p) : p_(p) {
  double sum = 0.0;
  for (double v : p_) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument("joint distribution entry outside [0, 1]");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw std::invalid_argument("joint distribution does not sum to 1");
  }
}

}  // namespace eprb

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

#ifndef EPRB_TYPES_HPP_
#define EPRB_TYPES_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace eprb {

// Thrown when a setting pair lies outside what a model can measure, e.g. a
// free angle handed to a label-only model.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Magnet direction in degrees, always held in [0, 360).
class Angle {
 public:
  constexpr Angle() = default;

  // Throws std::invalid_argument for NaN or infinite input.
  static Angle degrees(double x);

  constexpr double deg() const { return deg_; }
  double rad() const;

  friend constexpr bool operator==(Angle, Angle) = default;
  friend constexpr auto operator<=>(Angle, Angle) = default;

 private:
  constexpr explicit Angle(double normalized) : deg_(normalized) {}
  double deg_ = 0.0;
};

double normalize_angle(double x);

enum class SettingLabel : unsigned char { A = 0, B = 1, C = 2 };

inline constexpr std::array<SettingLabel, 3> kAllLabels = {
    SettingLabel::A, SettingLabel::B, SettingLabel::C};

char label_char(SettingLabel l);
std::optional<SettingLabel> parse_label(char c);

// Maps each of the three labels onto a concrete angle. Two labels may share
// an angle.
class LabelBinding {
 public:
  LabelBinding() : LabelBinding(0.0, 120.0, 240.0) {}
  LabelBinding(double a_deg, double b_deg, double c_deg);

  Angle angle_of(SettingLabel l) const {
    return angles_[static_cast<std::size_t>(l)];
  }

  // The unique label bound to `angle`. Empty when nothing or more than one
  // label is bound there.
  std::optional<SettingLabel> label_at(Angle angle) const;

  friend bool operator==(const LabelBinding&, const LabelBinding&) = default;

 private:
  std::array<Angle, 3> angles_;
};

struct SettingPair {
  Angle theta;  // magnet 1
  Angle phi;    // magnet 2
  std::optional<SettingLabel> theta_label;
  std::optional<SettingLabel> phi_label;

  static SettingPair of_degrees(double theta_deg, double phi_deg);
  static SettingPair of_labels(const LabelBinding& binding, SettingLabel theta,
                               SettingLabel phi);

  bool labeled() const { return theta_label.has_value() && phi_label.has_value(); }
  bool equal_angles() const { return theta == phi; }

  friend bool operator==(const SettingPair&, const SettingPair&) = default;
};

// Labels for both sides of `pair` under `binding`. Labels carried by the pair
// win when they agree with the binding; otherwise each angle must be bound to
// exactly one label.
std::optional<std::pair<SettingLabel, SettingLabel>> resolve_labels(
    const LabelBinding& binding, const SettingPair& pair);

// Signed (theta - phi) / 2 in degrees, from the normalized angles. Only ever
// used under sin^2 / cos^2, so the 180 degree ambiguity is harmless.
double half_difference(const SettingPair& pair);

std::string describe(const SettingPair& pair);

enum class Outcome : unsigned char { Up = 0, Down = 1 };

constexpr Outcome opposite(Outcome o) {
  return o == Outcome::Up ? Outcome::Down : Outcome::Up;
}
constexpr char sign_char(Outcome o) { return o == Outcome::Up ? '+' : '-'; }

// The four joint results in canonical order ++, --, +-, -+. Every serialized
// vector and every inverse-CDF walk follows this order.
enum class JointOutcome : unsigned char {
  UpUp = 0,
  DownDown = 1,
  UpDown = 2,
  DownUp = 3,
};

inline constexpr std::array<JointOutcome, 4> kAllJointOutcomes = {
    JointOutcome::UpUp, JointOutcome::DownDown, JointOutcome::UpDown,
    JointOutcome::DownUp};

constexpr std::size_t index_of(JointOutcome j) { return static_cast<std::size_t>(j); }

JointOutcome make_joint(Outcome a, Outcome b);
Outcome first(JointOutcome j);
Outcome second(JointOutcome j);
inline bool is_opposite(JointOutcome j) {
  return j == JointOutcome::UpDown || j == JointOutcome::DownUp;
}
std::string_view to_string(JointOutcome j);  // "++", "--", "+-", "-+"
std::optional<JointOutcome> parse_joint(std::string_view s);

// Normalized probability vector over the four joint outcomes.
class JointDistribution {
 public:
  static constexpr double kSumTolerance = 1e-12;

  // Throws std::invalid_argument unless every entry is in [0, 1] and the
  // entries sum to one within kSumTolerance.
  explicit JointDistribution(const std::array<double, 4>& p);

  double operator[](JointOutcome j) const { return p_[index_of(j)]; }
  const std::array<double, 4>& values() const { return p_; }

  double opposite() const { return p_[2] + p_[3]; }
  double same() const { return p_[0] + p_[1]; }
  // P(particle 1 Up), P(particle 2 Up).
  double marginal_a_up() const { return p_[0] + p_[2]; }
  double marginal_b_up() const { return p_[0] + p_[3]; }
  // E[AB] with Up = +1 and Down = -1.
  double correlation() const { return same() - opposite(); }

 private:
  std::array<double, 4> p_;
};

}  // namespace eprb

#endif  // EPRB_TYPES_HPP_

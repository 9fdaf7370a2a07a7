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

// Hidden-variable models of the two-magnet spin experiment, plus a wrapper
// that lets the exact quantum predictions run through the same contract.
//
//  * MerminModel   - each particle carries a pre-assigned outcome per setting
//                    label ("instruction set"); outcome A depends on theta
//                    only and B on phi only.
//  * GrandmaModel  - the source fixes one system spin state for every
//                    possible setting pair, drawn with the singlet
//                    probabilities of that pair; A and B depend on both
//                    settings.
//  * QuantumModel  - draws from the singlet distribution on first query.
//
// All randomness is consumed in prepare() or, for lazily sampled states, in
// the first measure() of a pair. Measuring a prepared state twice at the same
// pair always gives the same outcome.

#ifndef EPRB_HVMODELS_HPP_
#define EPRB_HVMODELS_HPP_

#include <array>
#include <boost/rational.hpp>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "eprb/random.hpp"
#include "eprb/types.hpp"

namespace eprb {

using Fraction = boost::rational<int>;

// --- Mermin instruction sets -------------------------------------------------

struct InstructionSet {
  std::array<Outcome, 3> spin1;  // particle 1, indexed by label
  std::array<Outcome, 3> spin2;  // particle 2, always the opposite of spin1

  Outcome particle1(SettingLabel l) const { return spin1[static_cast<std::size_t>(l)]; }
  Outcome particle2(SettingLabel l) const { return spin2[static_cast<std::size_t>(l)]; }

  // Builds the set from particle 1's spins; particle 2 is forced opposite.
  static InstructionSet from_particle1(Outcome a, Outcome b, Outcome c);

  // "++-/--+" (particle 1 for a,b,c then particle 2).
  std::string to_string() const;

  friend bool operator==(const InstructionSet&, const InstructionSet&) = default;
};

inline constexpr std::size_t kInstructionSetCount = 8;

// All eight instruction sets. Set i has particle 1 spins given by the bits of
// i read a (most significant), b, c, with Up = 0: set 0 is (+,+,+), set 1 is
// (+,+,-), ..., set 7 is (-,-,-).
std::vector<InstructionSet> mermin_enumerate();

JointOutcome mermin_measure(const InstructionSet& set, SettingLabel theta,
                            SettingLabel phi);

// Fraction of the six unequal label pairs that give opposite spins.
Fraction mermin_opposite_fraction(const InstructionSet& set);

using MerminWeights = std::array<double, kInstructionSetCount>;

MerminWeights uniform_mermin_weights();
// Throws std::invalid_argument unless entries are in [0, 1] and sum to 1
// within 1e-12.
void validate_mermin_weights(const MerminWeights& weights);

// --- Grandma assignment tables ------------------------------------------------

// |s1,theta>|s2,phi>; shares the ++, --, +-, -+ encoding with JointOutcome.
using SystemSpinState = JointOutcome;

// ((1/2)sin^2 d, (1/2)sin^2 d, (1/2)cos^2 d, (1/2)cos^2 d), d = (theta-phi)/2.
std::array<double, 4> grandma_state_probabilities(const SettingPair& pair);

// One inverse-CDF draw in canonical order.
SystemSpinState grandma_sample_state(const SettingPair& pair, RandomStream& rng);

// Pre-existing system spin state for each setting pair of one trial.
//
// Labeled tables hold the nine label pairs, filled eagerly. Lazy tables cover
// arbitrary angles: an entry is drawn from the trial stream the first time
// its (theta, phi) is queried and then kept. A lazy table mutates on lookup
// and must not be shared across threads.
class AssignmentTable {
 public:
  // Throws std::invalid_argument if an entry breaks the equal-angle or
  // 180-degree constraints under `binding`. Entries are row-major in
  // (theta label, phi label).
  static AssignmentTable labeled(const LabelBinding& binding,
                                 const std::array<SystemSpinState, 9>& entries);
  static AssignmentTable lazy(RandomStream stream);

  bool is_labeled() const { return binding_.has_value(); }
  std::size_t size() const { return is_labeled() ? 9 : memo_.size(); }

  // Labeled tables throw DomainError for a pair that does not resolve to one
  // bound label on each side.
  SystemSpinState state_for(const SettingPair& pair);
  std::optional<SystemSpinState> peek(const SettingPair& pair) const;

  SystemSpinState entry(SettingLabel theta, SettingLabel phi) const;
  const std::optional<LabelBinding>& binding() const { return binding_; }

 private:
  AssignmentTable() = default;
  std::size_t slot_for(const SettingPair& pair) const;

  std::optional<LabelBinding> binding_;
  std::array<SystemSpinState, 9> entries_{};
  std::map<std::pair<double, double>, SystemSpinState> memo_;
  std::optional<RandomStream> stream_;
};

// The assignment shown as a worked example in the original presentation of
// the model, for labels bound a, b, c:
//   aa +-   ab --   ac --
//   ba --   bb +-   bc ++
//   ca ++   cb ++   cc -+
std::array<SystemSpinState, 9> reference_assignment();

// --- Hidden state and the model contract ---------------------------------------

struct MerminState {
  std::size_t set_index;
  InstructionSet set;
};

struct GrandmaState {
  AssignmentTable table;
};

struct QuantumState {
  RandomStream stream;
  std::map<std::pair<double, double>, JointOutcome> memo;
};

using HiddenState = std::variant<MerminState, GrandmaState, QuantumState>;

// Distribution of the hidden component that decides the outcome at a pair.
// `support` names the hidden values in a fixed order.
struct LambdaDistribution {
  std::vector<std::string> support;
  std::vector<double> p;
};

double total_variation(const LambdaDistribution& x, const LambdaDistribution& y);

class Model {
 public:
  virtual ~Model() = default;

  virtual std::string_view id() const = 0;

  // Throws DomainError if the model cannot measure at `pair`.
  virtual void check_pair(const SettingPair& pair) const = 0;

  virtual HiddenState prepare(RandomStream& rng) const = 0;

  // Deterministic given (state, pair). Throws DomainError for a pair outside
  // the model's domain and std::invalid_argument for a foreign state.
  virtual JointOutcome measure(HiddenState& state, const SettingPair& pair) const = 0;

  virtual LambdaDistribution lambda_distribution(const SettingPair& pair) const = 0;
  virtual JointDistribution exact_distribution(const SettingPair& pair) const = 0;

  // Compact record of the hidden data consulted at `pair`, if any.
  virtual std::optional<std::string> hidden_summary(const HiddenState& state,
                                                    const SettingPair& pair) const;
};

class MerminModel final : public Model {
 public:
  explicit MerminModel(LabelBinding binding = {},
                       MerminWeights weights = uniform_mermin_weights());

  std::string_view id() const override { return "mermin"; }
  void check_pair(const SettingPair& pair) const override;
  HiddenState prepare(RandomStream& rng) const override;
  JointOutcome measure(HiddenState& state, const SettingPair& pair) const override;
  // The distribution over the eight instruction sets. It is defined without
  // reference to the settings, so it is the same at every pair.
  LambdaDistribution lambda_distribution(const SettingPair& pair) const override;
  JointDistribution exact_distribution(const SettingPair& pair) const override;
  std::optional<std::string> hidden_summary(const HiddenState& state,
                                            const SettingPair& pair) const override;

  // Distribution of (spin1(theta), spin2(phi)) induced by the weights.
  JointDistribution pair_projection(const SettingPair& pair) const;

  const LabelBinding& binding() const { return binding_; }
  const MerminWeights& weights() const { return weights_; }
  std::pair<SettingLabel, SettingLabel> resolve(const SettingPair& pair) const;

 private:
  LabelBinding binding_;
  MerminWeights weights_;
  std::vector<InstructionSet> sets_;
};

class GrandmaModel final : public Model {
 public:
  enum class Mode { Labeled, Continuous };

  // Labeled: nine entries over `binding`, sampled eagerly.
  explicit GrandmaModel(LabelBinding binding = {});
  static GrandmaModel continuous();

  std::string_view id() const override { return "grandma"; }
  Mode mode() const { return mode_; }
  const LabelBinding& binding() const { return binding_; }

  void check_pair(const SettingPair& pair) const override;
  HiddenState prepare(RandomStream& rng) const override;
  JointOutcome measure(HiddenState& state, const SettingPair& pair) const override;
  // Law of the pre-existing system spin state at `pair`. Defined at every
  // angle pair in both modes; a labeled table is a finite restriction of it.
  LambdaDistribution lambda_distribution(const SettingPair& pair) const override;
  JointDistribution exact_distribution(const SettingPair& pair) const override;
  std::optional<std::string> hidden_summary(const HiddenState& state,
                                            const SettingPair& pair) const override;

 private:
  GrandmaModel(Mode mode, LabelBinding binding) : mode_(mode), binding_(binding) {}
  Mode mode_;
  LabelBinding binding_;
};

class QuantumModel final : public Model {
 public:
  std::string_view id() const override { return "quantum"; }
  void check_pair(const SettingPair&) const override {}
  HiddenState prepare(RandomStream& rng) const override;
  JointOutcome measure(HiddenState& state, const SettingPair& pair) const override;
  LambdaDistribution lambda_distribution(const SettingPair& pair) const override;
  JointDistribution exact_distribution(const SettingPair& pair) const override;
};

HiddenState mermin_prepare(const MerminWeights& weights, RandomStream& rng);

// Labeled mode when `binding` is given, lazy continuous mode otherwise.
HiddenState grandma_prepare(const std::optional<LabelBinding>& binding,
                            RandomStream& rng);

// Throws std::invalid_argument if `state` is not a GrandmaState.
JointOutcome grandma_measure(HiddenState& state, const SettingPair& pair);

inline JointDistribution model_exact_distribution(const Model& model,
                                                  const SettingPair& pair) {
  return model.exact_distribution(pair);
}

inline LambdaDistribution model_lambda_distribution(const Model& model,
                                                    const SettingPair& pair) {
  return model.lambda_distribution(pair);
}

}  // namespace eprb

#endif  // EPRB_HVMODELS_HPP_

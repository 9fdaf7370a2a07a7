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

#include "eprb/hvmodels.hpp"

#include <cmath>
#include <stdexcept>

#include "eprb/quantum.hpp"

namespace eprb {
namespace {

std::size_t lab(SettingLabel l) { return static_cast<std::size_t>(l); }

std::size_t slot(SettingLabel theta, SettingLabel phi) { return 3 * lab(theta) + lab(phi); }

bool differ_by_half_turn(Angle x, Angle y) {
  return std::abs(x.deg() - y.deg()) == 180.0;
}

// Equal settings forbid ++ / --; settings 180 degrees apart forbid +- / -+.
bool admissible(const SettingPair& pair, SystemSpinState s) {
  if (pair.equal_angles()) return is_opposite(s);
  if (differ_by_half_turn(pair.theta, pair.phi)) return !is_opposite(s);
  return true;
}

std::string state_summary(SystemSpinState s) {
  return "state=" + std::string(to_string(s));
}

LambdaDistribution four_state_lambda(const std::array<double, 4>& p) {
  LambdaDistribution out;
  for (JointOutcome j : kAllJointOutcomes) out.support.emplace_back(to_string(j));
  out.p.assign(p.begin(), p.end());
  return out;
}

}  // namespace

// --- instruction sets ----------------------------------------------------------

InstructionSet InstructionSet::from_particle1(Outcome a, Outcome b, Outcome c) {
  return {{a, b, c}, {opposite(a), opposite(b), opposite(c)}};
}

std::string InstructionSet::to_string() const {
  std::string s;
  for (Outcome o : spin1) s += sign_char(o);
  s += '/';
  for (Outcome o : spin2) s += sign_char(o);
  return s;
}

std::vector<InstructionSet> mermin_enumerate() {
  std::vector<InstructionSet> sets;
  sets.reserve(kInstructionSetCount);
  for (unsigned i = 0; i < kInstructionSetCount; ++i) {
    auto bit = [i](unsigned k) { return ((i >> k) & 1U) ? Outcome::Down : Outcome::Up; };
    sets.push_back(InstructionSet::from_particle1(bit(2), bit(1), bit(0)));
  }
  return sets;
}

JointOutcome mermin_measure(const InstructionSet& set, SettingLabel theta,
                            SettingLabel phi) {
  return make_joint(set.particle1(theta), set.particle2(phi));
}

Fraction mermin_opposite_fraction(const InstructionSet& set) {
  int opposite_count = 0;
  int total = 0;
  for (SettingLabel t : kAllLabels) {
    for (SettingLabel p : kAllLabels) {
      if (t == p) continue;
      ++total;
      if (is_opposite(mermin_measure(set, t, p))) ++opposite_count;
    }
  }
  return Fraction(opposite_count, total);
}

MerminWeights uniform_mermin_weights() {
  MerminWeights w;
  w.fill(1.0 / kInstructionSetCount);
  return w;
}

void validate_mermin_weights(const MerminWeights& weights) {
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0 && w <= 1.0)) {
      throw std::invalid_argument("instruction-set weight outside [0, 1]");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("instruction-set weights do not sum to 1");
  }
}

// --- assignment tables -------------------------------------------------------

std::array<double, 4> grandma_state_probabilities(const SettingPair& pair) {
  const auto [s, c] = sin_cos_deg(half_difference(pair));
  const double same = 0.5 * s * s;
  const double opp = 0.5 * c * c;
  return {same, same, opp, opp};
}

SystemSpinState grandma_sample_state(const SettingPair& pair, RandomStream& rng) {
  const auto p = grandma_state_probabilities(pair);
  return kAllJointOutcomes[rng.pick(p)];
}

AssignmentTable AssignmentTable::labeled(const LabelBinding& binding,
                                         const std::array<SystemSpinState, 9>& entries) {
  for (SettingLabel t : kAllLabels) {
    for (SettingLabel p : kAllLabels) {
      if (!admissible(SettingPair::of_labels(binding, t, p), entries[slot(t, p)])) {
        throw std::invalid_argument(
            std::string("assignment entry ") + label_char(t) + label_char(p) +
            " is impossible for its angle pair");
      }
    }
  }
  AssignmentTable table;
  table.binding_ = binding;
  table.entries_ = entries;
  return table;
}

AssignmentTable AssignmentTable::lazy(RandomStream stream) {
  AssignmentTable table;
  table.stream_ = std::move(stream);
  return table;
}

std::size_t AssignmentTable::slot_for(const SettingPair& pair) const {
  const auto labels = resolve_labels(*binding_, pair);
  if (!labels) {
    throw DomainError("setting pair " + describe(pair) +
                      " is not a unique pair of bound labels");
  }
  return slot(labels->first, labels->second);
}

SystemSpinState AssignmentTable::state_for(const SettingPair& pair) {
  if (is_labeled()) return entries_[slot_for(pair)];
  const auto key = std::make_pair(pair.theta.deg(), pair.phi.deg());
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  const SystemSpinState s = grandma_sample_state(pair, *stream_);
  memo_.emplace(key, s);
  return s;
}

std::optional<SystemSpinState> AssignmentTable::peek(const SettingPair& pair) const {
  if (is_labeled()) return entries_[slot_for(pair)];
  const auto it = memo_.find({pair.theta.deg(), pair.phi.deg()});
  if (it == memo_.end()) return std::nullopt;
  return it->second;
}

SystemSpinState AssignmentTable::entry(SettingLabel theta, SettingLabel phi) const {
  if (!is_labeled()) throw std::logic_error("entry() on a lazy assignment table");
  return entries_[slot(theta, phi)];
}

std::array<SystemSpinState, 9> reference_assignment() {
  using J = JointOutcome;
  return {J::UpDown,   J::DownDown, J::DownDown,  //
          J::DownDown, J::UpDown,   J::UpUp,      //
          J::UpUp,     J::UpUp,     J::DownUp};
}

// --- contract ------------------------------------------------------------------

double total_variation(const LambdaDistribution& x, const LambdaDistribution& y) {
  if (x.support != y.support || x.p.size() != y.p.size()) {
    throw std::invalid_argument("total variation over different supports");
  }
  double l1 = 0.0;
  for (std::size_t i = 0; i < x.p.size(); ++i) l1 += std::abs(x.p[i] - y.p[i]);
  return 0.5 * l1;
}

std::optional<std::string> Model::hidden_summary(const HiddenState&,
                                                 const SettingPair&) const {
  return std::nullopt;
}

HiddenState mermin_prepare(const MerminWeights& weights, RandomStream& rng) {
  validate_mermin_weights(weights);
  static const std::vector<InstructionSet> sets = mermin_enumerate();
  const std::size_t i = rng.pick(weights);
  return MerminState{i, sets[i]};
}

HiddenState grandma_prepare(const std::optional<LabelBinding>& binding,
                            RandomStream& rng) {
  if (!binding) return GrandmaState{AssignmentTable::lazy(rng)};
  std::array<SystemSpinState, 9> entries{};
  for (SettingLabel t : kAllLabels) {
    for (SettingLabel p : kAllLabels) {
      entries[slot(t, p)] = grandma_sample_state(SettingPair::of_labels(*binding, t, p), rng);
    }
  }
  return GrandmaState{AssignmentTable::labeled(*binding, entries)};
}

JointOutcome grandma_measure(HiddenState& state, const SettingPair& pair) {
  auto* g = std::get_if<GrandmaState>(&state);
  if (g == nullptr) throw std::invalid_argument("grandma_measure needs a GrandmaState");
  return g->table.state_for(pair);
}

// --- MerminModel ---------------------------------------------------------------

MerminModel::MerminModel(LabelBinding binding, MerminWeights weights)
    : binding_(binding), weights_(weights), sets_(mermin_enumerate()) {
  validate_mermin_weights(weights_);
}

std::pair<SettingLabel, SettingLabel> MerminModel::resolve(const SettingPair& pair) const {
  const auto labels = resolve_labels(binding_, pair);
  if (!labels) {
    throw DomainError("instruction-set model only measures at bound labels; got " +
                      describe(pair));
  }
  return *labels;
}

void MerminModel::check_pair(const SettingPair& pair) const { (void)resolve(pair); }

HiddenState MerminModel::prepare(RandomStream& rng) const {
  const std::size_t i = rng.pick(weights_);
  return MerminState{i, sets_[i]};
}

JointOutcome MerminModel::measure(HiddenState& state, const SettingPair& pair) const {
  const auto* m = std::get_if<MerminState>(&state);
  if (m == nullptr) throw std::invalid_argument("instruction-set model got a foreign state");
  const auto [t, p] = resolve(pair);
  return mermin_measure(m->set, t, p);
}

LambdaDistribution MerminModel::lambda_distribution(const SettingPair& pair) const {
  check_pair(pair);
  LambdaDistribution out;
  for (std::size_t i = 0; i < sets_.size(); ++i) {
    out.support.push_back("set" + std::to_string(i));
    out.p.push_back(weights_[i]);
  }
  return out;
}

JointDistribution MerminModel::pair_projection(const SettingPair& pair) const {
  const auto [t, p] = resolve(pair);
  std::array<double, 4> acc{};
  for (std::size_t i = 0; i < sets_.size(); ++i) {
    acc[index_of(mermin_measure(sets_[i], t, p))] += weights_[i];
  }
  return JointDistribution(acc);
}

JointDistribution MerminModel::exact_distribution(const SettingPair& pair) const {
  return pair_projection(pair);
}

std::optional<std::string> MerminModel::hidden_summary(const HiddenState& state,
                                                       const SettingPair&) const {
  const auto* m = std::get_if<MerminState>(&state);
  if (m == nullptr) return std::nullopt;
  return "set=" + std::to_string(m->set_index) + ":" + m->set.to_string();
}

// --- GrandmaModel ----------------------------------------------------------------

GrandmaModel::GrandmaModel(LabelBinding binding) : GrandmaModel(Mode::Labeled, binding) {}

GrandmaModel GrandmaModel::continuous() { return GrandmaModel(Mode::Continuous, {}); }

void GrandmaModel::check_pair(const SettingPair& pair) const {
  if (mode_ == Mode::Labeled && !resolve_labels(binding_, pair)) {
    throw DomainError("labeled assignment table has no entry for " + describe(pair));
  }
}

HiddenState GrandmaModel::prepare(RandomStream& rng) const {
  if (mode_ == Mode::Continuous) return grandma_prepare(std::nullopt, rng);
  return grandma_prepare(binding_, rng);
}

JointOutcome GrandmaModel::measure(HiddenState& state, const SettingPair& pair) const {
  return grandma_measure(state, pair);
}

LambdaDistribution GrandmaModel::lambda_distribution(const SettingPair& pair) const {
  return four_state_lambda(grandma_state_probabilities(pair));
}

JointDistribution GrandmaModel::exact_distribution(const SettingPair& pair) const {
  return JointDistribution(grandma_state_probabilities(pair));
}

std::optional<std::string> GrandmaModel::hidden_summary(const HiddenState& state,
                                                        const SettingPair& pair) const {
  const auto* g = std::get_if<GrandmaState>(&state);
  if (g == nullptr) return std::nullopt;
  if (const auto s = g->table.peek(pair)) return state_summary(*s);
  return std::nullopt;
}

// --- QuantumModel ------------------------------------------------------------------

HiddenState QuantumModel::prepare(RandomStream& rng) const {
  return QuantumState{rng, {}};
}

JointOutcome QuantumModel::measure(HiddenState& state, const SettingPair& pair) const {
  auto* q = std::get_if<QuantumState>(&state);
  if (q == nullptr) throw std::invalid_argument("quantum model got a foreign state");
  const auto key = std::make_pair(pair.theta.deg(), pair.phi.deg());
  if (auto it = q->memo.find(key); it != q->memo.end()) return it->second;
  const JointOutcome j = kAllJointOutcomes[q->stream.pick(quantum_distribution(pair).values())];
  q->memo.emplace(key, j);
  return j;
}

LambdaDistribution QuantumModel::lambda_distribution(const SettingPair& pair) const {
  return four_state_lambda(quantum_distribution(pair).values());
}

JointDistribution QuantumModel::exact_distribution(const SettingPair& pair) const {
  return quantum_distribution(pair);
}

}  // namespace eprb

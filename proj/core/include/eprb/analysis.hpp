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

// Checks that compare models against the singlet predictions and against
// each other. Everything here reports numbers with thresholds; nothing
// decides whether a model is "local".

#ifndef EPRB_ANALYSIS_HPP_
#define EPRB_ANALYSIS_HPP_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "eprb/hvmodels.hpp"
#include "eprb/stats.hpp"
#include "eprb/types.hpp"

namespace eprb {

// Absolute tolerance for checks computed in closed form.
inline constexpr double kExactTolerance = 1e-12;

// --- CHSH --------------------------------------------------------------------

struct ChshSettings {
  Angle a1, a2;  // magnet 1
  Angle b1, b2;  // magnet 2

  static ChshSettings of_degrees(double a1, double a2, double b1, double b2);
};

using CorrelationFn = std::function<double(const SettingPair&)>;

// S = E(a1,b1) - E(a1,b2) + E(a2,b1) + E(a2,b2).
double chsh_value(const CorrelationFn& e, const ChshSettings& s);

// Same combination over label settings. A three-label model has to reuse
// one label among the four CHSH slots.
struct LabelChsh {
  SettingLabel a1, a2, b1, b2;
};
int chsh_value(const InstructionSet& set, const LabelChsh& s);

// Largest |S| over the eight deterministic instruction sets and all 81 label
// assignments. Any mixture of the sets is a convex combination of these
// vertices, so this bounds every mixture too.
int max_abs_chsh_over_instruction_sets();

// --- Mermin bound --------------------------------------------------------------

struct MerminCertificateRow {
  std::size_t index;
  InstructionSet set;
  Fraction opposite_fraction;       // over the six unequal label pairs
  bool equal_pairs_all_opposite;    // the three pairs with theta = phi
};

struct MerminCertificate {
  std::vector<MerminCertificateRow> rows;
  Fraction min_fraction;
  Fraction max_fraction;
  std::size_t attaining_min = 0;
};

MerminCertificate certify_mermin_bound();
void print_certificate(std::ostream& out, const MerminCertificate& cert);

// --- audit reports ----------------------------------------------------------------

enum class Provenance { Exact, Empirical };

struct AuditCheck {
  std::string name;
  double metric = 0.0;
  double threshold = 0.0;
  bool passed = false;
  Provenance provenance = Provenance::Exact;
};

struct AuditReport {
  std::string title;
  std::vector<AuditCheck> checks;

  bool all_passed() const;
  // The largest metric among checks whose name starts with `prefix`.
  double max_metric(const std::string& prefix = "") const;
};

// Records a check; passed iff metric <= threshold.
void add_check(AuditReport& report, std::string name, double metric, double threshold,
               Provenance provenance);

std::string report_to_json(const std::vector<AuditReport>& reports);
std::string report_to_text(const std::vector<AuditReport>& reports);

// Runs `n_per_pair` trials at each pair (seed mixed per pair) and compares
// every outcome frequency with the singlet value p. One check per pair and
// outcome; threshold binomial_band(p, n).
AuditReport quantum_agreement(const Model& model, const std::vector<SettingPair>& pairs,
                              std::uint64_t n_per_pair, std::uint64_t seed);

// Marginal of particle 1 must not depend on phi, nor particle 2's on theta.
// Pairs are grouped by shared theta (resp. phi); each group needs two or more
// distinct remote settings, and at least one group per side must exist.
// Exact mode uses exact_distribution with kExactTolerance; empirical mode runs
// n trials per pair and uses a 5 sigma two-sample band.
enum class CheckMode { Exact, Empirical };
AuditReport no_signaling_check(const Model& model, const std::vector<SettingPair>& pairs,
                               CheckMode mode, std::uint64_t n = 0, std::uint64_t seed = 0);

// Total-variation distance between the model's hidden-state distributions at
// two setting pairs. Zero (within kExactTolerance) passes; a positive value
// means the hidden state's law depends on the settings that will be used.
// Pairs must lie in the domain of the model's lambda_distribution.
AuditReport measurement_independence_audit(const Model& model, const SettingPair& pair1,
                                           const SettingPair& pair2);

// --- opposite-spin curve ------------------------------------------------------------

struct CurveRow {
  double delta_deg;
  double p_opposite_emp;
  Interval ci;
  double p_opposite_qm;
  Fraction mermin_floor;
};

// Pair (delta, 0) for each delta; n trials each, seed mixed per row.
std::vector<CurveRow> opposite_spin_curve(const Model& model, const std::vector<double>& deltas,
                                          std::uint64_t n, std::uint64_t seed);

// Header delta_deg,p_opposite_emp,ci_lo,ci_hi,p_opposite_qm,mermin_floor.
void write_curve_csv(std::ostream& out, const std::vector<CurveRow>& rows);

}  // namespace eprb

#endif  // EPRB_ANALYSIS_HPP_

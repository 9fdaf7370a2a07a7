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

#include "eprb/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <map>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "eprb/engine.hpp"
#include "eprb/quantum.hpp"

namespace eprb {
namespace {

int spin_value(Outcome o) { return o == Outcome::Up ? 1 : -1; }

std::string pair_name(const SettingPair& p) {
  return "theta=" + format_double(p.theta.deg()) + ",phi=" + format_double(p.phi.deg());
}

std::string fraction_string(const Fraction& f) {
  if (f.denominator() == 1) return std::to_string(f.numerator());
  return std::to_string(f.numerator()) + "/" + std::to_string(f.denominator());
}

double to_double(const Fraction& f) {
  return static_cast<double>(f.numerator()) / static_cast<double>(f.denominator());
}

const char* provenance_name(Provenance p) {
  return p == Provenance::Exact ? "exact" : "empirical";
}

}  // namespace

// --- CHSH ------------------------------------------------------------------------

ChshSettings ChshSettings::of_degrees(double a1, double a2, double b1, double b2) {
  return {Angle::degrees(a1), Angle::degrees(a2), Angle::degrees(b1), Angle::degrees(b2)};
}

double chsh_value(const CorrelationFn& e, const ChshSettings& s) {
  auto at = [&e](Angle x, Angle y) { return e(SettingPair{x, y, std::nullopt, std::nullopt}); };
  return at(s.a1, s.b1) - at(s.a1, s.b2) + at(s.a2, s.b1) + at(s.a2, s.b2);
}

int chsh_value(const InstructionSet& set, const LabelChsh& s) {
  auto at = [&set](SettingLabel x, SettingLabel y) {
    return spin_value(set.particle1(x)) * spin_value(set.particle2(y));
  };
  return at(s.a1, s.b1) - at(s.a1, s.b2) + at(s.a2, s.b1) + at(s.a2, s.b2);
}

int max_abs_chsh_over_instruction_sets() {
  int best = 0;
  for (const InstructionSet& set : mermin_enumerate()) {
    for (SettingLabel a1 : kAllLabels)
      for (SettingLabel a2 : kAllLabels)
        for (SettingLabel b1 : kAllLabels)
          for (SettingLabel b2 : kAllLabels) {
            best = std::max(best, std::abs(chsh_value(set, LabelChsh{a1, a2, b1, b2})));
          }
  }
  return best;
}

// --- Mermin bound ------------------------------------------------------------------

MerminCertificate certify_mermin_bound() {
  MerminCertificate cert;
  const auto sets = mermin_enumerate();
  for (std::size_t i = 0; i < sets.size(); ++i) {
    bool all_opposite = true;
    for (SettingLabel l : kAllLabels) {
      all_opposite = all_opposite && is_opposite(mermin_measure(sets[i], l, l));
    }
    cert.rows.push_back({i, sets[i], mermin_opposite_fraction(sets[i]), all_opposite});
  }
  cert.min_fraction = cert.rows.front().opposite_fraction;
  cert.max_fraction = cert.rows.front().opposite_fraction;
  for (const auto& row : cert.rows) {
    cert.min_fraction = std::min(cert.min_fraction, row.opposite_fraction);
    cert.max_fraction = std::max(cert.max_fraction, row.opposite_fraction);
  }
  cert.attaining_min = static_cast<std::size_t>(
      std::count_if(cert.rows.begin(), cert.rows.end(), [&cert](const auto& r) {
        return r.opposite_fraction == cert.min_fraction;
      }));
  return cert;
}

void print_certificate(std::ostream& out, const MerminCertificate& cert) {
  out << "set  particle1  particle2  opposite_unequal  opposite_equal\n";
  for (const auto& row : cert.rows) {
    const std::string s = row.set.to_string();
    out << std::left << std::setw(5) << row.index << std::setw(11) << s.substr(0, 3)
        << std::setw(11) << s.substr(4, 3) << std::setw(18)
        << fraction_string(row.opposite_fraction)
        << (row.equal_pairs_all_opposite ? "3/3" : "not all") << '\n';
  }
  out << "min_opposite_fraction " << fraction_string(cert.min_fraction) << '\n';
  out << "max_opposite_fraction " << fraction_string(cert.max_fraction) << '\n';
  out << "sets_attaining_min " << cert.attaining_min << '\n';
}

// --- reports ----------------------------------------------------------------------

bool AuditReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

double AuditReport::max_metric(const std::string& prefix) const {
  double m = 0.0;
  for (const auto& c : checks) {
    if (c.name.rfind(prefix, 0) == 0) m = std::max(m, c.metric);
  }
  return m;
}

void add_check(AuditReport& report, std::string name, double metric, double threshold,
               Provenance provenance) {
  if (!std::isfinite(metric) || !std::isfinite(threshold)) {
    throw std::logic_error("audit metric is not finite: " + name);
  }
  report.checks.push_back(
      {std::move(name), metric, threshold, metric <= threshold, provenance});
}

std::string report_to_json(const std::vector<AuditReport>& reports) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json jr;
    jr["title"] = r.title;
    jr["passed"] = r.all_passed();
    jr["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : r.checks) {
      nlohmann::ordered_json jc;
      jc["name"] = c.name;
      jc["metric"] = c.metric;
      jc["threshold"] = c.threshold;
      jc["passed"] = c.passed;
      jc["provenance"] = provenance_name(c.provenance);
      jr["checks"].push_back(std::move(jc));
    }
    arr.push_back(std::move(jr));
  }
  return arr.dump(2) + "\n";
}

std::string report_to_text(const std::vector<AuditReport>& reports) {
  std::ostringstream os;
  for (const auto& r : reports) {
    std::size_t width = 5;
    for (const auto& c : r.checks) width = std::max(width, c.name.size());
    os << "== " << r.title << " (" << (r.all_passed() ? "PASS" : "FAIL") << ")\n";
    os << std::left << std::setw(static_cast<int>(width) + 2) << "check" << std::setw(24)
       << "metric" << std::setw(24) << "threshold" << std::setw(7) << "result"
       << "provenance\n";
    for (const auto& c : r.checks) {
      os << std::left << std::setw(static_cast<int>(width) + 2) << c.name << std::setw(24)
         << format_double(c.metric) << std::setw(24) << format_double(c.threshold)
         << std::setw(7) << (c.passed ? "PASS" : "FAIL") << provenance_name(c.provenance)
         << '\n';
    }
    os << '\n';
  }
  return os.str();
}

// --- audits -------------------------------------------------------------------------

AuditReport quantum_agreement(const Model& model, const std::vector<SettingPair>& pairs,
                              std::uint64_t n_per_pair, std::uint64_t seed) {
  if (pairs.empty()) throw std::invalid_argument("quantum_agreement needs at least one pair");
  if (n_per_pair == 0) throw std::invalid_argument("quantum_agreement needs n > 0");
  for (const auto& p : pairs) model.check_pair(p);
  AuditReport report;
  report.title = "quantum_agreement " + std::string(model.id());
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const SettingPair& pair = pairs[k];
    const EmpiricalDistribution emp =
        run_counts(model, FixedPair{pair}, n_per_pair, mix_seed(seed, k));
    const JointDistribution qm = quantum_distribution(pair);
    for (JointOutcome j : kAllJointOutcomes) {
      add_check(report,
                "quantum_agreement[" + pair_name(pair) + "][" + std::string(to_string(j)) + "]",
                std::abs(emp.frequency(j) - qm[j]), binomial_band(qm[j], n_per_pair),
                Provenance::Empirical);
    }
  }
  return report;
}

AuditReport no_signaling_check(const Model& model, const std::vector<SettingPair>& pairs,
                               CheckMode mode, std::uint64_t n, std::uint64_t seed) {
  if (mode == CheckMode::Empirical && n == 0) {
    throw std::invalid_argument("empirical no-signaling check needs n > 0");
  }
  for (const auto& p : pairs) model.check_pair(p);

  // P(Up) for each side at each pair.
  struct Marginals {
    double a_up;
    double b_up;
  };
  std::vector<Marginals> marg;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    if (mode == CheckMode::Exact) {
      const JointDistribution d = model.exact_distribution(pairs[k]);
      marg.push_back({d.marginal_a_up(), d.marginal_b_up()});
    } else {
      const auto e = run_counts(model, FixedPair{pairs[k]}, n, mix_seed(seed, k));
      marg.push_back({e.p_hat[0] + e.p_hat[2], e.p_hat[0] + e.p_hat[3]});
    }
  }

  // side 0: particle 1, grouped by theta, remote = phi. side 1: mirror.
  AuditReport report;
  report.title = "no_signaling " + std::string(model.id()) +
                 (mode == CheckMode::Exact ? " (exact)" : " (empirical)");
  bool groups[2] = {false, false};
  for (int side = 0; side < 2; ++side) {
    std::map<double, std::vector<std::size_t>> by_local;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      by_local[side == 0 ? pairs[k].theta.deg() : pairs[k].phi.deg()].push_back(k);
    }
    for (const auto& [local, members] : by_local) {
      for (std::size_t x = 0; x < members.size(); ++x) {
        for (std::size_t y = x + 1; y < members.size(); ++y) {
          const std::size_t i = members[x];
          const std::size_t j = members[y];
          const double remote_i = side == 0 ? pairs[i].phi.deg() : pairs[i].theta.deg();
          const double remote_j = side == 0 ? pairs[j].phi.deg() : pairs[j].theta.deg();
          if (remote_i == remote_j) continue;
          groups[side] = true;
          const double mi = side == 0 ? marg[i].a_up : marg[i].b_up;
          const double mj = side == 0 ? marg[j].a_up : marg[j].b_up;
          double threshold = kExactTolerance;
          if (mode == CheckMode::Empirical) {
            const double pooled = 0.5 * (mi + mj);
            threshold = std::sqrt(2.0) * binomial_band(pooled, n);
          }
          const std::string remote = side == 0 ? "phi" : "theta";
          add_check(report,
                    std::string(side == 0 ? "no_signaling[A|theta=" : "no_signaling[B|phi=") +
                        format_double(local) + "](" + remote + "=" + format_double(remote_i) +
                        " vs " + format_double(remote_j) + ")",
                    std::abs(mi - mj), threshold,
                    mode == CheckMode::Exact ? Provenance::Exact : Provenance::Empirical);
        }
      }
    }
  }
  if (!groups[0] || !groups[1]) {
    throw std::invalid_argument(
        "no-signaling check needs pairs sharing theta with different phi, and the mirror case");
  }
  return report;
}

AuditReport measurement_independence_audit(const Model& model, const SettingPair& pair1,
                                           const SettingPair& pair2) {
  AuditReport report;
  report.title = "measurement_independence " + std::string(model.id());
  add_check(report,
            "measurement_independence[" + pair_name(pair1) + " vs " + pair_name(pair2) + "]",
            total_variation(model.lambda_distribution(pair1), model.lambda_distribution(pair2)),
            kExactTolerance, Provenance::Exact);
  return report;
}

// --- curve --------------------------------------------------------------------------

std::vector<CurveRow> opposite_spin_curve(const Model& model, const std::vector<double>& deltas,
                                          std::uint64_t n, std::uint64_t seed) {
  if (deltas.empty()) throw std::invalid_argument("opposite_spin_curve needs deltas");
  if (n == 0) throw std::invalid_argument("opposite_spin_curve needs n > 0");
  std::vector<SettingPair> pairs;
  for (double d : deltas) {
    pairs.push_back(SettingPair::of_degrees(d, 0.0));
    model.check_pair(pairs.back());
  }
  std::vector<CurveRow> rows;
  for (std::size_t k = 0; k < deltas.size(); ++k) {
    const auto e = run_counts(model, FixedPair{pairs[k]}, n, mix_seed(seed, k));
    rows.push_back({deltas[k], e.opposite_frequency(), e.opposite_interval(),
                    opposite_spin_probability(pairs[k]), Fraction(1, 3)});
  }
  return rows;
}

void write_curve_csv(std::ostream& out, const std::vector<CurveRow>& rows) {
  out << "delta_deg,p_opposite_emp,ci_lo,ci_hi,p_opposite_qm,mermin_floor\n";
  for (const auto& r : rows) {
    out << format_double(r.delta_deg) << ',' << format_double(r.p_opposite_emp) << ','
        << format_double(r.ci.lo) << ',' << format_double(r.ci.hi) << ','
        << format_double(r.p_opposite_qm) << ',' << format_double(to_double(r.mermin_floor))
        << '\n';
  }
}

}  // namespace eprb

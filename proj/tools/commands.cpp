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

#include "commands.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>
#include <thread>
#include <unistd.h>

#include "eprb/analysis.hpp"
#include "eprb/engine.hpp"

namespace eprb::cli {
namespace {

namespace fs = std::filesystem;

struct Setup {
  std::unique_ptr<Model> model;
  SettingPolicy policy;
};

// Everything that can be rejected is rejected here, before any trial runs or
// any file is touched.
Setup prepare(const RunConfig& config) {
  try {
    Setup s{make_model(config), make_policy(config)};
    validate_run(*s.model, s.policy);
    return s;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

fs::path out_dir(const RunConfig& config) {
  const fs::path dir(config.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  return dir;
}

bool is_labeled(const RunConfig& c) {
  return c.model.id == "mermin" || (c.model.id == "grandma" && c.model.grandma_mode == "labeled");
}

std::vector<SettingPair> label_pairs(const LabelBinding& b) {
  std::vector<SettingPair> out;
  for (SettingLabel t : kAllLabels) {
    for (SettingLabel p : kAllLabels) out.push_back(SettingPair::of_labels(b, t, p));
  }
  return out;
}

void print_distribution_row(std::ostream& out, const SettingPair& pair,
                            const EmpiricalDistribution& emp, const Model& model) {
  const JointDistribution exact = model.exact_distribution(pair);
  out << describe(pair) << "  n=" << emp.n << '\n';
  out << "  outcome  count       p_hat       ci95                       exact\n";
  for (JointOutcome j : kAllJointOutcomes) {
    const std::size_t i = index_of(j);
    std::ostringstream ci;
    ci << '[' << std::fixed << std::setprecision(6) << emp.ci[i].lo << ", " << emp.ci[i].hi << ']';
    out << "  " << std::left << std::setw(9) << to_string(j) << std::setw(12) << emp.counts[i]
        << std::fixed << std::setprecision(6) << std::setw(12) << emp.p_hat[i] << std::setw(27)
        << ci.str() << exact[j] << '\n';
    out.unsetf(std::ios::floatfield);
  }
}

}  // namespace

void write_file_atomic(const fs::path& path, std::string_view contents) {
  const fs::path tmp = path.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + tmp.string() + " for writing");
    f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    f.flush();
    if (!f) {
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw IoError("write to " + tmp.string() + " failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw IoError("cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

void cmd_simulate(const RunConfig& config, std::ostream& out) {
  const Setup s = prepare(config);
  RunOptions opts;
  opts.shards = std::max(1U, std::thread::hardware_concurrency());
  const std::vector<RunRecord> records =
      run_experiment(*s.model, s.policy, config.n, config.seed, opts);

  std::ostringstream jsonl;
  write_records(jsonl, records);
  std::ostringstream csv;
  if (!records.empty()) write_summary_csv(csv, estimate(records));

  const fs::path dir = out_dir(config);
  write_file_atomic(dir / "records.jsonl", jsonl.str());
  if (!records.empty()) write_file_atomic(dir / "summary.csv", csv.str());

  out << "model " << s.model->id() << "  trials " << records.size() << "  seed " << config.seed
      << '\n';
  if (records.empty()) {
    out << "no trials run; summary.csv not written\n";
    return;
  }
  // Per-pair breakdown against the exact prediction, in angle order.
  std::map<std::pair<double, double>, SettingPair> pairs;
  for (const RunRecord& r : records) {
    pairs.try_emplace({r.theta.deg(), r.phi.deg()}, SettingPair{r.theta, r.phi, {}, {}});
  }
  for (const auto& [key, pair] : pairs) {
    print_distribution_row(out, pair, estimate(records, pair), *s.model);
  }
  out << "records: " << (dir / "records.jsonl").string() << '\n'
      << "summary: " << (dir / "summary.csv").string() << '\n';
}

void cmd_certify(std::ostream& out) { print_certificate(out, certify_mermin_bound()); }

void cmd_audit(const RunConfig& config, std::ostream& out) {
  const Setup s = prepare(config);
  const Model& model = *s.model;
  const LabelBinding binding = make_binding(config);
  if (config.n == 0) throw ConfigError("audit needs n > 0");

  std::vector<SettingPair> agreement_pairs;
  std::vector<SettingPair> signaling_pairs;
  if (config.audit && !config.audit->pairs.empty()) {
    for (const auto& [t, p] : config.audit->pairs) {
      agreement_pairs.push_back(SettingPair::of_degrees(t, p));
    }
    signaling_pairs = agreement_pairs;
  } else if (is_labeled(config)) {
    agreement_pairs = label_pairs(binding);
    signaling_pairs = agreement_pairs;
  } else {
    for (int d = 0; d < 360; d += 30) agreement_pairs.push_back(SettingPair::of_degrees(d, 0));
    signaling_pairs = {SettingPair::of_degrees(0, 0), SettingPair::of_degrees(0, 90),
                       SettingPair::of_degrees(0, 180), SettingPair::of_degrees(90, 0),
                       SettingPair::of_degrees(180, 0)};
  }

  std::vector<std::pair<SettingPair, SettingPair>> independence;
  if (config.audit && !config.audit->independence.empty()) {
    for (const auto& [x, y] : config.audit->independence) {
      independence.emplace_back(SettingPair::of_degrees(x.first, x.second),
                                SettingPair::of_degrees(y.first, y.second));
    }
  } else if (config.model.id == "mermin") {
    independence.emplace_back(SettingPair::of_labels(binding, SettingLabel::A, SettingLabel::A),
                              SettingPair::of_labels(binding, SettingLabel::A, SettingLabel::B));
  } else {
    independence.emplace_back(SettingPair::of_degrees(0, 0), SettingPair::of_degrees(0, 90));
  }

  std::vector<AuditReport> reports;
  try {
    reports.push_back(quantum_agreement(model, agreement_pairs, config.n, config.seed));
    reports.push_back(no_signaling_check(model, signaling_pairs, CheckMode::Exact));
    reports.push_back(no_signaling_check(model, signaling_pairs, CheckMode::Empirical, config.n,
                                         mix_seed(config.seed, 0x5167)));
    AuditReport mi;
    for (const auto& [x, y] : independence) {
      AuditReport one = measurement_independence_audit(model, x, y);
      mi.title = one.title;
      mi.checks.insert(mi.checks.end(), one.checks.begin(), one.checks.end());
    }
    reports.push_back(std::move(mi));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  const std::string text = report_to_text(reports);
  const fs::path dir = out_dir(config);
  write_file_atomic(dir / "audit.json", report_to_json(reports));
  write_file_atomic(dir / "audit.txt", text);
  out << text;
  out << "reports: " << (dir / "audit.json").string() << ", " << (dir / "audit.txt").string()
      << '\n';
}

void cmd_scan(const RunConfig& config, std::ostream& out) {
  if (config.policy.kind != "delta_scan") {
    throw ConfigError("scan needs a delta_scan policy (e.g. --policy scan:0:360:30)");
  }
  const Setup s = prepare(config);
  if (config.n == 0) throw ConfigError("scan needs n > 0");
  const auto rows = opposite_spin_curve(*s.model, config.policy.deltas, config.n, config.seed);
  std::ostringstream csv;
  write_curve_csv(csv, rows);
  const fs::path dir = out_dir(config);
  write_file_atomic(dir / "curve.csv", csv.str());
  out << csv.str();
  out << "curve: " << (dir / "curve.csv").string() << '\n';
}

std::string error_line(std::string_view kind, std::string_view message) {
  nlohmann::ordered_json j;
  j["error"] = std::string(kind);
  j["message"] = std::string(message);
  return j.dump();
}

}  // namespace eprb::cli

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

#include "eprb/engine.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <nlohmann/json.hpp>
#include <ostream>
#include <thread>

namespace eprb {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::vector<SettingPair> all_label_pairs(const LabelBinding& b) {
  std::vector<SettingPair> out;
  for (SettingLabel t : kAllLabels) {
    for (SettingLabel p : kAllLabels) out.push_back(SettingPair::of_labels(b, t, p));
  }
  return out;
}

// Runs one trial without building a record.
JointOutcome simulate_one(const Model& model, const SettingPolicy& policy,
                          std::uint64_t seed, std::uint64_t trial_index,
                          SettingPair& pair_out, HiddenState* state_out) {
  RandomStream rng = derive_substream(seed, trial_index);
  pair_out = draw_settings(policy, rng, trial_index);
  HiddenState state = model.prepare(rng);
  const JointOutcome outcome = model.measure(state, pair_out);
  if (state_out != nullptr) *state_out = std::move(state);
  return outcome;
}

}  // namespace

void validate_policy(const SettingPolicy& policy) {
  if (const auto* scan = std::get_if<DeltaScan>(&policy)) {
    if (scan->deltas.empty()) throw std::invalid_argument("delta scan needs at least one delta");
    for (double d : scan->deltas) {
      if (!std::isfinite(d)) throw std::invalid_argument("delta scan value is not finite");
    }
  }
}

std::vector<SettingPair> policy_support(const SettingPolicy& policy) {
  return std::visit(
      overloaded{
          [](const FixedPair& f) { return std::vector<SettingPair>{f.pair}; },
          [](const UniformLabelPairs& u) { return all_label_pairs(u.binding); },
          [](const IndependentUniformLabels& u) { return all_label_pairs(u.binding); },
          [](const DeltaScan& d) {
            std::vector<SettingPair> out;
            for (double delta : d.deltas) out.push_back(SettingPair::of_degrees(delta, 0.0));
            return out;
          },
      },
      policy);
}

SettingPair draw_settings(const SettingPolicy& policy, RandomStream& rng,
                          std::uint64_t trial_index) {
  return std::visit(
      overloaded{
          [](const FixedPair& f) { return f.pair; },
          [&rng](const UniformLabelPairs& u) {
            const std::size_t k = rng.below(9);
            return SettingPair::of_labels(u.binding, kAllLabels[k / 3], kAllLabels[k % 3]);
          },
          [&rng](const IndependentUniformLabels& u) {
            const SettingLabel t = kAllLabels[rng.below(3)];
            const SettingLabel p = kAllLabels[rng.below(3)];
            return SettingPair::of_labels(u.binding, t, p);
          },
          [trial_index](const DeltaScan& d) {
            return SettingPair::of_degrees(d.deltas[trial_index % d.deltas.size()], 0.0);
          },
      },
      policy);
}

void validate_run(const Model& model, const SettingPolicy& policy) {
  validate_policy(policy);
  for (const SettingPair& pair : policy_support(policy)) model.check_pair(pair);
}

RunRecord run_trial(const Model& model, const SettingPolicy& policy, std::uint64_t seed,
                    std::uint64_t trial_index, bool record_hidden) {
  SettingPair pair;
  HiddenState state;
  RunRecord r;
  r.trial_index = trial_index;
  r.outcome = simulate_one(model, policy, seed, trial_index, pair, &state);
  r.theta = pair.theta;
  r.phi = pair.phi;
  r.model_id = std::string(model.id());
  if (record_hidden) r.hidden_summary = model.hidden_summary(state, pair);
  return r;
}

std::vector<RunRecord> run_experiment(const Model& model, const SettingPolicy& policy,
                                      std::uint64_t n_trials, std::uint64_t seed,
                                      const RunOptions& options) {
  validate_run(model, policy);
  std::vector<RunRecord> records(n_trials);
  const std::uint64_t shards =
      std::clamp<std::uint64_t>(options.shards, 1, std::max<std::uint64_t>(n_trials, 1));
  auto work = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i) {
      records[i] = run_trial(model, policy, seed, i, options.record_hidden);
    }
  };
  if (shards == 1) {
    work(0, n_trials);
    return records;
  }
  std::vector<std::jthread> threads;
  const std::uint64_t chunk = (n_trials + shards - 1) / shards;
  for (std::uint64_t s = 0; s < shards; ++s) {
    const std::uint64_t begin = s * chunk;
    const std::uint64_t end = std::min(n_trials, begin + chunk);
    if (begin < end) threads.emplace_back(work, begin, end);
  }
  threads.clear();  // joins
  return records;
}

void run_experiment(const Model& model, const SettingPolicy& policy,
                    std::uint64_t n_trials, std::uint64_t seed,
                    const std::function<void(const RunRecord&)>& sink,
                    bool record_hidden) {
  validate_run(model, policy);
  for (std::uint64_t i = 0; i < n_trials; ++i) {
    sink(run_trial(model, policy, seed, i, record_hidden));
  }
}

EmpiricalDistribution run_counts(const Model& model, const SettingPolicy& policy,
                                 std::uint64_t n_trials, std::uint64_t seed) {
  validate_run(model, policy);
  std::array<std::uint64_t, 4> counts{};
  SettingPair pair;
  for (std::uint64_t i = 0; i < n_trials; ++i) {
    ++counts[index_of(simulate_one(model, policy, seed, i, pair, nullptr))];
  }
  return EmpiricalDistribution::from_counts(counts);
}

EmpiricalDistribution estimate(std::span<const RunRecord> records,
                               const std::optional<SettingPair>& filter) {
  std::array<std::uint64_t, 4> counts{};
  std::uint64_t kept = 0;
  for (const RunRecord& r : records) {
    if (filter && (r.theta != filter->theta || r.phi != filter->phi)) continue;
    ++counts[index_of(r.outcome)];
    ++kept;
  }
  if (kept == 0) throw NoDataError("no records left to estimate from");
  return EmpiricalDistribution::from_counts(counts);
}

// --- serialization -------------------------------------------------------------

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string to_jsonl(const RunRecord& record) {
  nlohmann::ordered_json j;
  j["trial"] = record.trial_index;
  j["theta_deg"] = record.theta.deg();
  j["phi_deg"] = record.phi.deg();
  j["a"] = std::string(1, sign_char(first(record.outcome)));
  j["b"] = std::string(1, sign_char(second(record.outcome)));
  j["model"] = record.model_id;
  if (record.hidden_summary) {
    j["hidden"] = *record.hidden_summary;
  } else {
    j["hidden"] = nullptr;
  }
  return j.dump();
}

RunRecord record_from_jsonl(std::string_view line) {
  try {
    const auto j = nlohmann::json::parse(line);
    static constexpr std::array<std::string_view, 7> kKeys = {
        "trial", "theta_deg", "phi_deg", "a", "b", "model", "hidden"};
    if (!j.is_object() || j.size() != kKeys.size()) {
      throw std::invalid_argument("record must have exactly 7 fields");
    }
    for (std::string_view k : kKeys) {
      if (!j.contains(k)) throw std::invalid_argument("record missing field " + std::string(k));
    }
    auto spin = [](const nlohmann::json& v) {
      const auto s = v.get<std::string>();
      if (s == "+") return Outcome::Up;
      if (s == "-") return Outcome::Down;
      throw std::invalid_argument("spin must be \"+\" or \"-\"");
    };
    RunRecord r;
    r.trial_index = j.at("trial").get<std::uint64_t>();
    r.theta = Angle::degrees(j.at("theta_deg").get<double>());
    r.phi = Angle::degrees(j.at("phi_deg").get<double>());
    r.outcome = make_joint(spin(j.at("a")), spin(j.at("b")));
    r.model_id = j.at("model").get<std::string>();
    if (!j.at("hidden").is_null()) r.hidden_summary = j.at("hidden").get<std::string>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed record: ") + e.what());
  }
}

void write_records(std::ostream& out, std::span<const RunRecord> records) {
  for (const RunRecord& r : records) out << to_jsonl(r) << '\n';
}

std::vector<RunRecord> read_records(std::istream& in) {
  std::vector<RunRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(record_from_jsonl(line));
  }
  return out;
}

void write_summary_csv(std::ostream& out, const EmpiricalDistribution& dist) {
  out << "outcome,count,p_hat,ci_lo,ci_hi\n";
  for (JointOutcome j : kAllJointOutcomes) {
    const std::size_t i = index_of(j);
    out << to_string(j) << ',' << dist.counts[i] << ',' << format_double(dist.p_hat[i]) << ','
        << format_double(dist.ci[i].lo) << ',' << format_double(dist.ci[i].hi) << '\n';
  }
}

}  // namespace eprb

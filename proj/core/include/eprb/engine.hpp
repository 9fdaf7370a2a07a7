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

// Seeded Monte Carlo runs over any Model.
//
// Trial i of a run with seed s draws everything from derive_substream(s, i):
// first the settings (per the policy), then the model's hidden state, then any
// lazily sampled entries touched by the measurement. A record stream is
// therefore a pure function of (model, policy, n_trials, seed), independent of
// the order or the number of threads used to produce it.

#ifndef EPRB_ENGINE_HPP_
#define EPRB_ENGINE_HPP_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "eprb/hvmodels.hpp"
#include "eprb/random.hpp"
#include "eprb/stats.hpp"
#include "eprb/types.hpp"

namespace eprb {

struct FixedPair {
  SettingPair pair;
};

// One of the nine label pairs, uniformly, from a single uniform draw.
struct UniformLabelPairs {
  LabelBinding binding;
};

// Each side draws its own label uniformly: theta first, then phi.
struct IndependentUniformLabels {
  LabelBinding binding;
};

// Trial i uses theta = deltas[i mod k], phi = 0. Consumes no randomness.
struct DeltaScan {
  std::vector<double> deltas;
};

using SettingPolicy =
    std::variant<FixedPair, UniformLabelPairs, IndependentUniformLabels, DeltaScan>;

// Throws std::invalid_argument for an empty or non-finite delta list.
void validate_policy(const SettingPolicy& policy);

// Every setting pair the policy can emit.
std::vector<SettingPair> policy_support(const SettingPolicy& policy);

SettingPair draw_settings(const SettingPolicy& policy, RandomStream& rng,
                          std::uint64_t trial_index);

struct RunRecord {
  std::uint64_t trial_index = 0;
  Angle theta;
  Angle phi;
  JointOutcome outcome = JointOutcome::UpUp;
  std::string model_id;
  std::optional<std::string> hidden_summary;

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

struct RunOptions {
  bool record_hidden = true;
  // Trials are split into this many contiguous index ranges, each run on its
  // own thread. Output is identical for every value.
  unsigned shards = 1;
};

// Checks the policy and every pair it can emit against the model. Throws
// std::invalid_argument or DomainError.
void validate_run(const Model& model, const SettingPolicy& policy);

RunRecord run_trial(const Model& model, const SettingPolicy& policy, std::uint64_t seed,
                    std::uint64_t trial_index, bool record_hidden = true);

std::vector<RunRecord> run_experiment(const Model& model, const SettingPolicy& policy,
                                      std::uint64_t n_trials, std::uint64_t seed,
                                      const RunOptions& options = {});

// Streaming variant: records reach `sink` in trial order, one at a time.
void run_experiment(const Model& model, const SettingPolicy& policy,
                    std::uint64_t n_trials, std::uint64_t seed,
                    const std::function<void(const RunRecord&)>& sink,
                    bool record_hidden = true);

// Counts only; skips building records.
EmpiricalDistribution run_counts(const Model& model, const SettingPolicy& policy,
                                 std::uint64_t n_trials, std::uint64_t seed);

class NoDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Estimates the joint distribution from records, optionally keeping only
// those measured at `filter`'s angles. Throws NoDataError if nothing is left.
EmpiricalDistribution estimate(std::span<const RunRecord> records,
                               const std::optional<SettingPair>& filter = std::nullopt);

// --- serialization -----------------------------------------------------------

// {"trial":..,"theta_deg":..,"phi_deg":..,"a":"+","b":"-","model":..,"hidden":..}
std::string to_jsonl(const RunRecord& record);
// Throws std::invalid_argument on malformed input.
RunRecord record_from_jsonl(std::string_view line);

void write_records(std::ostream& out, std::span<const RunRecord> records);
std::vector<RunRecord> read_records(std::istream& in);

// Header outcome,count,p_hat,ci_lo,ci_hi, one row per outcome in canonical
// order.
void write_summary_csv(std::ostream& out, const EmpiricalDistribution& dist);

// Shortest representation that parses back to the same double.
std::string format_double(double x);

}  // namespace eprb

#endif  // EPRB_ENGINE_HPP_

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

// Run configuration for the eprb command-line tool.
//
// A config is one JSON document:
//
//   {
//     "model":   {"id": "grandma", "mode": "labeled"}        // or "continuous"
//              | {"id": "mermin", "weights": "uniform"}       // or 8 numbers
//              | {"id": "quantum"},
//     "binding": {"a": 0, "b": 120, "c": 240},
//     "policy":  {"kind": "fixed", "theta": 0, "phi": 0}
//              | {"kind": "uniform_labels"}
//              | {"kind": "independent_labels"}
//              | {"kind": "delta_scan", "deltas": [0, 30, 60]},
//     "n": 10000,
//     "seed": 1,
//     "out": "out",
//     "audit": {                                              // optional
//       "pairs": [[0, 0], [0, 120]],
//       "independence": [[[0, 0], [0, 90]]]
//     }
//   }
//
// Missing top-level keys take the defaults above; unknown keys are errors.

#ifndef EPRB_TOOLS_CONFIG_HPP_
#define EPRB_TOOLS_CONFIG_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eprb/engine.hpp"
#include "eprb/hvmodels.hpp"

namespace eprb::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ModelConfig {
  std::string id = "grandma";          // grandma | mermin | quantum
  std::string grandma_mode = "labeled";  // labeled | continuous
  std::optional<MerminWeights> weights;  // empty means uniform

  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

struct PolicyConfig {
  std::string kind = "uniform_labels";  // fixed | uniform_labels | independent_labels | delta_scan
  double theta = 0.0;
  double phi = 0.0;
  std::vector<double> deltas;

  friend bool operator==(const PolicyConfig&, const PolicyConfig&) = default;
};

struct AuditConfig {
  std::vector<std::pair<double, double>> pairs;
  std::vector<std::pair<std::pair<double, double>, std::pair<double, double>>> independence;

  friend bool operator==(const AuditConfig&, const AuditConfig&) = default;
};

struct RunConfig {
  ModelConfig model;
  std::array<double, 3> binding = {0.0, 120.0, 240.0};
  PolicyConfig policy;
  std::uint64_t n = 10000;
  std::uint64_t seed = 1;
  std::string out = "out";
  std::optional<AuditConfig> audit;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// Throws ConfigError on malformed JSON, unknown keys, or bad values.
RunConfig parse_config(std::string_view json_text);
std::string serialize_config(const RunConfig& config);

// Flag overrides. Each throws ConfigError on a malformed value.
void apply_model_flag(RunConfig& config, std::string_view value);   // grandma[-continuous]|mermin|quantum
void apply_policy_flag(RunConfig& config, std::string_view value);  // fixed:T,P | uniform-labels | independent-labels | scan:D1,D2,... | scan:FROM:TO:STEP
void apply_bind_flag(RunConfig& config, std::string_view value);    // a=0,b=120,c=240
void apply_weights_flag(RunConfig& config, std::string_view value); // uniform | w0,...,w7

LabelBinding make_binding(const RunConfig& config);
// Builds the configured model; bad weights raise ConfigError.
std::unique_ptr<Model> make_model(const RunConfig& config);
SettingPolicy make_policy(const RunConfig& config);

}  // namespace eprb::cli

#endif  // EPRB_TOOLS_CONFIG_HPP_

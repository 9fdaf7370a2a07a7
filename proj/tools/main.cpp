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

// eprb: simulate and audit spin-correlation models.
//
//   eprb simulate --model grandma --policy fixed:0,120 --n 100000 --seed 7 --out run1
//   eprb certify
//   eprb audit    --model mermin --n 100000
//   eprb scan     --model grandma-continuous --policy scan:0:360:30 --n 100000

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "commands.hpp"
#include "config.hpp"

namespace {

using namespace eprb::cli;

struct Flags {
  std::string config_path;
  std::optional<std::string> model;
  std::optional<std::string> policy;
  std::optional<std::string> bind;
  std::optional<std::string> weights;
  std::optional<std::uint64_t> n;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
};

void add_run_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config_path, "JSON config file, or - for standard input");
  cmd->add_option("--model", f.model, "grandma | grandma-continuous | mermin | quantum");
  cmd->add_option("--policy", f.policy,
                  "fixed:THETA,PHI | uniform-labels | independent-labels | scan:D1,D2,... | "
                  "scan:FROM:TO:STEP");
  cmd->add_option("--n", f.n, "trials (per setting pair for audit and scan)");
  cmd->add_option("--seed", f.seed, "64-bit seed");
  cmd->add_option("--bind", f.bind, "label angles, e.g. a=0,b=120,c=240");
  cmd->add_option("--weights", f.weights, "instruction-set weights: uniform | w0,...,w7");
  cmd->add_option("--out", f.out, "output directory");
}

RunConfig load_config(const Flags& f) {
  RunConfig c;
  if (!f.config_path.empty()) {
    std::string text;
    if (f.config_path == "-") {
      text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else {
      std::ifstream in(f.config_path, std::ios::binary);
      if (!in) throw IoError("cannot read config " + f.config_path);
      text.assign(std::istreambuf_iterator<char>(in), {});
    }
    c = parse_config(text);
  }
  if (f.model) apply_model_flag(c, *f.model);
  if (f.weights) apply_weights_flag(c, *f.weights);
  if (f.policy) apply_policy_flag(c, *f.policy);
  if (f.bind) apply_bind_flag(c, *f.bind);
  if (f.n) c.n = *f.n;
  if (f.seed) c.seed = *f.seed;
  if (f.out) c.out = *f.out;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulate and audit EPRB spin-correlation models"};
  app.require_subcommand(1);
  Flags flags;
  auto* simulate = app.add_subcommand("simulate", "run trials; write records.jsonl and summary.csv");
  auto* certify = app.add_subcommand("certify", "exact bound certificate for instruction sets");
  auto* audit = app.add_subcommand("audit", "quantum agreement, no-signaling, setting dependence");
  auto* scan = app.add_subcommand("scan", "opposite-spin probability against angle difference");
  add_run_flags(simulate, flags);
  add_run_flags(audit, flags);
  add_run_flags(scan, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << error_line("config", e.what()) << '\n';
    return kConfigError;
  }

  try {
    if (certify->parsed()) {
      cmd_certify(std::cout);
      return kOk;
    }
    const RunConfig config = load_config(flags);
    if (simulate->parsed()) cmd_simulate(config, std::cout);
    if (audit->parsed()) cmd_audit(config, std::cout);
    if (scan->parsed()) cmd_scan(config, std::cout);
    return kOk;
  } catch (const ConfigError& e) {
    std::cerr << error_line("config", e.what()) << '\n';
    return kConfigError;
  } catch (const IoError& e) {
    std::cerr << error_line("io", e.what()) << '\n';
    return kIoError;
  } catch (const std::exception& e) {
    std::cerr << error_line("internal", e.what()) << '\n';
    return kInternalError;
  }
}

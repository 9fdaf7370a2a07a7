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

#ifndef EPRB_TOOLS_COMMANDS_HPP_
#define EPRB_TOOLS_COMMANDS_HPP_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "config.hpp"

namespace eprb::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kIoError = 3,
  kInternalError = 4,
};

// Writes `contents` to `path` through a temporary file in the same directory
// and a rename. Throws IoError.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

// <out>/records.jsonl and <out>/summary.csv.
void cmd_simulate(const RunConfig& config, std::ostream& out);
void cmd_certify(std::ostream& out);
// <out>/audit.json and <out>/audit.txt.
void cmd_audit(const RunConfig& config, std::ostream& out);
// <out>/curve.csv.
void cmd_scan(const RunConfig& config, std::ostream& out);

// One-line machine-readable error: {"error":"config","message":"..."}.
std::string error_line(std::string_view kind, std::string_view message);

}  // namespace eprb::cli

#endif  // EPRB_TOOLS_COMMANDS_HPP_

// Copyright 2026 The phaselift-haar Authors
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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "phaselift/cli/config.hpp"
#include "phaselift/cli/output.hpp"

namespace phaselift::cli {

struct StreamRecord {
  std::string label;
  std::uint64_t seed = 0;
  std::uint64_t stream_index = 0;
};

struct CommandResult {
  Table table;
  nlohmann::json summary = nlohmann::json::object();
  std::vector<StreamRecord> streams;
};

CommandResult cmd_recover(const ExperimentConfig& cfg);
CommandResult cmd_phase_diagram(const ExperimentConfig& cfg);
CommandResult cmd_rip(const ExperimentConfig& cfg);
CommandResult cmd_moments(const ExperimentConfig& cfg);
CommandResult cmd_certificate(const ExperimentConfig& cfg);
CommandResult cmd_injectivity(const ExperimentConfig& cfg);

/// Validates and dispatches on cfg.command.
CommandResult run_command(const ExperimentConfig& cfg);

/// Runs the command, writes `cfg.out` and `cfg.out + ".manifest.json"`, and
/// prints the summary to `log`. Returns 0 on success, 1 on a validation
/// error, 2 on an I/O error.
int execute(const ExperimentConfig& cfg, std::ostream& log, std::ostream& err);

/// Full entry point: parse, then execute.
int run_cli(int argc, const char* const* argv, std::ostream& log, std::ostream& err);

}  // namespace phaselift::cli

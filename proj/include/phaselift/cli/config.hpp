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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "phaselift/common.hpp"

namespace phaselift::cli {

inline constexpr const char* kVersion = "0.1.0";

enum class Command { Recover, PhaseDiagram, Rip, Moments, Certificate, Injectivity };
enum class Format { Csv, Json };

const char* to_string(Command c);
const char* to_string(Format f);
std::optional<Command> parse_command(const std::string& s);

/// Everything a run depends on. Lists (n, r, lambda) are comma separated on
/// the command line; `r_max` expands a single r into r, r + 1, ..., r_max.
struct ExperimentConfig {
  Command command = Command::Recover;
  std::vector<std::size_t> n{16};
  std::vector<std::size_t> r{8};
  std::size_t r_max = 0;
  std::size_t trials = 50;
  std::vector<double> lambda;
  Field field = Field::Complex;
  std::uint64_t seed = 1;
  std::string out;
  Format format = Format::Csv;
  double tol = 1e-7;
  std::size_t max_iters = 20000;
  /// Worker count; 0 means $PHASELIFT_THREADS or the hardware default. Never
  /// affects results, so it is not part of the manifest config.
  std::size_t threads = 0;

  // recover / phase-diagram
  double threshold = 1e-3;
  // rip
  double delta = 3.0 / 13.0;
  // moments
  std::size_t max_d = 3;
  std::size_t rows = 1000000;
  // certificate
  bool calibrate = false;
  std::size_t pilot_trials = 20;
  double target = 0.9;

  /// Throws InvalidArgument on the first out-of-range parameter.
  void validate() const;

  /// The r list after range expansion.
  std::vector<std::size_t> r_values() const;
  /// The lambda grid, defaulting to {0, 0.25, sqrt(2) - 1, 0.75, 1}.
  std::vector<double> lambda_values() const;
};

nlohmann::json to_json(const ExperimentConfig& cfg);
/// Inverse of to_json; missing keys keep their defaults.
ExperimentConfig config_from_json(const nlohmann::json& j);

struct ParseOutcome {
  std::optional<ExperimentConfig> config;  ///< empty when help was printed or parsing failed
  int exit_code = 0;
  std::string message;
};

/// Command-line parsing (CLI11). `--manifest FILE` loads the config recorded
/// in a previous run's manifest; --out and --threads may still override it.
ParseOutcome parse_args(int argc, const char* const* argv);

}  // namespace phaselift::cli

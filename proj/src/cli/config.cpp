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

#include "phaselift/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

namespace phaselift::cli {

namespace {

constexpr std::size_t kMaxN = (std::size_t{1} << 20) - 1;
constexpr std::size_t kMaxR = (std::size_t{1} << 20) - 1;
constexpr std::size_t kMaxTrials = (std::size_t{1} << 24) - 1;

const std::map<std::string, Command>& command_names() {
  static const std::map<std::string, Command> names{
      {"recover", Command::Recover},       {"phase-diagram", Command::PhaseDiagram},
      {"rip", Command::Rip},               {"moments", Command::Moments},
      {"certificate", Command::Certificate}, {"injectivity", Command::Injectivity},
  };
  return names;
}

void check(bool ok, const std::string& msg) {
  if (!ok) throw InvalidArgument(msg);
}

ExperimentConfig defaults_for(Command c) {
  ExperimentConfig cfg;
  cfg.command = c;
  switch (c) {
    case Command::Recover:
      break;
    case Command::PhaseDiagram:
      cfg.n = {8};
      cfg.r = {2};
      cfg.r_max = 6;
      cfg.trials = 20;
      break;
    case Command::Rip:
      cfg.n = {64};
      cfg.r = {1};
      cfg.trials = 2000;
      break;
    case Command::Moments:
      cfg.n = {8};
      break;
    case Command::Certificate:
      cfg.n = {64};
      cfg.r = {50};
      cfg.trials = 100;
      break;
    case Command::Injectivity:
      cfg.n = {8};
      cfg.r = {1, 2, 4};
      cfg.trials = 10000;
      break;
  }
  return cfg;
}

}  // namespace

const char* to_string(Command c) {
  for (const auto& [name, cmd] : command_names()) {
    if (cmd == c) return name.c_str();
  }
  return "?";
}

const char* to_string(Format f) { return f == Format::Csv ? "csv" : "json"; }

std::optional<Command> parse_command(const std::string& s) {
  auto it = command_names().find(s);
  if (it == command_names().end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> ExperimentConfig::r_values() const {
  if (r_max == 0 || r.size() != 1) return r;
  std::vector<std::size_t> out;
  for (std::size_t v = r.front(); v <= r_max; ++v) out.push_back(v);
  return out;
}

std::vector<double> ExperimentConfig::lambda_values() const {
  if (!lambda.empty()) return lambda;
  return {0.0, 0.25, std::sqrt(2.0) - 1.0, 0.75, 1.0};
}

void ExperimentConfig::validate() const {
  const bool needs_pair = command == Command::Rip || command == Command::Moments ||
                          command == Command::Certificate || command == Command::Injectivity;
  check(!n.empty(), "--n: at least one value required");
  for (std::size_t v : n) {
    check(v >= (needs_pair ? 2u : 1u), needs_pair ? "--n: values must be >= 2" : "--n: values must be >= 1");
    check(v <= kMaxN, "--n: value too large");
  }
  check(!r.empty(), "--r: at least one value required");
  for (std::size_t v : r) check(v >= 1 && v <= kMaxR, "--r: values must lie in [1, 2^20)");
  if (r_max != 0) {
    check(r.size() == 1, "--r-max: requires a single --r value");
    check(r_max >= r.front() && r_max <= kMaxR, "--r-max: must be >= --r");
  }
  check(trials >= 1 && trials <= kMaxTrials, "--trials: must lie in [1, 2^24)");
  for (double l : lambda) check(l >= 0.0 && l <= 1.0, "--lambda: values must lie in [0, 1]");
  check(!out.empty(), "--out: output path required");
  check(std::isfinite(tol) && tol > 0.0, "--tol: must be positive");
  check(max_iters >= 1, "--max-iters: must be positive");
  check(threshold > 0.0 && std::isfinite(threshold), "--threshold: must be positive");
  check(delta > 0.0 && delta <= 3.0 / 13.0, "--delta: must lie in (0, 3/13]");
  check(max_d >= 1 && max_d <= 12, "--max-d: must lie in [1, 12]");
  check(rows >= 1, "--rows: must be positive");
  check(pilot_trials >= 1, "--pilot-trials: must be positive");
  check(target > 0.0 && target <= 1.0, "--target: must lie in (0, 1]");
  if (command == Command::Moments || command == Command::Certificate ||
      command == Command::Injectivity) {
    check(field == Field::Complex, std::string(to_string(command)) + ": complex field only");
  }
  if (command == Command::Certificate && calibrate) {
    check(r.size() == 1 && r_max >= r.front(), "--calibrate: needs a single --r start and --r-max");
  }
}

nlohmann::json to_json(const ExperimentConfig& cfg) {
  return {
      {"command", to_string(cfg.command)},
      {"n", cfg.n},
      {"r", cfg.r},
      {"r_max", cfg.r_max},
      {"trials", cfg.trials},
      {"lambda", cfg.lambda},
      {"field", to_string(cfg.field)},
      {"seed", cfg.seed},
      {"out", cfg.out},
      {"format", to_string(cfg.format)},
      {"tol", cfg.tol},
      {"max_iters", cfg.max_iters},
      {"threshold", cfg.threshold},
      {"delta", cfg.delta},
      {"max_d", cfg.max_d},
      {"rows", cfg.rows},
      {"calibrate", cfg.calibrate},
      {"pilot_trials", cfg.pilot_trials},
      {"target", cfg.target},
  };
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  try {
    const auto cmd = parse_command(j.at("command").get<std::string>());
    check(cmd.has_value(), "manifest: unknown command");
    ExperimentConfig cfg = defaults_for(*cmd);
    auto get = [&](const char* key, auto& field) {
      if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    get("n", cfg.n);
    get("r", cfg.r);
    get("r_max", cfg.r_max);
    get("trials", cfg.trials);
    get("lambda", cfg.lambda);
    get("seed", cfg.seed);
    get("out", cfg.out);
    get("tol", cfg.tol);
    get("max_iters", cfg.max_iters);
    get("threshold", cfg.threshold);
    get("delta", cfg.delta);
    get("max_d", cfg.max_d);
    get("rows", cfg.rows);
    get("calibrate", cfg.calibrate);
    get("pilot_trials", cfg.pilot_trials);
    get("target", cfg.target);
    if (j.contains("field")) {
      const auto f = j.at("field").get<std::string>();
      check(f == "real" || f == "complex", "manifest: bad field");
      cfg.field = f == "real" ? Field::Real : Field::Complex;
    }
    if (j.contains("format")) {
      const auto f = j.at("format").get<std::string>();
      check(f == "csv" || f == "json", "manifest: bad format");
      cfg.format = f == "csv" ? Format::Csv : Format::Json;
    }
    return cfg;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("manifest: ") + e.what());
  }
}

namespace {

void add_common(CLI::App* sub, ExperimentConfig& cfg) {
  const std::map<std::string, Field> fields{{"real", Field::Real}, {"complex", Field::Complex}};
  const std::map<std::string, Format> formats{{"csv", Format::Csv}, {"json", Format::Json}};
  sub->add_option("--n", cfg.n, "Dimension(s), comma separated")->delimiter(',')->capture_default_str();
  sub->add_option("--r", cfg.r, "Number(s) of unitaries, comma separated")
      ->delimiter(',')
      ->capture_default_str();
  sub->add_option("--r-max", cfg.r_max, "Expand a single --r into r..r-max")->capture_default_str();
  sub->add_option("--trials", cfg.trials, "Trials per cell")->capture_default_str();
  sub->add_option("--field", cfg.field, "real or complex")
      ->transform(CLI::CheckedTransformer(fields, CLI::ignore_case));
  sub->add_option("--seed", cfg.seed, "Master seed")->capture_default_str();
  sub->add_option("--out", cfg.out, "Output file")->required();
  sub->add_option("--format", cfg.format, "csv or json")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  sub->add_option("--threads", cfg.threads, "Worker threads (0: default)");
}

}  // namespace

ParseOutcome parse_args(int argc, const char* const* argv) {
  CLI::App app{"PhaseLift with Haar-random unitary measurements: experiment driver"};
  app.require_subcommand(0, 1);
  std::string manifest_path;
  std::string manifest_out;
  std::size_t manifest_threads = 0;
  app.add_option("--manifest", manifest_path, "Re-run the config recorded in a manifest");
  app.add_option("--out", manifest_out, "With --manifest: override the output path");
  app.add_option("--threads", manifest_threads, "With --manifest: worker threads");

  std::map<CLI::App*, ExperimentConfig> configs;
  auto make = [&](Command c, const std::string& help) {
    CLI::App* sub = app.add_subcommand(to_string(c), help);
    ExperimentConfig& cfg = configs.emplace(sub, defaults_for(c)).first->second;
    add_common(sub, cfg);
    return std::pair<CLI::App*, ExperimentConfig*>{sub, &cfg};
  };

  {
    auto [sub, cfg] = make(Command::Recover, "Sample, measure, solve and extract");
    sub->add_option("--tol", cfg->tol, "Solver tolerance (primal and dual)")->capture_default_str();
    sub->add_option("--max-iters", cfg->max_iters, "Solver iteration cap")->capture_default_str();
    sub->add_option("--threshold", cfg->threshold, "Success threshold on rel_error_lifted")
        ->capture_default_str();
  }
  {
    auto [sub, cfg] = make(Command::PhaseDiagram, "Success rate over an (n, r) grid");
    sub->add_option("--tol", cfg->tol, "Solver tolerance")->capture_default_str();
    sub->add_option("--max-iters", cfg->max_iters, "Solver iteration cap")->capture_default_str();
    sub->add_option("--threshold", cfg->threshold, "Success threshold")->capture_default_str();
  }
  {
    auto [sub, cfg] = make(Command::Rip, "Rank-2 l1 statistic vs its expectation");
    sub->add_option("--lambda", cfg->lambda, "Lambda grid, comma separated")->delimiter(',');
    sub->add_option("--delta", cfg->delta, "RIP constant in (0, 3/13]")->capture_default_str();
  }
  {
    auto [sub, cfg] = make(Command::Moments, "Haar moments: closed form vs Monte Carlo");
    sub->add_option("--max-d", cfg->max_d, "Highest moment order")->capture_default_str();
    sub->add_option("--rows", cfg->rows, "Haar rows sampled")->capture_default_str();
  }
  {
    auto [sub, cfg] = make(Command::Certificate, "Enhanced dual certificate sweep");
    sub->add_flag("--calibrate", cfg->calibrate, "Pick r by a doubling pilot from --r to --r-max");
    sub->add_option("--pilot-trials", cfg->pilot_trials, "Trials per pilot step")->capture_default_str();
    sub->add_option("--target", cfg->target, "Pilot pass-fraction target")->capture_default_str();
  }
  make(Command::Injectivity, "Empirical injectivity probe");

  ParseOutcome outcome;
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    outcome.message = app.help();
    outcome.exit_code = 0;
    return outcome;
  } catch (const CLI::ParseError& e) {
    std::ostringstream os;
    app.exit(e, os, os);
    outcome.message = os.str();
    outcome.exit_code = e.get_exit_code() == 0 ? 0 : 1;
    return outcome;
  }

  try {
    if (!manifest_path.empty()) {
      if (!app.get_subcommands().empty()) throw InvalidArgument("--manifest cannot be combined with a subcommand");
      std::ifstream in(manifest_path);
      if (!in) {
        outcome.message = "cannot read manifest " + manifest_path;
        outcome.exit_code = 2;
        return outcome;
      }
      nlohmann::json j;
      try {
        in >> j;
      } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("manifest: ") + e.what());
      }
      if (!j.contains("config")) throw InvalidArgument("manifest: no config");
      ExperimentConfig cfg = config_from_json(j.at("config"));
      if (!manifest_out.empty()) cfg.out = manifest_out;
      cfg.threads = manifest_threads;
      cfg.validate();
      outcome.config = cfg;
      return outcome;
    }
    if (app.get_subcommands().empty()) {
      outcome.message = app.help();
      outcome.exit_code = 1;
      return outcome;
    }
    if (!manifest_out.empty() || manifest_threads != 0) {
      throw InvalidArgument("--out/--threads go after the subcommand");
    }
    ExperimentConfig cfg = configs.at(app.get_subcommands().front());
    cfg.validate();
    outcome.config = cfg;
  } catch (const InvalidArgument& e) {
    outcome.message = e.what();
    outcome.exit_code = 1;
  }
  return outcome;
}

}  // namespace phaselift::cli

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

#include "phaselift/cli/commands.hpp"

#include <chrono>
#include <fstream>
#include <limits>
#include <ostream>
#include <string>

#include "phaselift/certificate.hpp"
#include "phaselift/kernels.hpp"
#include "phaselift/parallel.hpp"
#include "phaselift/ripstats.hpp"
#include "phaselift/solver.hpp"

namespace phaselift::cli {

namespace {

using u64 = std::uint64_t;

/// Stream index of trial t in the (n, r) cell: stable under changes to the
/// rest of the grid. Field widths are enforced by ExperimentConfig::validate.
u64 cell_stream(std::size_t n, std::size_t r, std::size_t t) {
  return (u64{n} << 44) | (u64{r} << 24) | u64{t};
}

std::string cell_label(std::size_t n, std::size_t r) {
  return "n=" + std::to_string(n) + ",r=" + std::to_string(r);
}

Cell count(std::size_t v) { return static_cast<u64>(v); }

struct TrialRecord {
  std::size_t n = 0;
  std::size_t r = 0;
  std::size_t trial = 0;
  u64 stream_index = 0;
  std::string status;
  bool converged = false;
  std::size_t iterations = 0;
  double rel_error_lifted = 0.0;
  double rel_error_signal = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  bool success = false;
};

std::vector<TrialRecord> run_recovery_grid(const ExperimentConfig& cfg) {
  SolverConfig solver;
  solver.max_iters = cfg.max_iters;
  solver.tol_primal = cfg.tol;
  solver.tol_dual = cfg.tol;
  const auto r_list = cfg.r_values();

  std::vector<TrialRecord> records;
  for (std::size_t n : cfg.n) {
    for (std::size_t r : r_list) {
      for (std::size_t t = 0; t < cfg.trials; ++t) {
        TrialRecord rec;
        rec.n = n;
        rec.r = r;
        rec.trial = t;
        rec.stream_index = cell_stream(n, r, t);
        records.push_back(rec);
      }
    }
  }
  parallel_for(records.size(), cfg.threads, [&](std::size_t i) {
    TrialRecord& rec = records[i];
    RandomStream stream(cfg.seed, rec.stream_index);
    try {
      const RecoveryOutcome out = run_recovery_trial(stream, rec.n, rec.r, cfg.field, solver);
      rec.converged = out.state.converged;
      rec.iterations = out.state.iterations;
      rec.primal_residual = out.state.primal_residual;
      rec.dual_residual = out.state.dual_residual;
      rec.rel_error_lifted = out.result.rel_error_lifted;
      rec.rel_error_signal = out.result.rel_error_signal;
      rec.status = rec.converged ? "ok" : "not_converged";
      rec.success = rec.rel_error_lifted <= cfg.threshold;
    } catch (const InvalidArgument&) {
      throw;
    } catch (const Error& e) {
      // Numerical trouble in one trial is data, not a failed run.
      rec.status = e.what();
      rec.rel_error_lifted = rec.rel_error_signal = std::numeric_limits<double>::quiet_NaN();
    }
  });
  return records;
}

}  // namespace

CommandResult cmd_recover(const ExperimentConfig& cfg) {
  const auto records = run_recovery_grid(cfg);
  CommandResult res;
  res.table.columns = {"n", "r", "trial", "seed", "stream_index", "status", "converged", "iterations",
                       "rel_error_lifted", "rel_error_signal", "primal_residual", "dual_residual",
                       "success"};
  std::size_t successes = 0, converged = 0;
  for (const auto& rec : records) {
    res.table.add_row({count(rec.n), count(rec.r), count(rec.trial), cfg.seed, rec.stream_index,
                       rec.status, rec.converged, count(rec.iterations), rec.rel_error_lifted,
                       rec.rel_error_signal, rec.primal_residual, rec.dual_residual, rec.success});
    res.streams.push_back({cell_label(rec.n, rec.r) + ",trial=" + std::to_string(rec.trial),
                           cfg.seed, rec.stream_index});
    successes += rec.success;
    converged += rec.converged;
  }
  res.summary = {{"trials", records.size()},
                 {"threshold", cfg.threshold},
                 {"successes", successes},
                 {"converged", converged},
                 {"success_rate", static_cast<double>(successes) / static_cast<double>(records.size())}};
  return res;
}

CommandResult cmd_phase_diagram(const ExperimentConfig& cfg) {
  const auto records = run_recovery_grid(cfg);
  CommandResult res;
  res.table.columns = {"n", "r", "m", "trials", "successes", "success_rate"};
  nlohmann::json cells = nlohmann::json::array();
  for (std::size_t start = 0; start < records.size(); start += cfg.trials) {
    std::size_t successes = 0;
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      const auto& rec = records[start + t];
      successes += rec.success;
      res.streams.push_back({cell_label(rec.n, rec.r) + ",trial=" + std::to_string(rec.trial),
                             cfg.seed, rec.stream_index});
    }
    const auto& first = records[start];
    const double rate = static_cast<double>(successes) / static_cast<double>(cfg.trials);
    res.table.add_row({count(first.n), count(first.r), count(first.n * first.r), count(cfg.trials),
                       count(successes), rate});
  }
  res.summary = {{"cells", res.table.rows.size()}, {"threshold", cfg.threshold}};
  return res;
}

CommandResult cmd_rip(const ExperimentConfig& cfg) {
  CommandResult res;
  res.table.columns = {"n", "r", "lambda", "trials", "mean", "std_error", "closed_form",
                       "rel_diff", "threshold", "hold_fraction"};
  const auto lambdas = cfg.lambda_values();
  double best_mean = std::numeric_limits<double>::infinity();
  double best_lambda = 0.0;
  for (std::size_t n : cfg.n) {
    for (std::size_t r : cfg.r_values()) {
      const auto rows =
          rip_lower_bound_check(n, r, lambdas, cfg.trials, cfg.delta, cfg.seed, cfg.threads, cfg.field);
      for (std::size_t l = 0; l < rows.size(); ++l) {
        const auto& row = rows[l];
        Cell closed, rel;
        if (cfg.field == Field::Complex) {
          const double e = rip_expectation(row.lambda);
          closed = e;
          rel = (row.statistic.mean() - e) / e;
        }
        res.table.add_row({count(n), count(r), row.lambda, count(row.trials), row.statistic.mean(),
                           row.statistic.std_error(), closed, rel, row.threshold, row.hold_fraction()});
        if (row.statistic.mean() < best_mean) {
          best_mean = row.statistic.mean();
          best_lambda = row.lambda;
        }
        for (std::size_t t = 0; t < cfg.trials; ++t) {
          res.streams.push_back({cell_label(n, r) + ",lambda_index=" + std::to_string(l) +
                                     ",trial=" + std::to_string(t),
                                 cfg.seed, (u64{l} << 32) + t});
        }
      }
    }
  }
  res.summary = {{"delta", cfg.delta},
                 {"min_mean", best_mean},
                 {"argmin_lambda", best_lambda},
                 {"closed_form_min", 2.0 * rip_expectation_argmin()}};
  return res;
}

CommandResult cmd_moments(const ExperimentConfig& cfg) {
  CommandResult res;
  res.table.columns = {"quantity", "n", "d", "rows", "closed_form", "monte_carlo", "std_error", "z_score"};
  nlohmann::json consistency = nlohmann::json::array();
  for (std::size_t n : cfg.n) {
    const MomentEstimates est = haar_moments(n, cfg.max_d, cfg.rows, cfg.seed, cfg.threads);
    for (std::size_t d = 1; d <= cfg.max_d; ++d) {
      const double exact = moment(n, d);
      const Estimate& e = est.moments[d - 1];
      res.table.add_row({std::string("moment"), count(n), count(d), count(est.rows), exact, e.value,
                         e.std_error, z_score(e.value, exact, e.std_error)});
    }
    const double exact = cross_moment(n);
    res.table.add_row({std::string("cross"), count(n), Cell{}, count(est.rows), exact, est.cross.value,
                       est.cross.std_error, z_score(est.cross.value, exact, est.cross.std_error)});
    // 1/n = E|u_ia|^2 = E|u_ia|^4 + (n - 1) E|u_ia|^2 |u_ib|^2, in exact arithmetic.
    const bool holds = moment_exact(n, 2) + Rational(static_cast<std::int64_t>(n - 1)) * cross_moment_exact(n) ==
                       Rational(1, static_cast<std::int64_t>(n));
    consistency.push_back({{"n", n}, {"holds_exactly", holds}});

    const std::size_t matrices = (cfg.rows + n - 1) / n;
    const std::size_t blocks = (matrices + kMomentBlockMatrices - 1) / kMomentBlockMatrices;
    for (std::size_t b = 0; b < blocks; ++b) {
      res.streams.push_back({"n=" + std::to_string(n) + ",block=" + std::to_string(b), cfg.seed, b});
    }
  }
  res.summary = {{"consistency", consistency}};
  return res;
}

CommandResult cmd_certificate(const ExperimentConfig& cfg) {
  CommandResult res;
  res.table.columns = {"n", "r", "trials", "psi_n", "phi_n", "pass_yt_fraction",
                       "pass_ytperp_fraction", "pass_joint_fraction", "mean_yt_error",
                       "std_yt_error", "mean_lambda_max", "mean_xk_norm_sq", "max_xk_norm",
                       "xk_bound_violations", "trials_with_xk_violation"};
  nlohmann::json calibrations = nlohmann::json::array();
  for (std::size_t n : cfg.n) {
    std::vector<std::size_t> r_list = cfg.r_values();
    if (cfg.calibrate) {
      const Calibration cal =
          calibrate_r(n, cfg.r.front(), cfg.r_max, cfg.pilot_trials, cfg.target, cfg.seed, cfg.threads);
      nlohmann::json steps = nlohmann::json::array();
      for (const auto& s : cal.steps) {
        steps.push_back({{"r", s.r}, {"trials", s.trials}, {"pass_joint_fraction", s.pass_joint_fraction}});
      }
      const std::size_t chosen = cal.chosen_r != 0 ? cal.chosen_r : cal.steps.back().r;
      calibrations.push_back({{"n", n},
                              {"steps", steps},
                              {"reached_target", cal.chosen_r != 0},
                              {"chosen_r", chosen}});
      r_list = {chosen};
    }
    const SweepResult sweep = certificate_sweep(n, r_list, cfg.trials, cfg.seed, cfg.threads);
    for (const auto& s : sweep.summaries) {
      res.table.add_row({count(n), count(s.r), count(s.trials), sweep.constants.psi.value,
                         sweep.constants.phi.value, s.pass_yt_fraction, s.pass_ytperp_fraction,
                         s.pass_joint_fraction, s.yt_error.mean(), s.yt_error.stddev(),
                         s.lambda_max.mean(), s.xk_norm_sq.mean(), s.max_xk_norm,
                         count(s.xk_bound_violations), count(s.trials_with_xk_violation)});
    }
    for (const auto& rep : sweep.reports) {
      res.streams.push_back({cell_label(n, rep.r) + ",trial=" + std::to_string(rep.stream_index & 0xffffffffu),
                             rep.seed, rep.stream_index});
    }
  }
  res.summary = {{"xk_norm_bound", xk_norm_bound()}, {"yt_tolerance", 0.2}};
  if (cfg.calibrate) res.summary["calibration"] = calibrations;
  return res;
}

CommandResult cmd_injectivity(const ExperimentConfig& cfg) {
  struct Cellspec {
    std::size_t n, r;
  };
  std::vector<Cellspec> cells;
  for (std::size_t n : cfg.n) {
    for (std::size_t r : cfg.r_values()) cells.push_back({n, r});
  }
  std::vector<InjectivityResult> results(cells.size());
  parallel_for(cells.size(), cfg.threads, [&](std::size_t i) {
    RandomStream stream(cfg.seed, cell_stream(cells[i].n, cells[i].r, 0));
    results[i] = injectivity_probe(cells[i].n, cells[i].r, cfg.trials, stream);
  });
  CommandResult res;
  res.table.columns = {"n", "r", "pairs", "min_ratio", "mean_ratio", "std_ratio"};
  double overall_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& out = results[i];
    res.table.add_row({count(out.n), count(out.r), count(out.pairs), out.min_ratio, out.ratio.mean(),
                       out.ratio.stddev()});
    overall_min = std::fmin(overall_min, out.min_ratio);
    res.streams.push_back({cell_label(out.n, out.r), cfg.seed, cell_stream(out.n, out.r, 0)});
  }
  res.summary = {{"min_ratio", overall_min}, {"injective_on_sample", overall_min > 0.0}};
  return res;
}

CommandResult run_command(const ExperimentConfig& cfg) {
  cfg.validate();
  switch (cfg.command) {
    case Command::Recover: return cmd_recover(cfg);
    case Command::PhaseDiagram: return cmd_phase_diagram(cfg);
    case Command::Rip: return cmd_rip(cfg);
    case Command::Moments: return cmd_moments(cfg);
    case Command::Certificate: return cmd_certificate(cfg);
    case Command::Injectivity: return cmd_injectivity(cfg);
  }
  throw InvalidArgument("unknown command");
}

int execute(const ExperimentConfig& cfg, std::ostream& log, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  CommandResult res;
  try {
    res = run_command(cfg);
  } catch (const Error& e) {
    err << "phaselift: " << e.what() << '\n';
    return 1;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  {
    std::ofstream out(cfg.out, std::ios::binary | std::ios::trunc);
    if (!out) {
      err << "phaselift: cannot write " << cfg.out << '\n';
      return 2;
    }
    write_table(out, res.table, cfg.format);
    if (!out.flush()) {
      err << "phaselift: write failed for " << cfg.out << '\n';
      return 2;
    }
  }

  nlohmann::ordered_json manifest;
  manifest["tool"] = "phaselift";
  manifest["version"] = kVersion;
  manifest["config"] = to_json(cfg);
  manifest["output"] = cfg.out;
  manifest["kernels"] = kernels::active().name;
  manifest["threads"] = cfg.threads == 0 ? default_thread_count() : cfg.threads;
  manifest["duration_seconds"] = seconds;
  nlohmann::json streams = nlohmann::json::array();
  for (const auto& s : res.streams) {
    streams.push_back({{"label", s.label}, {"seed", s.seed}, {"stream_index", s.stream_index}});
  }
  manifest["streams"] = std::move(streams);
  manifest["summary"] = res.summary;

  const std::string manifest_path = cfg.out + ".manifest.json";
  std::ofstream mf(manifest_path, std::ios::binary | std::ios::trunc);
  if (!mf || !(mf << manifest.dump(2) << '\n') || !mf.flush()) {
    err << "phaselift: cannot write " << manifest_path << '\n';
    return 2;
  }
  log << to_string(cfg.command) << ": wrote " << cfg.out << " (" << res.table.rows.size()
      << " rows) and " << manifest_path << '\n'
      << res.summary.dump() << '\n';
  return 0;
}

int run_cli(int argc, const char* const* argv, std::ostream& log, std::ostream& err) {
  const ParseOutcome parsed = parse_args(argc, argv);
  if (!parsed.config) {
    (parsed.exit_code == 0 ? log : err) << parsed.message;
    if (!parsed.message.empty() && parsed.message.back() != '\n') (parsed.exit_code == 0 ? log : err) << '\n';
    return parsed.exit_code;
  }
  return execute(*parsed.config, log, err);
}

}  // namespace phaselift::cli

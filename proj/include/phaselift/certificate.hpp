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

/// Dual certificates for PhaseLift with Haar-unitary measurements and the
/// numerical check of the uniqueness conditions
///
///   ||Y_T - e1 e1*|| <= 1/5   and   Y_T-perp negative definite.
///
/// Complex field only.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "phaselift/common.hpp"
#include "phaselift/lifted_ops.hpp"
#include "phaselift/stats.hpp"

namespace phaselift {

enum class ConstantMethod { Quadrature, MonteCarlo };

/// How to evaluate psi_n / phi_n. Monte Carlo draws ceil(samples / n) Haar
/// matrices from RandomStream(seed, stream_index) and uses every row.
struct MethodSpec {
  ConstantMethod kind = ConstantMethod::Quadrature;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream_index = 0;

  static MethodSpec quadrature() { return {}; }
  static MethodSpec monte_carlo(std::size_t samples, std::uint64_t seed,
                                std::uint64_t stream_index = 0) {
    return {ConstantMethod::MonteCarlo, samples, seed, stream_index};
  }
};

/// 3 / sqrt(n + 1), the cap on |u_i1| in the enhanced certificate.
double certificate_cap(std::size_t n);

/// psi_n = E[n (n + 1) min(|u_11|, cap)^4]. By quadrature against the
/// Beta(1, n - 1) law of |u_11|^2, or by Monte Carlo. When cap >= 1 (n <= 8)
/// the cap never binds and quadrature returns the exact uncapped value 2.
/// Requires n >= 2.
Estimate psi_n(std::size_t n, const MethodSpec& method);

/// phi_n = E[2 n (n + 1) min(|u_11|, cap)^2 |u_12|^2]. By quadrature against
/// the Dirichlet density (n-1)(n-2)(1-x-y)^(n-3) of (|u_11|^2, |u_12|^2),
/// factorized by y = (1 - x) t into two 1D integrals, or by Monte Carlo. As
/// with psi_n, quadrature returns exactly 2 when the cap never binds.
/// Requires n >= 3.
Estimate phi_n(std::size_t n, const MethodSpec& method);

struct CertificateConstants {
  std::size_t n = 0;
  double cap = 0.0;
  Estimate psi;
  Estimate phi;
  ConstantMethod psi_method = ConstantMethod::Quadrature;
  ConstantMethod phi_method = ConstantMethod::Quadrature;

  /// Both constants by quadrature.
  static CertificateConstants compute(std::size_t n);
  static CertificateConstants compute(std::size_t n, const MethodSpec& psi_method,
                                      const MethodSpec& phi_method);

  /// phi_n - (2 psi_n - 1), the expected diagonal of Y off e1.
  double expected_offdiagonal_block() const { return phi.value - (2.0 * psi.value - 1.0); }

  /// Positive constants not exceeding 2 (beyond 5 standard errors).
  void validate() const;
};

/// (n / m) sum_i ((n + 1) |u_i1|^2 - 1) u_i u_i*
HermitianMatrix regular_certificate(const MeasurementEnsemble& ens);

/// Per-row coefficient 2 n (n + 1) min(|u_i1|, cap)^2 - n (2 psi_n - 1); the
/// enhanced certificate is (1 / m) sum_i coeff_i u_i u_i*.
RVector enhanced_coefficients(const MeasurementEnsemble& ens, const CertificateConstants& consts);

HermitianMatrix enhanced_certificate(const MeasurementEnsemble& ens,
                                     const CertificateConstants& consts);

/// The first column of the enhanced certificate, assembled unitary by
/// unitary: Y e1 = (1/r) sum_k x_k with
///   x_k = sum_i (2 (n + 1) min(|u_i1|, cap)^2 - (2 psi_n - 1)) conj(u_i1) u_i.
struct TangentReduction {
  CVector mean_vector;
  /// ||Y_T - e1 e1*||_F = sqrt(|v_1 - 1|^2 + 2 sum_{a > 1} |v_a|^2), v = mean_vector
  double yt_error = 0.0;
  std::vector<double> xk_norms;
};

TangentReduction tangent_reduction(const MeasurementEnsemble& ens,
                                   const CertificateConstants& consts);

/// sqrt(21), the per-unitary bound quoted for ||x_k||.
double xk_norm_bound();

struct CertificateReport {
  std::size_t n = 0;
  std::size_t r = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream_index = 0;
  /// ||Y_T - e1 e1*||_F
  double yt_error = 0.0;
  /// ||Y_T - e1 e1*||_2 (spectral); never larger than yt_error
  double yt_error_spectral = 0.0;
  /// lambda_max of Y on span{e2, ..., en}
  double ytperp_lambda_max = 0.0;
  bool pass_yt = false;
  bool pass_ytperp = false;
  /// Largest ||x_k|| over the unitaries of the ensemble (sweeps only).
  double max_xk_norm = 0.0;
  /// Number of unitaries with ||x_k|| > sqrt(21) (1 + 1e-9) (sweeps only).
  std::size_t xk_bound_violations = 0;
  /// Mean of ||x_k||^2 over the ensemble (sweeps only).
  double mean_xk_norm_sq = 0.0;

  bool pass_joint() const { return pass_yt && pass_ytperp; }
};

CertificateReport check_conditions(const HermitianMatrix& y);

struct SweepSummary {
  std::size_t n = 0;
  std::size_t r = 0;
  std::size_t trials = 0;
  double pass_yt_fraction = 0.0;
  double pass_ytperp_fraction = 0.0;
  double pass_joint_fraction = 0.0;
  RunningStats yt_error;
  RunningStats lambda_max;
  RunningStats xk_norm_sq;
  double max_xk_norm = 0.0;
  std::size_t xk_bound_violations = 0;
  std::size_t trials_with_xk_violation = 0;
};

struct SweepResult {
  CertificateConstants constants;
  /// Grouped by r in r_list order, then by trial index.
  std::vector<CertificateReport> reports;
  std::vector<SweepSummary> summaries;
};

/// Stream index of trial `trial` at ensemble size r, so that a given (seed, r,
/// trial) reproduces regardless of the other sweep parameters.
std::uint64_t certificate_stream_index(std::size_t r, std::size_t trial);

/// For every r in r_list, builds `trials` independent enhanced certificates
/// (n x n, r Haar unitaries each) and checks the conditions.
SweepResult certificate_sweep(std::size_t n, const std::vector<std::size_t>& r_list,
                              std::size_t trials, std::uint64_t seed, std::size_t threads = 0);

struct CalibrationStep {
  std::size_t r = 0;
  std::size_t trials = 0;
  double pass_joint_fraction = 0.0;
};

struct Calibration {
  std::vector<CalibrationStep> steps;
  /// First r on the ladder whose pilot pass fraction reached the target; 0 if none did.
  std::size_t chosen_r = 0;
};

/// Pilot run: r = start_r, 2 start_r, 4 start_r, ... up to max_r, with
/// `pilot_trials` trials each (seeded independently of the main sweep through
/// `seed`), stopping at the first r whose joint pass fraction >= target.
Calibration calibrate_r(std::size_t n, std::size_t start_r, std::size_t max_r,
                        std::size_t pilot_trials, double target, std::uint64_t seed,
                        std::size_t threads = 0);

}  // namespace phaselift

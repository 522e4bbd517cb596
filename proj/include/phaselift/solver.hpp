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
#include <optional>
#include <variant>
#include <vector>

#include "phaselift/common.hpp"
#include "phaselift/lifted_ops.hpp"
#include "phaselift/random_stream.hpp"

namespace phaselift {

/// minimize Tr(X)
struct TraceObjective {};
/// find any X in the feasible set
struct FeasibilityObjective {};
/// minimize <C, X>; used to probe whether the feasible set is a single point
struct LinearObjective {
  HermitianMatrix c;
};

using Objective = std::variant<TraceObjective, FeasibilityObjective, LinearObjective>;

struct SolverConfig {
  std::size_t max_iters = 20000;
  double tol_primal = 1e-7;
  double tol_dual = 1e-7;
  double rho = 1.0;
  Objective objective = TraceObjective{};
  /// Residuals are recorded every `history_stride` iterations.
  std::size_t history_stride = 10;

  void validate() const;
};

struct ResidualSample {
  std::size_t iteration = 0;
  double primal = 0.0;
  double dual = 0.0;
};

struct SolverState {
  /// PSD iterate; this is the returned solution.
  HermitianMatrix x;
  /// Iterate projected onto {X : A(X) = b}.
  HermitianMatrix affine_iterate;
  /// Scaled dual multiplier of the consensus constraint.
  HermitianMatrix dual;
  std::size_t iterations = 0;
  /// ||A(x) - b|| / ||b||
  double primal_residual = 0.0;
  /// ||x_k - x_{k-1}||_F / ||x_k||_F
  double dual_residual = 0.0;
  /// lambda_min(x) / ||x||_F (0 for x = 0)
  double min_eigenvalue_ratio = 0.0;
  bool converged = false;
  std::vector<ResidualSample> history;
  /// Every feasible X has trace sum(b) / (s r), since each unitary's rows
  /// resolve the identity. Tr(x) minus this value is reported as trace_gap.
  double implied_trace = 0.0;
  double trace_gap = 0.0;
  std::size_t gram_rank = 0;
  /// Set when A A* loses rank beyond the r - 1 directions that are always
  /// redundant (duplicated rows).
  bool gram_rank_warning = false;
};

/// Projection onto the affine set {X : A(X) = b} with the pseudo-inverse of
/// G = A A* factorized once per ensemble. G always has at least r - 1 null
/// directions, one per extra copy of the identity in range(A*). Holds a
/// reference to the ensemble; immutable and safe to share across threads.
class AffineProjector {
 public:
  explicit AffineProjector(const MeasurementEnsemble& ens);

  /// X + A*(G^+ (b - A(X)))
  HermitianMatrix project(const HermitianMatrix& x, const IntensityVector& b) const;

  /// ||b - P_range(A) b|| / ||b||; zero for measurements of a Hermitian matrix.
  double range_residual(const IntensityVector& b) const;

  std::size_t rank() const { return rank_; }
  /// min(n^2, m - (r - 1)) in the complex case, min(n (n + 1) / 2, ...) in the real case.
  std::size_t structural_rank() const;
  const MeasurementEnsemble& ensemble() const { return *ens_; }

 private:
  const MeasurementEnsemble* ens_;
  RMatrix range_basis_;
  RVector inv_eigenvalues_;
  std::size_t rank_ = 0;
};

/// Nearest PSD matrix in Frobenius norm: negative eigenvalues clipped to 0.
HermitianMatrix project_psd(const HermitianMatrix& x);

HermitianMatrix project_affine(const MeasurementEnsemble& ens, const IntensityVector& b,
                               const HermitianMatrix& x);

/// Operator splitting (ADMM) for
///   minimize <C, X>  subject to  A(X) = b,  X PSD,
/// alternating an affine projection and a PSD projection. Throws
/// InfeasibleSystemError when b is not in the range of A.
SolverState solve(const MeasurementEnsemble& ens, const IntensityVector& b,
                  const SolverConfig& cfg);

struct RecoveryResult {
  HermitianMatrix x_hat_matrix;
  /// sqrt(lambda_1) v_1 from the top eigenpair.
  CVector x_hat;
  /// ||X_hat - x x*||_F / ||x x*||_F (NaN without a reference signal)
  double rel_error_lifted = 0.0;
  /// min over |phi| = 1 of ||x_hat - phi x|| / ||x|| (NaN without a reference)
  double rel_error_signal = 0.0;
  /// (lambda_1 - lambda_2) / lambda_1; 0 on ties or when degenerate
  double eigengap = 0.0;
  /// lambda_1 <= 0
  bool degenerate = false;
};

RecoveryResult extract(const HermitianMatrix& x_hat, const std::optional<CVector>& x_true);

/// ||x_hat - phi x|| / ||x|| minimized over unit-modulus phi (phi is the
/// phase of <x, x_hat>).
double phase_aligned_error(const CVector& x_hat, const CVector& x_true);

struct RecoveryOutcome {
  CVector signal;
  SolverState state;
  RecoveryResult result;
};

/// Sample a unit signal and r Haar unitaries from `stream`, measure the
/// physical intensities, solve and extract.
RecoveryOutcome run_recovery_trial(RandomStream& stream, std::size_t n, std::size_t r,
                                   Field field, const SolverConfig& cfg);

}  // namespace phaselift

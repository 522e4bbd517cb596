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

#include "phaselift/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "phaselift/ensembles.hpp"

namespace phaselift {

namespace {

constexpr double kPinvCutoff = 1e-10;
constexpr double kRangeTolerance = 1e-8;

HermitianMatrix objective_matrix(const Objective& obj, std::size_t n) {
  return std::visit(
      [n](const auto& o) -> HermitianMatrix {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, TraceObjective>) {
          return HermitianMatrix::identity(n);
        } else if constexpr (std::is_same_v<T, FeasibilityObjective>) {
          return HermitianMatrix::zero(n);
        } else {
          require_dimension(o.c.dim() == n, "solve: objective matrix dimension mismatch");
          return o.c;
        }
      },
      obj);
}

HermitianMatrix real_part(const HermitianMatrix& x) {
  return HermitianMatrix(x.matrix().real().cast<Complex>());
}

double relative_residual(const MeasurementEnsemble& ens, const HermitianMatrix& x,
                         const IntensityVector& b, double b_norm) {
  return (forward(ens, x).values - b.values).norm() / b_norm;
}

}  // namespace

void SolverConfig::validate() const {
  if (max_iters == 0) throw InvalidArgument("solver: max_iters must be positive");
  if (!(tol_primal > 0.0) || !(tol_dual > 0.0)) {
    throw InvalidArgument("solver: tolerances must be positive");
  }
  if (!(rho > 0.0)) throw InvalidArgument("solver: rho must be positive");
  if (history_stride == 0) throw InvalidArgument("solver: history_stride must be positive");
}

AffineProjector::AffineProjector(const MeasurementEnsemble& ens) : ens_(&ens) {
  const RMatrix g = gram_matrix(ens);
  Eigen::SelfAdjointEigenSolver<RMatrix> es(g);
  if (es.info() != Eigen::Success) throw NumericalError("affine projector: Gram eigensolver failed");
  const RVector& ev = es.eigenvalues();
  const double top = ev.size() > 0 ? ev[ev.size() - 1] : 0.0;
  std::vector<Eigen::Index> kept;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev[i] > kPinvCutoff * top) kept.push_back(i);
  }
  rank_ = kept.size();
  range_basis_.resize(g.rows(), static_cast<Eigen::Index>(rank_));
  inv_eigenvalues_.resize(static_cast<Eigen::Index>(rank_));
  for (std::size_t j = 0; j < kept.size(); ++j) {
    const auto col = static_cast<Eigen::Index>(j);
    range_basis_.col(col) = es.eigenvectors().col(kept[j]);
    inv_eigenvalues_[col] = 1.0 / ev[kept[j]];
  }
}

std::size_t AffineProjector::structural_rank() const {
  const std::size_t n = ens_->n();
  const std::size_t lifted_dim = ens_->field() == Field::Complex ? n * n : n * (n + 1) / 2;
  return std::min(lifted_dim, ens_->m() - (ens_->r() - 1));
}

HermitianMatrix AffineProjector::project(const HermitianMatrix& x, const IntensityVector& b) const {
  require_dimension(b.size() == ens_->m(), "project_affine: measurement length mismatch");
  const RVector residual = b.values - forward(*ens_, x).values;
  const RVector coeffs = range_basis_.transpose() * residual;
  const RVector y = range_basis_ * inv_eigenvalues_.cwiseProduct(coeffs);
  return x + adjoint(*ens_, IntensityVector{y});
}

double AffineProjector::range_residual(const IntensityVector& b) const {
  require_dimension(b.size() == ens_->m(), "range_residual: measurement length mismatch");
  const double norm = b.values.norm();
  if (norm == 0.0) return 0.0;
  const RVector in_range = range_basis_ * (range_basis_.transpose() * b.values);
  return (b.values - in_range).norm() / norm;
}

HermitianMatrix project_psd(const HermitianMatrix& x) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(x.matrix());
  if (es.info() != Eigen::Success) throw NumericalError("project_psd: eigensolver failed");
  const RVector clipped = es.eigenvalues().cwiseMax(0.0);
  const CMatrix& v = es.eigenvectors();
  return HermitianMatrix(v * clipped.cast<Complex>().asDiagonal() * v.adjoint());
}

HermitianMatrix project_affine(const MeasurementEnsemble& ens, const IntensityVector& b,
                               const HermitianMatrix& x) {
  return AffineProjector(ens).project(x, b);
}

SolverState solve(const MeasurementEnsemble& ens, const IntensityVector& b,
                  const SolverConfig& cfg) {
  cfg.validate();
  require_dimension(b.size() == ens.m(), "solve: measurement length does not match ensemble");
  const std::size_t n = ens.n();

  SolverState state;
  state.x = HermitianMatrix::zero(n);
  state.affine_iterate = HermitianMatrix::zero(n);
  state.dual = HermitianMatrix::zero(n);
  state.implied_trace = b.values.sum() / (ens.scale() * static_cast<double>(ens.r()));

  const double b_norm = b.values.norm();
  if (b_norm == 0.0) {
    state.converged = true;
    return state;
  }

  const AffineProjector projector(ens);
  state.gram_rank = projector.rank();
  state.gram_rank_warning = projector.rank() < projector.structural_rank();
  const double range_res = projector.range_residual(b);
  if (range_res > kRangeTolerance) {
    throw InfeasibleSystemError("solve: measurements are not in the range of A (relative residual " +
                                std::to_string(range_res) + ")");
  }

  const HermitianMatrix linear_step = objective_matrix(cfg.objective, n) * (1.0 / cfg.rho);
  const bool real_field = ens.field() == Field::Real;

  HermitianMatrix z = state.x;
  HermitianMatrix u = state.dual;
  HermitianMatrix x_aff = state.affine_iterate;
  double primal = std::numeric_limits<double>::infinity();
  double dual = std::numeric_limits<double>::infinity();

  std::size_t it = 0;
  while (it < cfg.max_iters) {
    ++it;
    x_aff = projector.project(z - u - linear_step, b);
    HermitianMatrix z_next = project_psd(x_aff + u);
    if (real_field) z_next = real_part(z_next);
    u = u + x_aff - z_next;
    const double z_norm = z_next.frobenius_norm();
    dual = (z_next - z).frobenius_norm() / std::fmax(z_norm, std::numeric_limits<double>::min());
    z = std::move(z_next);

    const bool record = it % cfg.history_stride == 0;
    if (dual <= cfg.tol_dual || record) {
      primal = relative_residual(ens, z, b, b_norm);
      if (record) state.history.push_back({it, primal, dual});
      if (dual <= cfg.tol_dual && primal <= cfg.tol_primal) {
        state.converged = true;
        break;
      }
    }
  }

  state.x = z;
  state.affine_iterate = x_aff;
  state.dual = u;
  state.iterations = it;
  state.primal_residual = relative_residual(ens, z, b, b_norm);
  state.dual_residual = dual;
  const double x_norm = z.frobenius_norm();
  state.min_eigenvalue_ratio = x_norm > 0.0 ? z.eigenvalues()[0] / x_norm : 0.0;
  state.trace_gap = z.trace() - state.implied_trace;
  return state;
}

double phase_aligned_error(const CVector& x_hat, const CVector& x_true) {
  require_dimension(x_hat.size() == x_true.size(), "phase_aligned_error: length mismatch");
  const double ref = x_true.norm();
  if (ref == 0.0) throw DegenerateInputError("phase_aligned_error: reference signal is zero");
  const Complex c = x_true.dot(x_hat);  // <x, x_hat> = x* x_hat
  const double mod = std::abs(c);
  const Complex phase = mod > 0.0 ? c / mod : Complex(1.0, 0.0);
  CVector aligned(x_true.size());
  for (Eigen::Index i = 0; i < x_true.size(); ++i) aligned[i] = phase * x_true[i];
  return (x_hat - aligned).norm() / ref;
}

RecoveryResult extract(const HermitianMatrix& x_hat, const std::optional<CVector>& x_true) {
  const std::size_t n = x_hat.dim();
  require_dimension(n >= 1, "extract: empty matrix");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(x_hat.matrix());
  if (es.info() != Eigen::Success) throw NumericalError("extract: eigensolver failed");
  const auto top = static_cast<Eigen::Index>(n - 1);
  const double l1 = es.eigenvalues()[top];
  const double l2 = n >= 2 ? es.eigenvalues()[top - 1] : 0.0;

  RecoveryResult out;
  out.x_hat_matrix = x_hat;
  out.degenerate = !(l1 > 0.0);
  if (out.degenerate) {
    out.x_hat = CVector::Zero(static_cast<Eigen::Index>(n));
    out.eigengap = 0.0;
  } else {
    out.x_hat = es.eigenvectors().col(top) * std::sqrt(l1);
    out.eigengap = std::fmax(0.0, (l1 - l2) / l1);
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  out.rel_error_lifted = nan;
  out.rel_error_signal = nan;
  if (x_true) {
    require_dimension(static_cast<std::size_t>(x_true->size()) == n, "extract: signal length mismatch");
    const HermitianMatrix truth = HermitianMatrix::outer(*x_true);
    out.rel_error_lifted = (x_hat - truth).frobenius_norm() / truth.frobenius_norm();
    out.rel_error_signal = phase_aligned_error(out.x_hat, *x_true);
  }
  return out;
}

RecoveryOutcome run_recovery_trial(RandomStream& stream, std::size_t n, std::size_t r,
                                   Field field, const SolverConfig& cfg) {
  RecoveryOutcome out;
  out.signal = normalize_with_floor(sample_gaussian_vector(stream, n, field), 0.0);
  const auto ens = MeasurementEnsemble::sample(stream, n, r, field, /*scaled=*/false);
  const IntensityVector b = measure(ens, out.signal);
  out.state = solve(ens, b, cfg);
  out.result = extract(out.state.x, out.signal);
  return out;
}

}  // namespace phaselift

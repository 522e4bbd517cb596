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

#include "phaselift/lifted_ops.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "phaselift/kernels.hpp"

namespace phaselift {

HermitianMatrix::HermitianMatrix(const CMatrix& m) {
  require_dimension(m.rows() == m.cols(), "HermitianMatrix: matrix must be square");
  m_ = (m + m.adjoint()) * 0.5;
}

HermitianMatrix HermitianMatrix::zero(std::size_t n) {
  const auto d = static_cast<Eigen::Index>(n);
  return HermitianMatrix(CMatrix::Zero(d, d));
}

HermitianMatrix HermitianMatrix::identity(std::size_t n) {
  const auto d = static_cast<Eigen::Index>(n);
  return HermitianMatrix(CMatrix::Identity(d, d));
}

HermitianMatrix HermitianMatrix::basis_projector(std::size_t n, std::size_t k) {
  require_dimension(k < n, "basis_projector: index out of range");
  const auto d = static_cast<Eigen::Index>(n);
  CMatrix m = CMatrix::Zero(d, d);
  m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = 1.0;
  return HermitianMatrix(m);
}

HermitianMatrix HermitianMatrix::outer(const CVector& x) {
  return HermitianMatrix(x * x.adjoint());
}

RVector HermitianMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m_, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("eigenvalues: eigensolver failed");
  return es.eigenvalues();
}

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& o) const {
  require_dimension(dim() == o.dim(), "HermitianMatrix: dimension mismatch");
  HermitianMatrix out;
  out.m_ = m_ + o.m_;
  return out;
}

HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix& o) const {
  require_dimension(dim() == o.dim(), "HermitianMatrix: dimension mismatch");
  HermitianMatrix out;
  out.m_ = m_ - o.m_;
  return out;
}

HermitianMatrix HermitianMatrix::operator*(double s) const {
  HermitianMatrix out;
  out.m_ = m_ * s;
  return out;
}

double inner(const HermitianMatrix& a, const HermitianMatrix& b) {
  require_dimension(a.dim() == b.dim(), "inner: dimension mismatch");
  return (a.matrix().conjugate().cwiseProduct(b.matrix())).sum().real();
}

MeasurementEnsemble::MeasurementEnsemble(std::vector<UnitarySample> unitaries, bool scaled)
    : unitaries_(std::move(unitaries)), scaled_(scaled) {
  if (unitaries_.empty()) throw InvalidArgument("ensemble: need at least one unitary (r >= 1)");
  n_ = unitaries_.front().n();
  field_ = unitaries_.front().field;
  require_dimension(n_ >= 1, "ensemble: dimension must be at least 1");
  const auto d = static_cast<Eigen::Index>(n_);
  rows_.resize(static_cast<Eigen::Index>(m()), d);
  for (std::size_t k = 0; k < unitaries_.size(); ++k) {
    const auto& u = unitaries_[k];
    require_dimension(u.n() == n_ && u.entries.cols() == d,
                      "ensemble: all unitaries must share one dimension");
    if (u.field != field_) throw InvalidArgument("ensemble: mixed real and complex unitaries");
    rows_.middleRows(static_cast<Eigen::Index>(k * n_), d) = u.entries;
  }
}

MeasurementEnsemble MeasurementEnsemble::sample(RandomStream& stream, std::size_t n,
                                                std::size_t r, Field field, bool scaled) {
  if (r == 0) throw InvalidArgument("ensemble: r must be at least 1");
  std::vector<UnitarySample> us;
  us.reserve(r);
  for (std::size_t k = 0; k < r; ++k) us.push_back(sample_haar(stream, n, field));
  return MeasurementEnsemble(std::move(us), scaled);
}

MeasurementEnsemble MeasurementEnsemble::concatenate(const MeasurementEnsemble& a,
                                                     const MeasurementEnsemble& b) {
  if (a.scaled() != b.scaled()) throw InvalidArgument("concatenate: scaling conventions differ");
  std::vector<UnitarySample> us = a.unitaries();
  us.insert(us.end(), b.unitaries().begin(), b.unitaries().end());
  return MeasurementEnsemble(std::move(us), a.scaled());
}

double MeasurementEnsemble::scale() const {
  const double n = static_cast<double>(n_);
  return scaled_ ? std::sqrt(n * (n + 1.0)) : 1.0;
}

std::span<const Complex> MeasurementEnsemble::row(std::size_t i) const {
  return {rows_.data() + i * n_, n_};
}

IntensityVector forward(const MeasurementEnsemble& ens, const HermitianMatrix& x) {
  require_dimension(x.dim() == ens.n(), "forward: matrix dimension does not match ensemble");
  const auto& k = kernels::active();
  const std::size_t n = ens.n();
  // Row i of xu holds X u_i.
  const RowMatrix xu = ens.rows() * x.matrix().transpose();
  const double s = ens.scale();
  const double imag_tol = 1e-10 * std::fmax(1.0, x.frobenius_norm());
  IntensityVector out{RVector(static_cast<Eigen::Index>(ens.m()))};
  for (std::size_t i = 0; i < ens.m(); ++i) {
    const Complex q = k.cdotc(ens.rows().data() + i * n, xu.data() + i * n, n);
    if (std::abs(q.imag()) > imag_tol) {
      throw NumericalError("forward: quadratic form has a non-negligible imaginary part");
    }
    out.values[static_cast<Eigen::Index>(i)] = s * q.real();
  }
  return out;
}

IntensityVector measure(const MeasurementEnsemble& ens, const CVector& x) {
  require_dimension(static_cast<std::size_t>(x.size()) == ens.n(),
                    "measure: signal dimension does not match ensemble");
  const auto& k = kernels::active();
  const std::size_t n = ens.n();
  const std::size_t m = ens.m();
  CVector amplitudes(static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i) {
    amplitudes[static_cast<Eigen::Index>(i)] = k.cdotc(ens.rows().data() + i * n, x.data(), n);
  }
  IntensityVector out{RVector(static_cast<Eigen::Index>(m))};
  k.abs2(amplitudes.data(), out.values.data(), m);
  if (ens.scaled()) out.values *= ens.scale();
  return out;
}

CMatrix weighted_outer_sum(const RowMatrix& rows, std::span<const double> weights) {
  require_dimension(static_cast<std::size_t>(rows.rows()) == weights.size(),
                    "weighted_outer_sum: weight count does not match row count");
  const auto& k = kernels::active();
  const auto n = rows.cols();
  const auto un = static_cast<std::size_t>(n);
  CMatrix acc = CMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    const double w = weights[static_cast<std::size_t>(i)];
    if (w == 0.0) continue;
    const Complex* u = rows.data() + i * n;
    // Column b of u u* is conj(u_b) u.
    for (Eigen::Index b = 0; b < n; ++b) {
      k.caxpy(w * std::conj(u[b]), u, acc.data() + b * n, un);
    }
  }
  return acc;
}

HermitianMatrix adjoint(const MeasurementEnsemble& ens, const IntensityVector& y) {
  require_dimension(y.size() == ens.m(), "adjoint: vector length does not match m");
  const RVector w = y.values * ens.scale();
  return HermitianMatrix(weighted_outer_sum(ens.rows(), {w.data(), ens.m()}));
}

RMatrix gram_matrix(const MeasurementEnsemble& ens) {
  const CMatrix inner_products = ens.rows().conjugate() * ens.rows().transpose();
  const double s2 = ens.scale() * ens.scale();
  return inner_products.cwiseAbs2() * s2;
}

HermitianMatrix project_Tperp(const HermitianMatrix& x) {
  CMatrix m = x.matrix();
  if (m.rows() > 0) {
    m.row(0).setZero();
    m.col(0).setZero();
  }
  return HermitianMatrix(m);
}

HermitianMatrix project_T(const HermitianMatrix& x) { return x - project_Tperp(x); }

HermitianMatrix mean_op_S(const HermitianMatrix& x) {
  return x + HermitianMatrix::identity(x.dim()) * x.trace();
}

HermitianMatrix mean_op_S_inv(const HermitianMatrix& x) {
  const double n = static_cast<double>(x.dim());
  return x - HermitianMatrix::identity(x.dim()) * (x.trace() / (n + 1.0));
}

}  // namespace phaselift

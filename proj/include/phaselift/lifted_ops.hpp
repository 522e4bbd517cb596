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
#include <span>
#include <vector>

#include "phaselift/common.hpp"
#include "phaselift/ensembles.hpp"
#include "phaselift/random_stream.hpp"

namespace phaselift {

using RowMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Dense n x n Hermitian matrix. Construction symmetrizes its argument, so
/// the stored matrix is Hermitian up to rounding of (M + M*) / 2.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const CMatrix& m);

  static HermitianMatrix zero(std::size_t n);
  static HermitianMatrix identity(std::size_t n);
  /// e_k e_k* (k is zero-based).
  static HermitianMatrix basis_projector(std::size_t n, std::size_t k);
  /// x x*
  static HermitianMatrix outer(const CVector& x);

  const CMatrix& matrix() const { return m_; }
  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  double trace() const { return m_.trace().real(); }
  double frobenius_norm() const { return m_.norm(); }
  /// Eigenvalues in ascending order.
  RVector eigenvalues() const;

  HermitianMatrix operator+(const HermitianMatrix& o) const;
  HermitianMatrix operator-(const HermitianMatrix& o) const;
  HermitianMatrix operator*(double s) const;

 private:
  CMatrix m_;
};

/// Re Tr(A* B), the real inner product on Hermitian matrices.
double inner(const HermitianMatrix& a, const HermitianMatrix& b);

/// The r unitaries U_k stacked row by row. Measurement i = k n + j uses
/// u_i = (row j of U_k)^T, so that (u_i u_i*)_{ab} = U_k(j, a) conj(U_k(j, b)).
///
/// With `scaled`, every measurement carries the factor s = sqrt(n (n + 1)):
/// A(X)_i = s u_i* X u_i and A*(y) = s sum_i y_i u_i u_i*. Without it, A(xx*)
/// is the intensity |conj(U_k) x|^2, equal in law to |U_k x|^2.
class MeasurementEnsemble {
 public:
  MeasurementEnsemble(std::vector<UnitarySample> unitaries, bool scaled);

  static MeasurementEnsemble sample(RandomStream& stream, std::size_t n, std::size_t r,
                                    Field field, bool scaled);

  /// Ensemble formed by the unitaries of `a` followed by those of `b`.
  static MeasurementEnsemble concatenate(const MeasurementEnsemble& a,
                                         const MeasurementEnsemble& b);

  std::size_t n() const { return n_; }
  std::size_t r() const { return unitaries_.size(); }
  std::size_t m() const { return n_ * unitaries_.size(); }
  Field field() const { return field_; }
  bool scaled() const { return scaled_; }
  /// sqrt(n (n + 1)) when scaled, else 1.
  double scale() const;

  const std::vector<UnitarySample>& unitaries() const { return unitaries_; }
  /// m x n, row-major; row i holds u_i.
  const RowMatrix& rows() const { return rows_; }
  std::span<const Complex> row(std::size_t i) const;

 private:
  std::vector<UnitarySample> unitaries_;
  RowMatrix rows_;
  std::size_t n_ = 0;
  Field field_ = Field::Complex;
  bool scaled_ = false;
};

/// b = A(X): m nonnegative intensities when X is PSD.
struct IntensityVector {
  RVector values;

  std::size_t size() const { return static_cast<std::size_t>(values.size()); }
};

/// A(X)_i = s u_i* X u_i.
IntensityVector forward(const MeasurementEnsemble& ens, const HermitianMatrix& x);

/// A(x x*) evaluated as s |<u_i, x>|^2 without forming x x*.
IntensityVector measure(const MeasurementEnsemble& ens, const CVector& x);

/// A*(y) = s sum_i y_i u_i u_i*.
HermitianMatrix adjoint(const MeasurementEnsemble& ens, const IntensityVector& y);

/// sum_i w_i u_i u_i* over the rows of `rows`.
CMatrix weighted_outer_sum(const RowMatrix& rows, std::span<const double> weights);

/// G_ij = s^2 |<u_i, u_j>|^2, the matrix of A A*.
RMatrix gram_matrix(const MeasurementEnsemble& ens);

// Tangent space at e1 e1*: with P = e1 e1*, X_T = P X + X P - P X P and
// X_T-perp = (I - P) X (I - P).
HermitianMatrix project_T(const HermitianMatrix& x);
HermitianMatrix project_Tperp(const HermitianMatrix& x);

/// S(X) = X + Tr(X) I, the normalized expectation (1/m) E[A* A] of the
/// scaled operator.
HermitianMatrix mean_op_S(const HermitianMatrix& x);
/// S^{-1}(X) = X - Tr(X) / (n + 1) I.
HermitianMatrix mean_op_S_inv(const HermitianMatrix& x);

}  // namespace phaselift

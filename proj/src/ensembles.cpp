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

#include "phaselift/ensembles.hpp"

#include <cmath>
#include <string>

namespace phaselift {

namespace {

void require_positive_dimension(std::size_t n, const char* what) {
  if (n == 0) throw DimensionError(std::string(what) + ": dimension must be at least 1");
}

}  // namespace

void SurrogateConfig::validate() const {
  if (!(c1 > 1.0)) throw InvalidArgument("surrogate: c1 must exceed 1");
  if (!(c2 > 0.0 && c2 < 1.0)) throw InvalidArgument("surrogate: c2 must lie in (0, 1)");
}

CVector sample_gaussian_vector(RandomStream& stream, std::size_t n, Field field) {
  require_positive_dimension(n, "sample_gaussian_vector");
  CVector z(static_cast<Eigen::Index>(n));
  if (field == Field::Real) {
    for (auto& zi : z) zi = Complex(stream.normal(), 0.0);
  } else {
    const double s = std::sqrt(0.5);
    for (auto& zi : z) {
      const double re = stream.normal();
      const double im = stream.normal();
      zi = Complex(s * re, s * im);
    }
  }
  return z;
}

CMatrix sample_gaussian_matrix(RandomStream& stream, std::size_t n, Field field) {
  require_positive_dimension(n, "sample_gaussian_matrix");
  const auto dim = static_cast<Eigen::Index>(n);
  CMatrix g(dim, dim);
  const double s = field == Field::Real ? 1.0 : std::sqrt(0.5);
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      if (field == Field::Real) {
        g(i, j) = Complex(stream.normal(), 0.0);
      } else {
        const double re = stream.normal();
        const double im = stream.normal();
        g(i, j) = Complex(s * re, s * im);
      }
    }
  }
  return g;
}

UnitarySample sample_haar(RandomStream& stream, std::size_t n, Field field) {
  require_positive_dimension(n, "sample_haar");
  const auto dim = static_cast<Eigen::Index>(n);
  const CMatrix g = sample_gaussian_matrix(stream, n, field);
  if (field == Field::Real) {
    const RMatrix gr = g.real();
    Eigen::HouseholderQR<RMatrix> qr(gr);
    RMatrix q = qr.householderQ();
    const auto& r = qr.matrixQR();
    for (Eigen::Index j = 0; j < dim; ++j) {
      if (r(j, j) < 0.0) q.col(j) = -q.col(j);
    }
    return {q.cast<Complex>(), Field::Real};
  }
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const auto& r = qr.matrixQR();
  // G = Q R = (Q D)(D* R) with D = diag(phase(R_jj)); D* R has a positive
  // diagonal, which makes Q D exactly Haar.
  for (Eigen::Index j = 0; j < dim; ++j) {
    const double mod = std::abs(r(j, j));
    if (mod > 0.0) q.col(j) *= r(j, j) / mod;
  }
  return {std::move(q), Field::Complex};
}

double unitarity_defect(const CMatrix& u) {
  const auto dim = u.cols();
  return (u.adjoint() * u - CMatrix::Identity(dim, dim)).norm();
}

CVector normalize_with_floor(const CVector& x, double floor) {
  const double norm = x.norm();
  const double denom = std::fmax(norm, floor);
  if (denom == 0.0) return CVector::Zero(x.size());
  return x / denom;
}

OrthonormalPair gram_schmidt_pair(const CVector& zeta, const CVector& z) {
  if (zeta.size() != z.size() || z.size() == 0) {
    throw DimensionError("gram_schmidt_pair: inputs must be nonempty and of equal length");
  }
  if (z.norm() == 0.0 || zeta.norm() == 0.0) {
    throw DegenerateInputError("gram_schmidt_pair: zero input vector");
  }
  OrthonormalPair out;
  out.u1 = normalize_with_floor(z, 0.0);
  const CVector v_zeta = normalize_with_floor(zeta, 0.0);
  const CVector residual = v_zeta - out.u1 * out.u1.dot(v_zeta);
  const double res_norm = residual.norm();
  if (!(res_norm > 1e-14)) {
    throw DegenerateInputError("gram_schmidt_pair: inputs are parallel");
  }
  out.u2 = residual / res_norm;
  return out;
}

CVector surrogate_v1(const CVector& x, const SurrogateConfig& cfg, std::size_t n) {
  return normalize_with_floor(x, std::sqrt(static_cast<double>(n) / cfg.c1));
}

CVector surrogate_v2(const CVector& x, const SurrogateConfig& cfg) {
  return normalize_with_floor(x, std::sqrt(cfg.c2));
}

}  // namespace phaselift

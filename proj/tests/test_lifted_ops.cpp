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

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include "phaselift/ensembles.hpp"
#include "phaselift/lifted_ops.hpp"

using namespace phaselift;

namespace {

HermitianMatrix random_hermitian(RandomStream& s, std::size_t n) {
  return HermitianMatrix(sample_gaussian_matrix(s, n, Field::Complex));
}

}  // namespace

TEST(HermitianMatrix, SymmetrizesAndFactories) {
  CMatrix m(2, 2);
  m << 1.0, Complex(2, 1), Complex(0, 3), Complex(4, 5);
  const HermitianMatrix h(m);
  EXPECT_EQ(h.matrix(), h.matrix().adjoint());
  EXPECT_DOUBLE_EQ(h.trace(), 5.0);
  EXPECT_EQ(h.matrix()(0, 1), Complex(1.0, -1.0));  // ((2 + i) + conj(3i)) / 2

  EXPECT_DOUBLE_EQ(HermitianMatrix::identity(4).trace(), 4.0);
  const HermitianMatrix p = HermitianMatrix::basis_projector(3, 1);
  EXPECT_EQ(p.matrix()(1, 1), Complex(1.0));
  EXPECT_DOUBLE_EQ(p.frobenius_norm(), 1.0);
  EXPECT_THROW(HermitianMatrix::basis_projector(3, 3), DimensionError);

  CVector x(2);
  x << Complex(1, 1), Complex(0, 2);
  const HermitianMatrix o = HermitianMatrix::outer(x);
  EXPECT_DOUBLE_EQ(o.trace(), x.squaredNorm());
  EXPECT_EQ(o.matrix()(0, 1), x(0) * std::conj(x(1)));
}

TEST(HermitianMatrix, EigenvaluesMatchGeneralSolver) {
  RandomStream s(1, 0);
  const HermitianMatrix h = random_hermitian(s, 7);
  const RVector ev = h.eigenvalues();
  Eigen::ComplexEigenSolver<CMatrix> ces(h.matrix());
  std::vector<double> ref;
  for (const auto& z : ces.eigenvalues()) ref.push_back(z.real());
  std::sort(ref.begin(), ref.end());
  for (int i = 0; i < 7; ++i) EXPECT_NEAR(ev[i], ref[i], 1e-12);
  EXPECT_TRUE(std::is_sorted(ev.begin(), ev.end()));
}

TEST(HermitianMatrix, InnerProductAndArithmetic) {
  RandomStream s(1, 1);
  const HermitianMatrix a = random_hermitian(s, 4), b = random_hermitian(s, 4);
  const double ref = (a.matrix().adjoint() * b.matrix()).trace().real();
  EXPECT_NEAR(inner(a, b), ref, 1e-12);
  EXPECT_NEAR(inner(a, a), a.frobenius_norm() * a.frobenius_norm(), 1e-12);
  EXPECT_NEAR(((a + b) - b - a).frobenius_norm(), 0.0, 1e-14);
  EXPECT_NEAR((a * 2.0).trace(), 2.0 * a.trace(), 1e-13);
}

TEST(MeasurementEnsemble, RowLayoutFollowsUnitaries) {
  RandomStream s(2, 0);
  const auto ens = MeasurementEnsemble::sample(s, 5, 3, Field::Complex, false);
  EXPECT_EQ(ens.m(), 15u);
  for (std::size_t k = 0; k < 3; ++k) {
    for (std::size_t j = 0; j < 5; ++j) {
      const auto row = ens.row(k * 5 + j);
      for (std::size_t a = 0; a < 5; ++a) {
        EXPECT_EQ(row[a], ens.unitaries()[k].entries(j, a));
      }
    }
  }
  EXPECT_DOUBLE_EQ(ens.scale(), 1.0);
  const auto scaled = MeasurementEnsemble(ens.unitaries(), true);
  EXPECT_DOUBLE_EQ(scaled.scale(), std::sqrt(30.0));
}

TEST(MeasurementEnsemble, RejectsBadInput) {
  EXPECT_THROW(MeasurementEnsemble({}, false), InvalidArgument);
  RandomStream s(2, 1);
  std::vector<UnitarySample> mixed{sample_haar(s, 3, Field::Complex), sample_haar(s, 4, Field::Complex)};
  EXPECT_THROW(MeasurementEnsemble(mixed, false), DimensionError);
  const auto a = MeasurementEnsemble::sample(s, 3, 2, Field::Complex, false);
  const auto b = MeasurementEnsemble::sample(s, 3, 1, Field::Complex, false);
  const auto c = MeasurementEnsemble::concatenate(a, b);
  EXPECT_EQ(c.r(), 3u);
  EXPECT_EQ(c.row(6)[1], b.row(0)[1]);
  const auto d = MeasurementEnsemble::sample(s, 4, 1, Field::Complex, false);
  EXPECT_THROW(MeasurementEnsemble::concatenate(a, d), DimensionError);
}

TEST(LinearMaps, ForwardOfOuterEqualsMeasure) {
  RandomStream s(3, 0);
  for (bool scaled : {false, true}) {
    const auto ens = MeasurementEnsemble::sample(s, 6, 4, Field::Complex, scaled);
    const CVector x = sample_gaussian_vector(s, 6, Field::Complex);
    const auto f = forward(ens, HermitianMatrix::outer(x));
    const auto m = measure(ens, x);
    ASSERT_EQ(f.size(), ens.m());
    for (std::size_t i = 0; i < ens.m(); ++i) {
      // Brute force: s |u_i* x|^2 with u_i as a column vector.
      const CVector u = Eigen::Map<const CVector>(ens.row(i).data(), 6);
      const double ref = ens.scale() * std::norm(u.dot(x));
      EXPECT_NEAR(m.values[i], ref, 1e-12 * (1 + ref));
      EXPECT_NEAR(f.values[i], ref, 1e-12 * (1 + ref));
    }
  }
}

TEST(LinearMaps, AdjointIdentity) {
  RandomStream s(3, 1);
  for (Field field : {Field::Real, Field::Complex}) {
    const auto ens = MeasurementEnsemble::sample(s, 7, 3, field, true);
    const HermitianMatrix x = random_hermitian(s, 7);
    IntensityVector y{RVector::Zero(static_cast<Eigen::Index>(ens.m()))};
    for (auto& v : y.values) v = s.normal();
    const double lhs = forward(ens, x).values.dot(y.values);
    const double rhs = inner(x, adjoint(ens, y));
    EXPECT_NEAR(lhs, rhs, 1e-11 * (1 + std::abs(lhs)));
  }
}

TEST(LinearMaps, GramMatrixIsForwardOfAdjoint) {
  RandomStream s(3, 2);
  const auto ens = MeasurementEnsemble::sample(s, 4, 3, Field::Complex, true);
  const RMatrix g = gram_matrix(ens);
  for (std::size_t j = 0; j < ens.m(); ++j) {
    IntensityVector e{RVector::Unit(static_cast<Eigen::Index>(ens.m()), static_cast<Eigen::Index>(j))};
    const RVector col = forward(ens, adjoint(ens, e)).values;
    EXPECT_LT((col - g.col(static_cast<Eigen::Index>(j))).norm(), 1e-11);
  }
}

TEST(LinearMaps, MeasureRejectsWrongLength) {
  RandomStream s(3, 3);
  const auto ens = MeasurementEnsemble::sample(s, 4, 1, Field::Complex, false);
  EXPECT_THROW(measure(ens, CVector::Ones(5)), DimensionError);
  EXPECT_THROW(forward(ens, HermitianMatrix::identity(3)), DimensionError);
}

TEST(LinearMaps, ScaledL1IdentityIsExact) {
  RandomStream s(4, 0);
  for (std::size_t n : {4, 16, 64}) {
    const auto ens = MeasurementEnsemble::sample(s, n, 3, Field::Complex, true);
    for (int t = 0; t < 20; ++t) {
      const CVector x = sample_gaussian_vector(s, n, Field::Complex).normalized();
      const double l1 = measure(ens, x).values.lpNorm<1>();
      EXPECT_NEAR(l1 / (3.0 * ens.scale()), 1.0, 1e-12);
    }
  }
}

TEST(TangentSpace, ProjectionsSplitAndAreOrthogonal) {
  RandomStream s(5, 0);
  const HermitianMatrix x = random_hermitian(s, 5), y = random_hermitian(s, 5);
  const HermitianMatrix t = project_T(x), tp = project_Tperp(x);
  EXPECT_LT((t + tp - x).frobenius_norm(), 1e-14);
  for (int a = 0; a < 5; ++a) {
    EXPECT_EQ(tp.matrix()(0, a), Complex(0.0));
    EXPECT_EQ(tp.matrix()(a, 0), Complex(0.0));
  }
  EXPECT_NEAR(inner(project_T(y), tp), 0.0, 1e-13);
  EXPECT_LT((project_T(t) - t).frobenius_norm(), 1e-15);
  // (I - P) X (I - P) with P = e1 e1*
  CMatrix q = CMatrix::Identity(5, 5);
  q(0, 0) = 0.0;
  EXPECT_LT((q * x.matrix() * q - tp.matrix()).norm(), 1e-14);
}

TEST(MeanOperator, InversePair) {
  RandomStream s(5, 1);
  const HermitianMatrix x = random_hermitian(s, 6);
  const HermitianMatrix sx = mean_op_S(x);
  EXPECT_LT((sx - x - HermitianMatrix::identity(6) * x.trace()).frobenius_norm(), 1e-13);
  EXPECT_LT((mean_op_S_inv(sx) - x).frobenius_norm(), 1e-13);
  EXPECT_LT((mean_op_S(mean_op_S_inv(x)) - x).frobenius_norm(), 1e-13);
}

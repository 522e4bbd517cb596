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

#include <cmath>
#include <set>

#include "phaselift/ensembles.hpp"
#include "phaselift/stats.hpp"

using namespace phaselift;

TEST(RandomStream, ReplaysAndSeparatesStreams) {
  RandomStream a(7, 3), b(7, 3), c(7, 4), d(8, 3);
  std::set<std::uint64_t> firsts;
  for (int i = 0; i < 100; ++i) {
    const auto va = a();
    EXPECT_EQ(va, b());
    if (i == 0) {
      firsts.insert(va);
      firsts.insert(c());
      firsts.insert(d());
    }
  }
  EXPECT_EQ(firsts.size(), 3u);
  EXPECT_EQ(a.master_seed(), 7u);
  EXPECT_EQ(a.stream_index(), 3u);
}

TEST(RandomStream, UniformAndNormalMoments) {
  RandomStream s(11, 0);
  RunningStats u, g, g2;
  for (int i = 0; i < 200000; ++i) {
    const double x = s.uniform();
    ASSERT_GE(x, 0.0);
    ASSERT_LT(x, 1.0);
    u.add(x);
    const double z = s.normal();
    g.add(z);
    g2.add(z * z);
  }
  EXPECT_LT(z_score(u.mean(), 0.5, u.std_error()), 5.0);
  EXPECT_LT(z_score(g.mean(), 0.0, g.std_error()), 5.0);
  EXPECT_LT(z_score(g2.mean(), 1.0, g2.std_error()), 5.0);
}

TEST(Gaussian, SquaredNormHasMeanN) {
  RandomStream s(1, 2);
  for (Field f : {Field::Real, Field::Complex}) {
    RunningStats st;
    for (int i = 0; i < 20000; ++i) st.add(sample_gaussian_vector(s, 6, f).squaredNorm());
    EXPECT_LT(z_score(st.mean(), 6.0, st.std_error()), 5.0) << to_string(f);
  }
  const CVector real = sample_gaussian_vector(s, 5, Field::Real);
  EXPECT_EQ(real.imag().norm(), 0.0);
}

TEST(Haar, SamplesAreUnitary) {
  RandomStream s(2, 0);
  for (Field f : {Field::Real, Field::Complex}) {
    for (std::size_t n : {1, 2, 3, 8, 64}) {
      const UnitarySample u = sample_haar(s, n, f);
      EXPECT_EQ(u.n(), n);
      EXPECT_EQ(u.field, f);
      EXPECT_LT(unitarity_defect(u.entries), 1e-12 * std::sqrt(double(n)) + 1e-14);
      if (f == Field::Real) {
        EXPECT_EQ(u.entries.imag().norm(), 0.0);
      }
    }
  }
}

TEST(Haar, ZeroDimensionRejected) {
  RandomStream s(2, 0);
  EXPECT_THROW(sample_haar(s, 0, Field::Complex), DimensionError);
}

// Entry moments of Haar matrices: complex E|u|^2 = 1/n, E|u|^4 = 2/(n(n+1));
// real E u^4 = 3/(n(n+2)). For both groups E|tr U|^2 = 1 (n >= 2 for O(n)).
TEST(Haar, EntryAndTraceMomentsMatchTheGroupIntegrals) {
  const std::size_t n = 5;
  const double nd = n;
  RandomStream s(4, 0);
  RunningStats c2, c4, r4, ctr, rtr;
  for (int k = 0; k < 40000; ++k) {
    const CMatrix uc = sample_haar(s, n, Field::Complex).entries;
    const CMatrix ur = sample_haar(s, n, Field::Real).entries;
    const double a = std::norm(uc(2, 3));
    c2.add(a);
    c4.add(a * a);
    const double b = std::norm(ur(1, 4));
    r4.add(b * b);
    ctr.add(std::norm(uc.trace()));
    rtr.add(std::norm(ur.trace()));
  }
  EXPECT_LT(z_score(c2.mean(), 1.0 / nd, c2.std_error()), 5.0);
  EXPECT_LT(z_score(c4.mean(), 2.0 / (nd * (nd + 1.0)), c4.std_error()), 5.0);
  EXPECT_LT(z_score(r4.mean(), 3.0 / (nd * (nd + 2.0)), r4.std_error()), 5.0);
  EXPECT_LT(z_score(ctr.mean(), 1.0, ctr.std_error()), 5.0);
  EXPECT_LT(z_score(rtr.mean(), 1.0, rtr.std_error()), 5.0);
}

TEST(Haar, LeftInvarianceOfFirstColumnPhase) {
  // Without the phase correction the diagonal of R would be real positive
  // but Q would be biased; with it, arg(u_11) is uniform: E u_11 = 0.
  RandomStream s(6, 0);
  RunningStats re, im;
  for (int k = 0; k < 40000; ++k) {
    const Complex z = sample_haar(s, 3, Field::Complex).entries(0, 0);
    re.add(z.real());
    im.add(z.imag());
  }
  EXPECT_LT(z_score(re.mean(), 0.0, re.std_error()), 5.0);
  EXPECT_LT(z_score(im.mean(), 0.0, im.std_error()), 5.0);
}

TEST(GramSchmidt, ProducesAnOrthonormalPair) {
  RandomStream s(3, 3);
  const CVector zeta = sample_gaussian_vector(s, 9, Field::Complex);
  const CVector z = sample_gaussian_vector(s, 9, Field::Complex);
  const OrthonormalPair p = gram_schmidt_pair(zeta, z);
  EXPECT_NEAR(p.u1.norm(), 1.0, 1e-14);
  EXPECT_NEAR(p.u2.norm(), 1.0, 1e-14);
  EXPECT_LT(std::abs(p.u1.dot(p.u2)), 1e-14);
  EXPECT_LT((p.u1 - z / z.norm()).norm(), 1e-15);
}

TEST(GramSchmidt, RejectsDegenerateInput) {
  CVector a = CVector::Ones(4), b = CVector::Ones(3);
  EXPECT_THROW(gram_schmidt_pair(a, b), DimensionError);
  EXPECT_THROW(gram_schmidt_pair(a, CVector::Zero(4)), DegenerateInputError);
  EXPECT_THROW(gram_schmidt_pair(a, Complex(0, 2) * a), DegenerateInputError);
}

TEST(Surrogates, FloorsAndDefaults) {
  SurrogateConfig cfg;
  EXPECT_DOUBLE_EQ(cfg.c1, 100.0);
  EXPECT_DOUBLE_EQ(cfg.c2, 0.25);
  cfg.validate();
  EXPECT_THROW((SurrogateConfig{1.0, 0.25}.validate()), InvalidArgument);
  EXPECT_THROW((SurrogateConfig{100.0, 1.0}.validate()), InvalidArgument);
  EXPECT_THROW((SurrogateConfig{100.0, 0.0}.validate()), InvalidArgument);

  const std::size_t n = 64;
  CVector small = CVector::Constant(n, Complex(0.01, 0.0));  // |x| = 0.08 < sqrt(0.64)
  EXPECT_NEAR(surrogate_v1(small, cfg, n).norm(), small.norm() / 0.8, 1e-14);
  CVector big = CVector::Constant(n, Complex(1.0, 1.0));
  EXPECT_EQ(surrogate_v1(big, cfg, n), normalize_with_floor(big, 0.0));
  EXPECT_EQ(normalize_with_floor(CVector::Zero(3), 0.0), CVector::Zero(3));
  EXPECT_NEAR(surrogate_v2(CVector::Constant(2, 0.1), cfg).norm(), std::sqrt(0.02) / 0.5, 1e-14);
}

TEST(Surrogates, LipschitzConstants) {
  SurrogateConfig cfg;
  const std::size_t n = 16;
  RandomStream s(8, 0);
  const double l1 = 2.0 * std::sqrt(cfg.c1 / n);
  const double l2 = 2.0 / std::sqrt(cfg.c2);
  for (int t = 0; t < 2000; ++t) {
    const double scale = 0.05 + 2.0 * s.uniform();
    const CVector x = scale * sample_gaussian_vector(s, n, Field::Complex);
    const CVector y = x + 0.1 * scale * sample_gaussian_vector(s, n, Field::Complex);
    const double d = (x - y).norm();
    EXPECT_LE((surrogate_v1(x, cfg, n) - surrogate_v1(y, cfg, n)).norm(), l1 * d * (1 + 1e-12));
    EXPECT_LE((surrogate_v2(x, cfg) - surrogate_v2(y, cfg)).norm(), l2 * d * (1 + 1e-12));
  }
}

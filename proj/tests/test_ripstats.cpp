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

#include "phaselift/ripstats.hpp"

using namespace phaselift;

TEST(Moments, ClosedForms) {
  for (std::size_t n : {1, 2, 7, 64}) EXPECT_DOUBLE_EQ(moment(n, 1), 1.0 / n);
  EXPECT_DOUBLE_EQ(moment(4, 2), 0.1);
  EXPECT_EQ(moment_exact(4, 2), Rational(1, 10));
  EXPECT_EQ(moment_exact(8, 3), Rational(6, 720));
  EXPECT_NEAR(moment(8, 3), 0.008333333333333333, 1e-18);
  EXPECT_EQ(cross_moment_exact(2), Rational(1, 6));
  EXPECT_THROW(moment(0, 1), InvalidArgument);
  EXPECT_THROW(moment(3, 0), InvalidArgument);
  EXPECT_THROW(cross_moment(1), InvalidArgument);
  EXPECT_THROW(moment(1u << 20, 12), InvalidArgument);  // overflow is reported, not wrapped
}

TEST(Moments, ConsistencyIdentityIsExact) {
  for (std::int64_t n = 2; n <= 200; ++n) {
    const auto un = static_cast<std::size_t>(n);
    EXPECT_EQ(moment_exact(un, 2) + Rational(n - 1) * cross_moment_exact(un), Rational(1, n)) << n;
  }
}

TEST(Moments, MonteCarloMatchesClosedForms) {
  const MomentEstimates est = haar_moments(8, 3, 200000, 21);
  EXPECT_EQ(est.rows, 200000u);
  for (std::size_t d = 1; d <= 3; ++d) {
    const Estimate& e = est.moments[d - 1];
    EXPECT_GT(e.std_error, 0.0);
    EXPECT_LT(z_score(e.value, moment(8, d), e.std_error), 4.0) << d;
  }
  EXPECT_LT(z_score(est.cross.value, cross_moment(8), est.cross.std_error), 4.0);
}

TEST(Moments, MonteCarloIgnoresThreadCount) {
  const auto a = haar_moments(6, 2, 20000, 5, 1);
  const auto b = haar_moments(6, 2, 20000, 5, 3);
  EXPECT_EQ(a.moments[1].value, b.moments[1].value);
  EXPECT_EQ(a.cross.std_error, b.cross.std_error);
}

TEST(RipExpectation, ValuesAndMinimum) {
  EXPECT_DOUBLE_EQ(rip_expectation(0.0), 1.0);
  EXPECT_DOUBLE_EQ(rip_expectation(1.0), 1.0);
  EXPECT_NEAR(rip_expectation(0.5), 1.25 / 1.5, 1e-15);
  EXPECT_NEAR(rip_expectation(rip_expectation_argmin()), 2.0 * (std::sqrt(2.0) - 1.0), 1e-15);
  EXPECT_NEAR(2.0 * (std::sqrt(2.0) - 1.0), 0.828427, 1e-6);
  double best = 2.0, arg = -1.0;
  for (int i = 0; i <= 10000; ++i) {
    const double l = i * 1e-4;
    if (rip_expectation(l) < best) {
      best = rip_expectation(l);
      arg = l;
    }
  }
  EXPECT_NEAR(arg, std::sqrt(2.0) - 1.0, 1e-3);
  EXPECT_NEAR(best, 2.0 * (std::sqrt(2.0) - 1.0), 1e-6);
  EXPECT_THROW(rip_expectation(-0.1), InvalidArgument);
  EXPECT_THROW(rip_expectation(1.1), InvalidArgument);
}

TEST(Rank2Spec, Validation) {
  RandomStream s(1, 0);
  const Rank2Spec r = Rank2Spec::random(10, 0.3, s);
  EXPECT_LT(std::abs(r.x1.dot(r.x2)), 1e-12);
  EXPECT_DOUBLE_EQ(r.operator_norm(), 1.0);
  EXPECT_THROW(Rank2Spec::standard(4, 1.5), InvalidArgument);
  EXPECT_THROW(Rank2Spec::standard(1, 0.5), DimensionError);
  Rank2Spec bad = Rank2Spec::standard(4, 0.5);
  bad.x2 = bad.x1;
  EXPECT_THROW(bad.validate(), InvalidArgument);
}

TEST(RipSample, BoundsAndLambdaZero) {
  RandomStream s(2, 0);
  for (double l : {0.0, 0.3, 1.0}) {
    for (std::size_t r : {1, 4}) {
      const RipSample v = rip_sample(12, r, Rank2Spec::standard(12, l), s);
      EXPECT_GE(v.value, 0.0);
      EXPECT_LE(v.value, 1.0 + l + 1e-12);
      if (l == 0.0) {
        EXPECT_NEAR(v.value, 1.0, 1e-13);  // columns of a unitary have unit norm
      }
      EXPECT_EQ(v.r, r);
      EXPECT_EQ(v.stream_index, 0u);
    }
  }
}

TEST(RipSample, MonteCarloMeanMatchesExpectation) {
  for (std::size_t n : {16, 64}) {
    std::uint64_t base = 0;
    for (double l : {0.0, 0.25, std::sqrt(2.0) - 1.0, 0.75, 1.0}) {
      const RunningStats st = rip_monte_carlo(n, 1, l, n == 16 ? 1500 : 500, 31, base);
      base += 1u << 20;
      if (l == 0.0) {
        EXPECT_NEAR(st.mean(), 1.0, 1e-12);
        continue;
      }
      EXPECT_LT(z_score(st.mean(), rip_expectation(l), st.std_error()), 3.5) << n << " " << l;
    }
  }
}

TEST(RipSample, InvariantUnderChoiceOfOrthonormalPair) {
  const std::size_t n = 32, trials = 1500;
  const double l = 0.5;
  RandomStream pick(3, 0);
  const Rank2Spec random_pair = Rank2Spec::random(n, l, pick);
  const Rank2Spec standard = Rank2Spec::standard(n, l);
  RunningStats a, b;
  for (std::size_t t = 0; t < trials; ++t) {
    RandomStream sa(4, t), sb(5, t);
    a.add(rip_sample(n, 1, standard, sa).value);
    b.add(rip_sample(n, 1, random_pair, sb).value);
  }
  const double se = std::hypot(a.std_error(), b.std_error());
  EXPECT_LT(std::abs(a.mean() - b.mean()), 3.5 * se);
}

TEST(RipSample, RealFieldRuns) {
  RandomStream s(2, 1);
  const RipSample v = rip_sample(8, 3, Rank2Spec::standard(8, 0.0), s, Field::Real);
  EXPECT_NEAR(v.value, 1.0, 1e-13);
}

TEST(RipLowerBound, HoldsAndConcentrates) {
  const auto rows = rip_lower_bound_check(64, 20, {std::sqrt(2.0) - 1.0, 0.0}, 200, kDefaultRipDelta, 7);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_GE(rows[0].hold_fraction(), 0.99);
  EXPECT_EQ(rows[1].holds, rows[1].trials);
  EXPECT_NEAR(rows[0].threshold, 2.0 * (std::sqrt(2.0) - 1.0) * 10.0 / 13.0, 1e-15);

  const auto narrow = rip_lower_bound_check(64, 50, {0.5}, 30, kDefaultRipDelta, 8);
  const auto wide = rip_lower_bound_check(64, 5, {0.5}, 30, kDefaultRipDelta, 8);
  EXPECT_LT(narrow[0].statistic.stddev(), wide[0].statistic.stddev());

  EXPECT_THROW(rip_lower_bound_check(64, 5, {0.5}, 10, 0.0, 1), InvalidArgument);
  EXPECT_THROW(rip_lower_bound_check(64, 5, {0.5}, 10, 0.3, 1), InvalidArgument);
  EXPECT_THROW(rip_lower_bound_check(64, 5, {}, 10, 0.1, 1), InvalidArgument);
}

TEST(Surrogate, AgreesWithExactStatisticAtDefaultConstants) {
  const SurrogateAgreement agg = surrogate_agreement(64, 10000, 0.5, SurrogateConfig{}, 9);
  EXPECT_EQ(agg.samples, 10000u);
  EXPECT_EQ(agg.disagreements, 0u);
  EXPECT_EQ(agg.floor_active, 0u);
}

TEST(Surrogate, DiffersWhenAFloorBinds) {
  RandomStream s(6, 0);
  const std::size_t n = 64;
  CVector z = sample_gaussian_vector(s, n, Field::Complex);
  z *= 0.5 / z.norm();  // below sqrt(n / c1) = 0.8
  CVector zeta = sample_gaussian_vector(s, n, Field::Complex);
  const SurrogatePair p = surrogate_statistic(zeta, z, 0.5, SurrogateConfig{});
  EXPECT_TRUE(p.floor_active);
  EXPECT_NE(p.exact, p.surrogate);
}

TEST(Injectivity, PhaseEquivalentVectorsAreIndistinguishable) {
  RandomStream s(7, 0);
  const auto ens = MeasurementEnsemble::sample(s, 8, 4, Field::Complex, false);
  const CVector x = sample_gaussian_vector(s, 8, Field::Complex);
  EXPECT_EQ(intensity_difference_l1(ens, x, Complex(0, 1) * x), 0.0);
  EXPECT_LT(intensity_difference_l1(ens, x, std::polar(1.0, 2.0) * x), 1e-14 * x.squaredNorm());
}

TEST(Injectivity, ProbeFindsPositiveRatiosGrowingWithR) {
  RandomStream s1(8, 1), s4(8, 4);
  const InjectivityResult one = injectivity_probe(8, 1, 10000, s1);
  const InjectivityResult four = injectivity_probe(8, 4, 10000, s4);
  EXPECT_GT(four.min_ratio, 0.0);
  EXPECT_EQ(four.ratio.count(), 10000u);
  EXPECT_GT(four.min_ratio, one.min_ratio);
  EXPECT_THROW(injectivity_probe(1, 2, 10, s1), InvalidArgument);
}

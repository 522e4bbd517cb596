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

/// Haar moment identities, the rank-2 l1 statistic behind the lower RIP-1
/// bound on the tangent space, the Lipschitz-surrogate agreement check and an
/// empirical injectivity probe. Complex field unless stated otherwise.

#include <cstddef>
#include <cstdint>
#include <vector>

#include <boost/rational.hpp>

#include "phaselift/common.hpp"
#include "phaselift/ensembles.hpp"
#include "phaselift/lifted_ops.hpp"
#include "phaselift/random_stream.hpp"
#include "phaselift/stats.hpp"

namespace phaselift {

using Rational = boost::rational<std::int64_t>;

/// E|u_ij|^(2d) = d! / (n (n + 1) ... (n + d - 1)), as an exact fraction.
/// Throws InvalidArgument if n < 1, d < 1, or the product overflows.
Rational moment_exact(std::size_t n, std::size_t d);
double moment(std::size_t n, std::size_t d);

/// E|u_ia|^2 |u_ib|^2 = 1 / (n (n + 1)) for a != b. Requires n >= 2.
Rational cross_moment_exact(std::size_t n);
double cross_moment(std::size_t n);

/// (1 + lambda^2) / (1 + lambda), for lambda in [0, 1].
double rip_expectation(double lambda);

/// sqrt(2) - 1, where rip_expectation attains its minimum 2 (sqrt(2) - 1).
double rip_expectation_argmin();

/// X = x1 x1* - lambda x2 x2* with orthonormal x1, x2 and 0 <= lambda <= 1.
/// Its operator norm is max(1, lambda) = 1.
struct Rank2Spec {
  double lambda = 0.0;
  CVector x1;
  CVector x2;

  /// x1 = e1, x2 = e2.
  static Rank2Spec standard(std::size_t n, double lambda);
  /// A Haar-random orthonormal pair.
  static Rank2Spec random(std::size_t n, double lambda, RandomStream& stream);

  std::size_t n() const { return static_cast<std::size_t>(x1.size()); }
  double operator_norm() const { return lambda > 1.0 ? lambda : 1.0; }
  /// Throws InvalidArgument / DimensionError.
  void validate() const;
};

struct RipSample {
  /// (1/r) sum_i | |<u_i, x1>|^2 - lambda |<u_i, x2>|^2 |, in [0, 1 + lambda]
  double value = 0.0;
  std::size_t n = 0;
  std::size_t r = 0;
  double lambda = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t stream_index = 0;
};

/// Draws r Haar unitaries (or orthogonal matrices for Field::Real) from
/// `stream` and evaluates the statistic. The closed-form expectation applies
/// to the complex field only.
RipSample rip_sample(std::size_t n, std::size_t r, const Rank2Spec& spec, RandomStream& stream,
                     Field field = Field::Complex);

/// `trials` independent rip_sample values for the standard pair, trial t on
/// stream (seed, stream_base + t).
RunningStats rip_monte_carlo(std::size_t n, std::size_t r, double lambda, std::size_t trials,
                             std::uint64_t seed, std::uint64_t stream_base = 0,
                             std::size_t threads = 0, Field field = Field::Complex);

struct RipCheckRow {
  double lambda = 0.0;
  /// 2 (sqrt(2) - 1) (1 - delta) ||X||
  double threshold = 0.0;
  std::size_t trials = 0;
  std::size_t holds = 0;
  RunningStats statistic;

  double hold_fraction() const {
    return trials == 0 ? 0.0 : static_cast<double>(holds) / static_cast<double>(trials);
  }
};

constexpr double kDefaultRipDelta = 3.0 / 13.0;

/// For each lambda, how often the statistic clears the lower RIP-1 bound.
/// Lambda index l, trial t uses stream (seed, l * 2^32 + t).
std::vector<RipCheckRow> rip_lower_bound_check(std::size_t n, std::size_t r,
                                               const std::vector<double>& lambda_grid,
                                               std::size_t trials, double delta,
                                               std::uint64_t seed, std::size_t threads = 0,
                                               Field field = Field::Complex);

/// F = sum_i | |u1_i|^2 - lambda |u2_i|^2 | for a column pair.
double rank2_statistic(const CVector& u1, const CVector& u2, double lambda);

struct SurrogatePair {
  double exact = 0.0;      ///< F built from gram_schmidt_pair(zeta, z)
  double surrogate = 0.0;  ///< F built from the floored normalizations
  /// Whether any floor was active (|z| or |zeta| below sqrt(n / c1), or the
  /// residual below sqrt(c2)).
  bool floor_active = false;
};

SurrogatePair surrogate_statistic(const CVector& zeta, const CVector& z, double lambda,
                                  const SurrogateConfig& cfg);

struct SurrogateAgreement {
  std::size_t samples = 0;
  std::size_t disagreements = 0;  ///< surrogate != exact, compared bit for bit
  std::size_t floor_active = 0;
};

SurrogateAgreement surrogate_agreement(std::size_t n, std::size_t samples, double lambda,
                                       const SurrogateConfig& cfg, std::uint64_t seed,
                                       std::size_t threads = 0);

/// (1/r) || A(x x*) - A(y y*) ||_1 for the unscaled ensemble.
double intensity_difference_l1(const MeasurementEnsemble& ens, const CVector& x, const CVector& y);

struct InjectivityResult {
  std::size_t n = 0;
  std::size_t r = 0;
  std::size_t pairs = 0;
  /// Ratio (1/r) ||A(xx* - yy*)||_1 / ||xx* - yy*||_op over the sampled pairs.
  double min_ratio = 0.0;
  RunningStats ratio;
};

/// One ensemble of r Haar unitaries, then `pairs` random unit vector pairs.
InjectivityResult injectivity_probe(std::size_t n, std::size_t r, std::size_t pairs,
                                    RandomStream& stream);

struct MomentEstimates {
  std::size_t n = 0;
  std::size_t rows = 0;
  /// moments[d - 1] estimates E|u_ij|^(2d); standard errors use per-matrix means.
  std::vector<Estimate> moments;
  Estimate cross;
};

/// Haar matrices drawn per stream in haar_moments; block b uses stream (seed, b).
inline constexpr std::size_t kMomentBlockMatrices = 512;

/// Samples ceil(rows / n) Haar matrices; row i of each contributes |u_ii|^2
/// (moments) and |u_ii|^2 |u_i,i+1|^2 (cross moment).
MomentEstimates haar_moments(std::size_t n, std::size_t max_d, std::size_t rows,
                             std::uint64_t seed, std::size_t threads = 0);

}  // namespace phaselift

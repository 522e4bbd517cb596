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

#include "phaselift/ripstats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "phaselift/kernels.hpp"
#include "phaselift/parallel.hpp"

namespace phaselift {

Rational moment_exact(std::size_t n, std::size_t d) {
  if (n < 1 || d < 1) throw InvalidArgument("moment: need n >= 1 and d >= 1");
  constexpr auto kMax = std::numeric_limits<std::int64_t>::max();
  std::int64_t num = 1;
  std::int64_t den = 1;
  for (std::size_t k = 0; k < d; ++k) {
    const auto factor = static_cast<std::int64_t>(k + 1);
    const auto nk = static_cast<std::int64_t>(n + k);
    if (num > kMax / factor || den > kMax / nk) throw InvalidArgument("moment: overflow");
    num *= factor;
    den *= nk;
  }
  return Rational(num, den);
}

double moment(std::size_t n, std::size_t d) { return boost::rational_cast<double>(moment_exact(n, d)); }

Rational cross_moment_exact(std::size_t n) {
  if (n < 2) throw InvalidArgument("cross_moment: need n >= 2");
  const auto nn = static_cast<std::int64_t>(n);
  return Rational(1, nn * (nn + 1));
}

double cross_moment(std::size_t n) { return boost::rational_cast<double>(cross_moment_exact(n)); }

double rip_expectation(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw InvalidArgument("rip_expectation: lambda must lie in [0, 1]");
  }
  return (1.0 + lambda * lambda) / (1.0 + lambda);
}

double rip_expectation_argmin() { return std::sqrt(2.0) - 1.0; }

Rank2Spec Rank2Spec::standard(std::size_t n, double lambda) {
  if (n < 2) throw DimensionError("Rank2Spec: need n >= 2");
  Rank2Spec s;
  s.lambda = lambda;
  s.x1 = CVector::Unit(static_cast<Eigen::Index>(n), 0);
  s.x2 = CVector::Unit(static_cast<Eigen::Index>(n), 1);
  s.validate();
  return s;
}

Rank2Spec Rank2Spec::random(std::size_t n, double lambda, RandomStream& stream) {
  if (n < 2) throw DimensionError("Rank2Spec: need n >= 2");
  const CVector zeta = sample_gaussian_vector(stream, n, Field::Complex);
  const CVector z = sample_gaussian_vector(stream, n, Field::Complex);
  const OrthonormalPair p = gram_schmidt_pair(zeta, z);
  Rank2Spec s;
  s.lambda = lambda;
  s.x1 = p.u1;
  s.x2 = p.u2;
  s.validate();
  return s;
}

void Rank2Spec::validate() const {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw InvalidArgument("Rank2Spec: lambda must lie in [0, 1]");
  require_dimension(x1.size() == x2.size() && x1.size() >= 2, "Rank2Spec: x1, x2 must have equal length >= 2");
  if (std::abs(x1.norm() - 1.0) > 1e-12 || std::abs(x2.norm() - 1.0) > 1e-12) {
    throw InvalidArgument("Rank2Spec: x1, x2 must be unit vectors");
  }
  if (std::abs(x1.dot(x2)) > 1e-12) throw InvalidArgument("Rank2Spec: x1, x2 must be orthogonal");
}

RipSample rip_sample(std::size_t n, std::size_t r, const Rank2Spec& spec, RandomStream& stream,
                     Field field) {
  spec.validate();
  require_dimension(spec.n() == n, "rip_sample: spec dimension mismatch");
  if (r == 0) throw InvalidArgument("rip_sample: r must be at least 1");
  const auto& kern = kernels::active();
  std::vector<double> a(n), b(n);
  double total = 0.0;
  for (std::size_t k = 0; k < r; ++k) {
    const UnitarySample u = sample_haar(stream, n, field);
    // Row j of U: <u_j, x> = sum_a conj(U_ja) x_a. Column-major storage, so
    // gather the row first.
    for (std::size_t j = 0; j < n; ++j) {
      const CVector row = u.entries.row(static_cast<Eigen::Index>(j)).transpose();
      a[j] = std::norm(kern.cdotc(row.data(), spec.x1.data(), n));
      b[j] = std::norm(kern.cdotc(row.data(), spec.x2.data(), n));
    }
    total += kern.rank2_l1(a.data(), b.data(), spec.lambda, n);
  }
  RipSample out;
  out.value = total / static_cast<double>(r);
  out.n = n;
  out.r = r;
  out.lambda = spec.lambda;
  out.seed = stream.master_seed();
  out.stream_index = stream.stream_index();
  return out;
}

namespace {

std::vector<double> rip_values(std::size_t n, std::size_t r, double lambda, std::size_t trials,
                               std::uint64_t seed, std::uint64_t stream_base, std::size_t threads,
                               Field field) {
  if (trials == 0) throw InvalidArgument("rip Monte Carlo: trials must be positive");
  const Rank2Spec spec = Rank2Spec::standard(n, lambda);
  std::vector<double> values(trials);
  parallel_for(trials, threads, [&](std::size_t t) {
    RandomStream stream(seed, stream_base + t);
    values[t] = rip_sample(n, r, spec, stream, field).value;
  });
  return values;
}

}  // namespace

RunningStats rip_monte_carlo(std::size_t n, std::size_t r, double lambda, std::size_t trials,
                             std::uint64_t seed, std::uint64_t stream_base, std::size_t threads,
                             Field field) {
  RunningStats stats;
  for (double v : rip_values(n, r, lambda, trials, seed, stream_base, threads, field)) stats.add(v);
  return stats;
}

std::vector<RipCheckRow> rip_lower_bound_check(std::size_t n, std::size_t r,
                                               const std::vector<double>& lambda_grid,
                                               std::size_t trials, double delta,
                                               std::uint64_t seed, std::size_t threads,
                                               Field field) {
  if (!(delta > 0.0 && delta <= kDefaultRipDelta)) {
    throw InvalidArgument("rip lower bound: delta must lie in (0, 3/13]");
  }
  if (lambda_grid.empty()) throw InvalidArgument("rip lower bound: empty lambda grid");
  std::vector<RipCheckRow> rows;
  for (std::size_t l = 0; l < lambda_grid.size(); ++l) {
    RipCheckRow row;
    row.lambda = lambda_grid[l];
    // ||X|| = max(1, lambda) = 1 on [0, 1]
    row.threshold = 2.0 * rip_expectation_argmin() * (1.0 - delta) *
                    Rank2Spec::standard(n, row.lambda).operator_norm();
    row.trials = trials;
    for (double v : rip_values(n, r, row.lambda, trials, seed, static_cast<std::uint64_t>(l) << 32,
                               threads, field)) {
      row.statistic.add(v);
      row.holds += v >= row.threshold;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

double rank2_statistic(const CVector& u1, const CVector& u2, double lambda) {
  require_dimension(u1.size() == u2.size(), "rank2_statistic: length mismatch");
  const auto& kern = kernels::active();
  const auto n = static_cast<std::size_t>(u1.size());
  std::vector<double> a(n), b(n);
  kern.abs2(u1.data(), a.data(), n);
  kern.abs2(u2.data(), b.data(), n);
  return kern.rank2_l1(a.data(), b.data(), lambda, n);
}

SurrogatePair surrogate_statistic(const CVector& zeta, const CVector& z, double lambda,
                                  const SurrogateConfig& cfg) {
  cfg.validate();
  const auto n = static_cast<std::size_t>(z.size());
  const OrthonormalPair exact = gram_schmidt_pair(zeta, z);

  // Same arithmetic as gram_schmidt_pair, with floored normalizations.
  const CVector u1 = surrogate_v1(z, cfg, n);
  const CVector v_zeta = surrogate_v1(zeta, cfg, n);
  const CVector residual = v_zeta - u1 * u1.dot(v_zeta);
  const CVector u2 = surrogate_v2(residual, cfg);

  const double floor1 = std::sqrt(static_cast<double>(n) / cfg.c1);
  SurrogatePair out;
  out.exact = rank2_statistic(exact.u1, exact.u2, lambda);
  out.surrogate = rank2_statistic(u1, u2, lambda);
  out.floor_active = z.norm() < floor1 || zeta.norm() < floor1 || residual.norm() < std::sqrt(cfg.c2);
  return out;
}

SurrogateAgreement surrogate_agreement(std::size_t n, std::size_t samples, double lambda,
                                       const SurrogateConfig& cfg, std::uint64_t seed,
                                       std::size_t threads) {
  if (samples == 0) throw InvalidArgument("surrogate agreement: samples must be positive");
  std::vector<SurrogatePair> results(samples);
  parallel_for(samples, threads, [&](std::size_t t) {
    RandomStream stream(seed, t);
    const CVector zeta = sample_gaussian_vector(stream, n, Field::Complex);
    const CVector z = sample_gaussian_vector(stream, n, Field::Complex);
    results[t] = surrogate_statistic(zeta, z, lambda, cfg);
  });
  SurrogateAgreement out;
  out.samples = samples;
  for (const auto& p : results) {
    out.disagreements += p.exact != p.surrogate;
    out.floor_active += p.floor_active;
  }
  return out;
}

double intensity_difference_l1(const MeasurementEnsemble& ens, const CVector& x, const CVector& y) {
  const IntensityVector bx = measure(ens, x);
  const IntensityVector by = measure(ens, y);
  return (bx.values - by.values).lpNorm<1>() / (ens.scale() * static_cast<double>(ens.r()));
}

InjectivityResult injectivity_probe(std::size_t n, std::size_t r, std::size_t pairs,
                                    RandomStream& stream) {
  if (n < 2) throw InvalidArgument("injectivity probe: n must be at least 2");
  if (r == 0 || pairs == 0) throw InvalidArgument("injectivity probe: r and pairs must be positive");
  const MeasurementEnsemble ens = MeasurementEnsemble::sample(stream, n, r, Field::Complex, false);
  InjectivityResult out;
  out.n = n;
  out.r = r;
  out.pairs = pairs;
  out.min_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < pairs; ++p) {
    const CVector x = sample_gaussian_vector(stream, n, Field::Complex).normalized();
    const CVector y = sample_gaussian_vector(stream, n, Field::Complex).normalized();
    // For unit x, y the eigenvalues of xx* - yy* are +-sqrt(1 - |<x, y>|^2).
    const double op = std::sqrt(std::fmax(0.0, 1.0 - std::norm(x.dot(y))));
    if (!(op > 1e-12)) continue;
    const double ratio = intensity_difference_l1(ens, x, y) / op;
    out.ratio.add(ratio);
    out.min_ratio = std::fmin(out.min_ratio, ratio);
  }
  return out;
}

MomentEstimates haar_moments(std::size_t n, std::size_t max_d, std::size_t rows,
                             std::uint64_t seed, std::size_t threads) {
  if (n < 2 || max_d < 1 || rows == 0) {
    throw InvalidArgument("haar moments: need n >= 2, max_d >= 1, rows > 0");
  }
  constexpr std::size_t kBlock = kMomentBlockMatrices;
  const std::size_t matrices = (rows + n - 1) / n;
  const std::size_t blocks = (matrices + kBlock - 1) / kBlock;
  struct Partial {
    std::vector<RunningStats> moments;
    RunningStats cross;
  };
  std::vector<Partial> partials(blocks);
  const double nd = static_cast<double>(n);
  parallel_for(blocks, threads, [&](std::size_t blk) {
    RandomStream stream(seed, blk);
    Partial& part = partials[blk];
    part.moments.resize(max_d);
    const std::size_t count = std::min(kBlock, matrices - blk * kBlock);
    std::vector<double> acc(max_d);
    RMatrix p;
    for (std::size_t k = 0; k < count; ++k) {
      p = sample_haar(stream, n, Field::Complex).entries.cwiseAbs2();
      std::fill(acc.begin(), acc.end(), 0.0);
      double cross = 0.0;
      // Row i contributes the entry (i, i) and the pair (i, i), (i, i + 1).
      // Averaging all n^2 entries instead would make d = 1 degenerate, since
      // each row of a unitary sums to 1 exactly.
      for (Eigen::Index i = 0; i < p.rows(); ++i) {
        const double x = p(i, i);
        double pw = 1.0;
        for (std::size_t d = 0; d < max_d; ++d) {
          pw *= x;
          acc[d] += pw;
        }
        cross += x * p(i, (i + 1) % p.cols());
      }
      for (std::size_t d = 0; d < max_d; ++d) part.moments[d].add(acc[d] / nd);
      part.cross.add(cross / nd);
    }
  });
  MomentEstimates out;
  out.n = n;
  out.rows = matrices * n;
  std::vector<RunningStats> moments(max_d);
  RunningStats cross;
  for (const auto& part : partials) {
    for (std::size_t d = 0; d < max_d; ++d) moments[d].merge(part.moments[d]);
    cross.merge(part.cross);
  }
  for (const auto& m : moments) out.moments.push_back(m.estimate());
  out.cross = cross.estimate();
  return out;
}

}  // namespace phaselift

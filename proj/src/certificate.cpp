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

#include "phaselift/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "phaselift/ensembles.hpp"
#include "phaselift/kernels.hpp"
#include "phaselift/parallel.hpp"
#include "phaselift/random_stream.hpp"

namespace phaselift {

namespace {

constexpr double kQuadTolerance = 1e-12;
constexpr unsigned kQuadMaxDepth = 12;

template <class F>
double integrate(F f, double a, double b) {
  if (!(b > a)) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, kQuadMaxDepth,
                                                                       kQuadTolerance);
}

double cap_squared(std::size_t n) { return 9.0 / (static_cast<double>(n) + 1.0); }

/// Per-matrix average over rows i of g(|u_i1|^2, |u_i2|^2), then mean and
/// standard error across matrices.
template <class G>
Estimate haar_row_average(std::size_t n, const MethodSpec& method, G g) {
  if (method.samples == 0) throw InvalidArgument("Monte Carlo: samples must be positive");
  RandomStream stream(method.seed, method.stream_index);
  const std::size_t matrices = (method.samples + n - 1) / n;
  RunningStats stats;
  for (std::size_t k = 0; k < matrices; ++k) {
    const UnitarySample u = sample_haar(stream, n, Field::Complex);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < u.entries.rows(); ++i) {
      acc += g(std::norm(u.entries(i, 0)), std::norm(u.entries(i, 1)));
    }
    stats.add(acc / static_cast<double>(n));
  }
  return stats.estimate();
}

}  // namespace

double certificate_cap(std::size_t n) { return 3.0 / std::sqrt(static_cast<double>(n) + 1.0); }

Estimate psi_n(std::size_t n, const MethodSpec& method) {
  if (n < 2) throw InvalidArgument("psi_n: n must be at least 2");
  const double nd = static_cast<double>(n);
  const double c2 = cap_squared(n);
  const double scale = nd * (nd + 1.0);
  if (method.kind == ConstantMethod::MonteCarlo) {
    return haar_row_average(n, method, [&](double x, double) {
      const double t = std::fmin(x, c2);
      return scale * t * t;
    });
  }
  if (c2 >= 1.0) return {2.0, 0.0};
  // |u_11|^2 ~ Beta(1, n - 1): density (n - 1)(1 - x)^(n - 2) on [0, 1].
  auto density = [&](double x) { return (nd - 1.0) * std::pow(1.0 - x, nd - 2.0); };
  const double below = integrate([&](double x) { return x * x * density(x); }, 0.0, c2);
  const double above = integrate([&](double x) { return c2 * c2 * density(x); }, c2, 1.0);
  return {scale * (below + above), 0.0};
}

Estimate phi_n(std::size_t n, const MethodSpec& method) {
  if (n < 3) throw InvalidArgument("phi_n: n must be at least 3");
  const double nd = static_cast<double>(n);
  const double c2 = cap_squared(n);
  const double scale = 2.0 * nd * (nd + 1.0);
  if (method.kind == ConstantMethod::MonteCarlo) {
    return haar_row_average(n, method, [&](double x, double y) {
      return scale * std::fmin(x, c2) * y;
    });
  }
  if (c2 >= 1.0) return {2.0, 0.0};
  // (|u_11|^2, |u_12|^2) has density (n-1)(n-2)(1-x-y)^(n-3) on the simplex.
  // Substituting y = (1 - x) t factorizes the integral:
  //   int_0^1 min(x, c2) (1-x)^(n-1) dx  *  int_0^1 t (1-t)^(n-3) dt.
  const double norm = (nd - 1.0) * (nd - 2.0);
  const double inner = integrate([&](double t) { return t * std::pow(1.0 - t, nd - 3.0); }, 0.0, 1.0);
  auto outer = [&](double x) { return std::pow(1.0 - x, nd - 1.0); };
  const double below = integrate([&](double x) { return x * outer(x); }, 0.0, c2);
  const double above = integrate([&](double x) { return c2 * outer(x); }, c2, 1.0);
  return {scale * norm * inner * (below + above), 0.0};
}

CertificateConstants CertificateConstants::compute(std::size_t n) {
  return compute(n, MethodSpec::quadrature(), MethodSpec::quadrature());
}

CertificateConstants CertificateConstants::compute(std::size_t n, const MethodSpec& psi_method,
                                                   const MethodSpec& phi_method) {
  CertificateConstants c;
  c.n = n;
  c.cap = certificate_cap(n);
  c.psi = psi_n(n, psi_method);
  c.psi_method = psi_method.kind;
  // phi_n needs n >= 3; for n = 2 only psi enters the certificate.
  if (n >= 3) {
    c.phi = phi_n(n, phi_method);
    c.phi_method = phi_method.kind;
  }
  return c;
}

void CertificateConstants::validate() const {
  if (n < 2) throw InvalidArgument("certificate constants: n must be at least 2");
  if (!(psi.value > 0.0) || psi.value > 2.0 + 5.0 * psi.std_error) {
    throw InvalidArgument("certificate constants: psi_n out of range");
  }
  if (n >= 3 && (!(phi.value > 0.0) || phi.value > 2.0 + 5.0 * phi.std_error)) {
    throw InvalidArgument("certificate constants: phi_n out of range");
  }
}

namespace {

void require_complex(const MeasurementEnsemble& ens, const char* what) {
  if (ens.field() != Field::Complex) {
    throw InvalidArgument(std::string(what) + ": certificates are defined for the complex field only");
  }
}

void require_matching(const MeasurementEnsemble& ens, const CertificateConstants& consts) {
  require_complex(ens, "enhanced certificate");
  require_dimension(consts.n == ens.n(), "enhanced certificate: constants were computed for another n");
}

RVector first_column_abs2(const MeasurementEnsemble& ens) {
  RVector out(static_cast<Eigen::Index>(ens.m()));
  for (Eigen::Index i = 0; i < out.size(); ++i) out[i] = std::norm(ens.rows()(i, 0));
  return out;
}

}  // namespace

HermitianMatrix regular_certificate(const MeasurementEnsemble& ens) {
  require_complex(ens, "regular certificate");
  const double n = static_cast<double>(ens.n());
  const double m = static_cast<double>(ens.m());
  RVector w = first_column_abs2(ens);
  for (auto& wi : w) wi = (n / m) * ((n + 1.0) * wi - 1.0);
  return HermitianMatrix(weighted_outer_sum(ens.rows(), {w.data(), ens.m()}));
}

RVector enhanced_coefficients(const MeasurementEnsemble& ens, const CertificateConstants& consts) {
  require_matching(ens, consts);
  const double n = static_cast<double>(ens.n());
  const double c2 = consts.cap * consts.cap;
  const double centering = n * (2.0 * consts.psi.value - 1.0);
  RVector w = first_column_abs2(ens);
  for (auto& wi : w) wi = 2.0 * n * (n + 1.0) * std::fmin(wi, c2) - centering;
  return w;
}

HermitianMatrix enhanced_certificate(const MeasurementEnsemble& ens,
                                     const CertificateConstants& consts) {
  RVector w = enhanced_coefficients(ens, consts) / static_cast<double>(ens.m());
  return HermitianMatrix(weighted_outer_sum(ens.rows(), {w.data(), ens.m()}));
}

TangentReduction tangent_reduction(const MeasurementEnsemble& ens,
                                   const CertificateConstants& consts) {
  require_matching(ens, consts);
  const auto& kern = kernels::active();
  const std::size_t n = ens.n();
  const double nd = static_cast<double>(n);
  const double c2 = consts.cap * consts.cap;
  const double centering = 2.0 * consts.psi.value - 1.0;

  TangentReduction out;
  out.mean_vector = CVector::Zero(static_cast<Eigen::Index>(n));
  out.xk_norms.reserve(ens.r());
  CVector xk(static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < ens.r(); ++k) {
    xk.setZero();
    for (std::size_t j = 0; j < n; ++j) {
      const Complex* u = ens.rows().data() + (k * n + j) * n;
      const double coeff = 2.0 * (nd + 1.0) * std::fmin(std::norm(u[0]), c2) - centering;
      kern.caxpy(coeff * std::conj(u[0]), u, xk.data(), n);
    }
    out.xk_norms.push_back(xk.norm());
    out.mean_vector += xk;
  }
  out.mean_vector /= static_cast<double>(ens.r());
  const Complex diag_err = out.mean_vector[0] - 1.0;
  const double tail = out.mean_vector.tail(static_cast<Eigen::Index>(n) - 1).squaredNorm();
  out.yt_error = std::sqrt(std::norm(diag_err) + 2.0 * tail);
  return out;
}

double xk_norm_bound() { return std::sqrt(21.0); }

CertificateReport check_conditions(const HermitianMatrix& y) {
  const std::size_t n = y.dim();
  require_dimension(n >= 1, "check_conditions: empty matrix");
  CertificateReport rep;
  rep.n = n;
  const HermitianMatrix diff = project_T(y) - HermitianMatrix::basis_projector(n, 0);
  rep.yt_error = diff.frobenius_norm();
  rep.yt_error_spectral = diff.eigenvalues().cwiseAbs().maxCoeff();
  if (n >= 2) {
    const auto tail = static_cast<Eigen::Index>(n - 1);
    const CMatrix block = y.matrix().bottomRightCorner(tail, tail);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(block, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("check_conditions: eigensolver failed");
    rep.ytperp_lambda_max = es.eigenvalues()[tail - 1];
  } else {
    rep.ytperp_lambda_max = -std::numeric_limits<double>::infinity();
  }
  rep.pass_yt = rep.yt_error <= 0.2;
  rep.pass_ytperp = rep.ytperp_lambda_max < 0.0;
  return rep;
}

std::uint64_t certificate_stream_index(std::size_t r, std::size_t trial) {
  return (static_cast<std::uint64_t>(r) << 32) | static_cast<std::uint64_t>(trial);
}

namespace {

/// One sweep trial, accumulated unitary by unitary so that memory stays
/// O(n^2) for large r. The matrix route (full Y) and the vector route (x_k)
/// are both evaluated.
CertificateReport certificate_trial(std::size_t n, std::size_t r, std::uint64_t seed,
                                    std::uint64_t stream_index,
                                    const CertificateConstants& consts) {
  RandomStream stream(seed, stream_index);
  const auto dim = static_cast<Eigen::Index>(n);
  CMatrix y = CMatrix::Zero(dim, dim);
  const double bound = xk_norm_bound() * (1.0 + 1e-9);
  std::size_t violations = 0;
  double max_norm = 0.0;
  double norm_sq = 0.0;
  for (std::size_t k = 0; k < r; ++k) {
    std::vector<UnitarySample> one{sample_haar(stream, n, Field::Complex)};
    const MeasurementEnsemble ens(std::move(one), false);
    y += enhanced_certificate(ens, consts).matrix();
    const TangentReduction red = tangent_reduction(ens, consts);
    const double xk = red.xk_norms.front();
    max_norm = std::fmax(max_norm, xk);
    norm_sq += xk * xk;
    if (xk > bound) ++violations;
  }
  y /= static_cast<double>(r);
  CertificateReport rep = check_conditions(HermitianMatrix(y));
  rep.r = r;
  rep.seed = seed;
  rep.stream_index = stream_index;
  rep.max_xk_norm = max_norm;
  rep.xk_bound_violations = violations;
  rep.mean_xk_norm_sq = norm_sq / static_cast<double>(r);
  return rep;
}

SweepSummary summarize(std::size_t n, std::size_t r, const CertificateReport* reports,
                       std::size_t trials) {
  SweepSummary s;
  s.n = n;
  s.r = r;
  s.trials = trials;
  std::size_t yt = 0, perp = 0, joint = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto& rep = reports[t];
    yt += rep.pass_yt;
    perp += rep.pass_ytperp;
    joint += rep.pass_joint();
    s.yt_error.add(rep.yt_error);
    s.lambda_max.add(rep.ytperp_lambda_max);
    s.xk_norm_sq.add(rep.mean_xk_norm_sq);
    s.max_xk_norm = std::fmax(s.max_xk_norm, rep.max_xk_norm);
    s.xk_bound_violations += rep.xk_bound_violations;
    s.trials_with_xk_violation += rep.xk_bound_violations > 0;
  }
  const double denom = static_cast<double>(trials);
  s.pass_yt_fraction = static_cast<double>(yt) / denom;
  s.pass_ytperp_fraction = static_cast<double>(perp) / denom;
  s.pass_joint_fraction = static_cast<double>(joint) / denom;
  return s;
}

}  // namespace

SweepResult certificate_sweep(std::size_t n, const std::vector<std::size_t>& r_list,
                              std::size_t trials, std::uint64_t seed, std::size_t threads) {
  if (n < 2) throw InvalidArgument("certificate sweep: n must be at least 2");
  if (r_list.empty()) throw InvalidArgument("certificate sweep: r list is empty");
  if (trials == 0) throw InvalidArgument("certificate sweep: trials must be positive");
  for (std::size_t r : r_list) {
    if (r == 0) throw InvalidArgument("certificate sweep: r must be at least 1");
  }
  SweepResult out;
  out.constants = CertificateConstants::compute(n);
  out.reports.resize(r_list.size() * trials);
  parallel_for(out.reports.size(), threads, [&](std::size_t idx) {
    const std::size_t r = r_list[idx / trials];
    const std::size_t t = idx % trials;
    out.reports[idx] = certificate_trial(n, r, seed, certificate_stream_index(r, t), out.constants);
  });
  for (std::size_t i = 0; i < r_list.size(); ++i) {
    out.summaries.push_back(summarize(n, r_list[i], out.reports.data() + i * trials, trials));
  }
  return out;
}

Calibration calibrate_r(std::size_t n, std::size_t start_r, std::size_t max_r,
                        std::size_t pilot_trials, double target, std::uint64_t seed,
                        std::size_t threads) {
  if (start_r == 0 || max_r < start_r) throw InvalidArgument("calibrate: need 1 <= start_r <= max_r");
  if (!(target > 0.0 && target <= 1.0)) throw InvalidArgument("calibrate: target must lie in (0, 1]");
  // Pilot streams are keyed off a derived seed so they never coincide with a
  // main sweep run under `seed`.
  const std::uint64_t pilot_seed = mix64(seed ^ 0x70696c6f74ULL);
  Calibration cal;
  for (std::size_t r = start_r; r <= max_r; r *= 2) {
    const SweepResult res = certificate_sweep(n, {r}, pilot_trials, pilot_seed, threads);
    cal.steps.push_back({r, pilot_trials, res.summaries.front().pass_joint_fraction});
    if (res.summaries.front().pass_joint_fraction >= target) {
      cal.chosen_r = r;
      break;
    }
  }
  return cal;
}

}  // namespace phaselift

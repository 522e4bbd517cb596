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

// Compiled with -mavx2 -mfma. Only reached through avx2_table() after a
// runtime CPU check.

#include <immintrin.h>

#include <cmath>

#include "phaselift/kernels.hpp"

namespace phaselift::kernels::avx2 {

namespace {

inline const double* as_doubles(const Complex* p) { return reinterpret_cast<const double*>(p); }
inline double* as_doubles(Complex* p) { return reinterpret_cast<double*>(p); }

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

Complex cdotc(const Complex* x, const Complex* y, std::size_t n) {
  const double* xd = as_doubles(x);
  const double* yd = as_doubles(y);
  // acc_re lanes: [xr*yr, xi*yi, ...]; acc_im lanes: [xr*yi, xi*yr, ...]
  __m256d acc_re0 = _mm256_setzero_pd(), acc_re1 = _mm256_setzero_pd();
  __m256d acc_im0 = _mm256_setzero_pd(), acc_im1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xa = _mm256_loadu_pd(xd + 2 * i);
    const __m256d ya = _mm256_loadu_pd(yd + 2 * i);
    const __m256d xb = _mm256_loadu_pd(xd + 2 * i + 4);
    const __m256d yb = _mm256_loadu_pd(yd + 2 * i + 4);
    acc_re0 = _mm256_fmadd_pd(xa, ya, acc_re0);
    acc_re1 = _mm256_fmadd_pd(xb, yb, acc_re1);
    acc_im0 = _mm256_fmadd_pd(xa, _mm256_permute_pd(ya, 0b0101), acc_im0);
    acc_im1 = _mm256_fmadd_pd(xb, _mm256_permute_pd(yb, 0b0101), acc_im1);
  }
  for (; i + 2 <= n; i += 2) {
    const __m256d xa = _mm256_loadu_pd(xd + 2 * i);
    const __m256d ya = _mm256_loadu_pd(yd + 2 * i);
    acc_re0 = _mm256_fmadd_pd(xa, ya, acc_re0);
    acc_im0 = _mm256_fmadd_pd(xa, _mm256_permute_pd(ya, 0b0101), acc_im0);
  }
  const __m256d acc_re = _mm256_add_pd(acc_re0, acc_re1);
  const __m256d acc_im = _mm256_add_pd(acc_im0, acc_im1);
  double re = hsum(acc_re);
  // Flip the sign of the odd lanes: im = sum(xr*yi) - sum(xi*yr).
  const __m256d signs = _mm256_set_pd(-1.0, 1.0, -1.0, 1.0);
  double im = hsum(_mm256_mul_pd(acc_im, signs));
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return {re, im};
}

void caxpy(Complex alpha, const Complex* x, Complex* y, std::size_t n) {
  const double* xd = as_doubles(x);
  double* yd = as_doubles(y);
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    const __m256d t = _mm256_mul_pd(ai, _mm256_permute_pd(xv, 0b0101));
    // even lanes: ar*xr - ai*xi, odd lanes: ar*xi + ai*xr
    const __m256d prod = _mm256_fmaddsub_pd(ar, xv, t);
    _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(_mm256_loadu_pd(yd + 2 * i), prod));
  }
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] = Complex(y[i].real() + (alpha.real() * xr - alpha.imag() * xi),
                   y[i].imag() + (alpha.real() * xi + alpha.imag() * xr));
  }
}

void abs2(const Complex* x, double* out, std::size_t n) {
  const double* xd = as_doubles(x);
  std::size_t i = 0;
  // No FMA here: re*re + im*im must round exactly like the scalar kernel.
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_loadu_pd(xd + 2 * i);
    const __m256d b = _mm256_loadu_pd(xd + 2 * i + 4);
    const __m256d h = _mm256_hadd_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b));
    _mm256_storeu_pd(out + i, _mm256_permute4x64_pd(h, _MM_SHUFFLE(3, 1, 2, 0)));
  }
  for (; i < n; ++i) {
    const double re = x[i].real(), im = x[i].imag();
    out[i] = re * re + im * im;
  }
}

double rank2_l1(const double* a, const double* b, double lambda, std::size_t n) {
  const __m256d lam = _mm256_set1_pd(lambda);
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d d0 = _mm256_fnmadd_pd(lam, _mm256_loadu_pd(b + i), _mm256_loadu_pd(a + i));
    const __m256d d1 =
        _mm256_fnmadd_pd(lam, _mm256_loadu_pd(b + i + 4), _mm256_loadu_pd(a + i + 4));
    acc0 = _mm256_add_pd(acc0, _mm256_andnot_pd(sign, d0));
    acc1 = _mm256_add_pd(acc1, _mm256_andnot_pd(sign, d1));
  }
  for (; i + 4 <= n; i += 4) {
    const __m256d d0 = _mm256_fnmadd_pd(lam, _mm256_loadu_pd(b + i), _mm256_loadu_pd(a + i));
    acc0 = _mm256_add_pd(acc0, _mm256_andnot_pd(sign, d0));
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += std::abs(a[i] - lambda * b[i]);
  return acc;
}

}  // namespace phaselift::kernels::avx2

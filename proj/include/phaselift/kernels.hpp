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

/// Data-parallel inner loops shared by the lifted operator, the certificate
/// builders and the RIP statistics.
///
/// Every kernel has a scalar reference implementation; on x86-64 an AVX2+FMA
/// variant is compiled in a separate translation unit and selected at runtime
/// when the CPU supports it. Setting PHASELIFT_KERNELS=scalar (or =avx2) in
/// the environment overrides the automatic choice. Variants agree to rounding
/// (summation order differs), not bit-for-bit; a given binary on a given
/// machine is deterministic.

#include <cstddef>
#include <span>

#include "phaselift/common.hpp"

namespace phaselift::kernels {

struct KernelTable {
  const char* name;
  /// sum_i conj(x_i) * y_i
  Complex (*cdotc)(const Complex* x, const Complex* y, std::size_t n);
  /// y_i += alpha * x_i
  void (*caxpy)(Complex alpha, const Complex* x, Complex* y, std::size_t n);
  /// out_i = |x_i|^2
  void (*abs2)(const Complex* x, double* out, std::size_t n);
  /// sum_i |a_i - lambda * b_i|
  double (*rank2_l1)(const double* a, const double* b, double lambda, std::size_t n);
};

const KernelTable& scalar_table();

/// AVX2 table, or nullptr when not compiled in or not supported by this CPU.
const KernelTable* avx2_table();

/// The table selected for this process (resolved once, on first use).
const KernelTable& active();

inline Complex cdotc(std::span<const Complex> x, std::span<const Complex> y) {
  require_dimension(x.size() == y.size(), "cdotc: length mismatch");
  return active().cdotc(x.data(), y.data(), x.size());
}

inline void caxpy(Complex alpha, std::span<const Complex> x, std::span<Complex> y) {
  require_dimension(x.size() == y.size(), "caxpy: length mismatch");
  active().caxpy(alpha, x.data(), y.data(), x.size());
}

inline void abs2(std::span<const Complex> x, std::span<double> out) {
  require_dimension(x.size() == out.size(), "abs2: length mismatch");
  active().abs2(x.data(), out.data(), x.size());
}

inline double rank2_l1(std::span<const double> a, std::span<const double> b, double lambda) {
  require_dimension(a.size() == b.size(), "rank2_l1: length mismatch");
  return active().rank2_l1(a.data(), b.data(), lambda, a.size());
}

}  // namespace phaselift::kernels

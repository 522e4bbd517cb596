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

#include <cstdlib>
#include <string_view>

#include "phaselift/kernels.hpp"

namespace phaselift::kernels {

#if defined(PHASELIFT_HAVE_AVX2)
namespace avx2 {
Complex cdotc(const Complex* x, const Complex* y, std::size_t n);
void caxpy(Complex alpha, const Complex* x, Complex* y, std::size_t n);
void abs2(const Complex* x, double* out, std::size_t n);
double rank2_l1(const double* a, const double* b, double lambda, std::size_t n);
}  // namespace avx2
#endif

const KernelTable* avx2_table() {
#if defined(PHASELIFT_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  static const KernelTable table{"avx2", avx2::cdotc, avx2::caxpy, avx2::abs2, avx2::rank2_l1};
  return supported ? &table : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable& selected = [] () -> const KernelTable& {
    const char* env = std::getenv("PHASELIFT_KERNELS");
    if (env != nullptr && std::string_view(env) == "scalar") return scalar_table();
    if (const KernelTable* simd = avx2_table()) return *simd;
    return scalar_table();
  }();
  return selected;
}

}  // namespace phaselift::kernels

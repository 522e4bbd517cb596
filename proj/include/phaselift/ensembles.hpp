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

#include <cstddef>

#include "phaselift/common.hpp"
#include "phaselift/random_stream.hpp"

namespace phaselift {

/// An n x n unitary (complex field) or orthogonal (real field) matrix. Real
/// samples are stored with zero imaginary parts.
struct UnitarySample {
  CMatrix entries;
  Field field = Field::Complex;

  std::size_t n() const { return static_cast<std::size_t>(entries.rows()); }
};

/// Thresholds of the Lipschitz normalization surrogates. c1 > 1 floors the
/// norm of Gaussian inputs at sqrt(n / c1); 0 < c2 < 1 floors the norm of the
/// Gram-Schmidt residual at sqrt(c2).
struct SurrogateConfig {
  double c1 = 100.0;
  double c2 = 0.25;

  void validate() const;
};

/// iid N(0,1) entries (real) or CN(0,1) entries with variance 1/2 per real
/// component (complex), so that E|z|^2 = n in both cases.
CVector sample_gaussian_vector(RandomStream& stream, std::size_t n, Field field);

CMatrix sample_gaussian_matrix(RandomStream& stream, std::size_t n, Field field);

/// Haar-distributed sample from U(n) or O(n): QR of a Gaussian matrix with
/// the columns of Q rotated so that R has a positive real diagonal.
UnitarySample sample_haar(RandomStream& stream, std::size_t n, Field field);

/// ||U* U - I||_F
double unitarity_defect(const CMatrix& u);

struct OrthonormalPair {
  CVector u1;
  CVector u2;
};

/// (v(z), v(t(v(zeta), v(z)))) with v(x) = x / |x| and t(x, y) = x - y <y, x>.
/// Distributed as the first two columns of a Haar matrix when zeta and z are
/// iid Gaussian.
OrthonormalPair gram_schmidt_pair(const CVector& zeta, const CVector& z);

/// x / max(|x|, floor). With floor = 0 this is plain normalization (and maps
/// 0 to 0).
CVector normalize_with_floor(const CVector& x, double floor);

/// x / max(|x|, sqrt(n / c1)); Lipschitz with constant 2 sqrt(c1 / n).
CVector surrogate_v1(const CVector& x, const SurrogateConfig& cfg, std::size_t n);

/// x / max(|x|, sqrt(c2)); Lipschitz with constant 2 / sqrt(c2).
CVector surrogate_v2(const CVector& x, const SurrogateConfig& cfg);

}  // namespace phaselift

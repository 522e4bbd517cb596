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

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace phaselift {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

/// Selects O(n) vs U(n) sampling and real vs complex Gaussians.
enum class Field { Real, Complex };

inline const char* to_string(Field f) { return f == Field::Real ? "real" : "complex"; }

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A dimension was zero or did not match between two operands.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An input vector or matrix was degenerate (zero, parallel, ...).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// A parameter was outside its documented range.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The measurement data are not consistent with any Hermitian matrix.
class InfeasibleSystemError : public Error {
 public:
  using Error::Error;
};

/// An eigensolver or factorization did not succeed.
class NumericalError : public Error {
 public:
  using Error::Error;
};

inline void require_dimension(bool ok, const std::string& what) {
  if (!ok) throw DimensionError(what);
}

}  // namespace phaselift

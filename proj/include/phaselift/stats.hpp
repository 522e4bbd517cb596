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

#include <cmath>
#include <cstddef>
#include <limits>

namespace phaselift {

/// A point estimate with its Monte Carlo standard error (0 for exact values).
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// Streaming mean/variance (Welford). `merge` is associative, so per-trial
/// accumulators can be reduced in trial order for reproducible results.
class RunningStats {
 public:
  void add(double x) {
    ++count_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
    min_ = std::fmin(min_, x);
    max_ = std::fmax(max_, x);
  }

  void merge(const RunningStats& other) {
    if (other.count_ == 0) return;
    if (count_ == 0) {
      *this = other;
      return;
    }
    const double n_a = static_cast<double>(count_);
    const double n_b = static_cast<double>(other.count_);
    const double delta = other.mean_ - mean_;
    const double total = n_a + n_b;
    mean_ += delta * n_b / total;
    m2_ += other.m2_ + delta * delta * n_a * n_b / total;
    count_ += other.count_;
    min_ = std::fmin(min_, other.min_);
    max_ = std::fmax(max_, other.max_);
  }

  std::size_t count() const { return count_; }
  double mean() const { return mean_; }
  double variance() const {
    return count_ > 1 ? m2_ / static_cast<double>(count_ - 1) : 0.0;
  }
  double stddev() const { return std::sqrt(variance()); }
  double std_error() const {
    return count_ > 0 ? std::sqrt(variance() / static_cast<double>(count_)) : 0.0;
  }
  double min() const { return min_; }
  double max() const { return max_; }
  Estimate estimate() const { return {mean_, std_error()}; }

 private:
  std::size_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
  double min_ = std::numeric_limits<double>::infinity();
  double max_ = -std::numeric_limits<double>::infinity();
};

/// |observed - expected| measured in units of the standard error.
inline double z_score(double observed, double expected, double std_error) {
  if (std_error <= 0.0) return observed == expected ? 0.0 : std::numeric_limits<double>::infinity();
  return std::abs(observed - expected) / std_error;
}

}  // namespace phaselift

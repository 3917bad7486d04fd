// Copyright 2026 The disavg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "disavg/operator_algebra.hpp"

#include <cstdint>
#include <span>

namespace disavg {

/// Monte Carlo mean with entrywise standard errors of the real and imaginary
/// parts.
template <typename Mean, typename Error>
struct EstimatorResult {
  Mean mean;
  Error stderr_re;
  Error stderr_im;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
};

using MatrixEstimate = EstimatorResult<OperatorMatrix, Eigen::MatrixXd>;
using ScalarEstimate = EstimatorResult<Complex, double>;

/// Complex values on a uniform time grid, optionally with standard errors.
struct TimeSeries {
  Eigen::ArrayXd t_grid;
  Eigen::ArrayXcd values;
  Eigen::ArrayXd stderr_re;  // empty when the series is deterministic
  Eigen::ArrayXd stderr_im;

  bool has_stderr() const noexcept { return stderr_re.size() == values.size() && values.size() > 0; }
};

/// points values t_max * k / (points - 1), k = 0 .. points - 1.
Eigen::ArrayXd uniform_grid(double t_max, int points);

/// Throws InvalidInput unless the grid is strictly increasing with uniform
/// spacing (relative tolerance 1e-12).
void check_uniform_grid(const Eigen::ArrayXd& grid);

}  // namespace disavg

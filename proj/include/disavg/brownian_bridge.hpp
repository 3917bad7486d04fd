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

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <vector>

namespace disavg {

/// One discretised Brownian bridge per disorder term, stored as increments
/// Delta l_j = l_j - l_{j-1}, j = 1..steps, in the scaled variables l = gamma k.
struct BridgePath {
  int steps = 0;
  Eigen::MatrixXd increments;  // terms x steps

  int terms() const noexcept { return static_cast<int>(increments.rows()); }

  /// Partial sums l_0 = 0, l_1, ..., l_steps; shape terms x (steps + 1).
  Eigen::MatrixXd values() const;
};

/// Exact bridge sample b_j = w_j - (j/n) w_n from i.i.d. N(0, 1/n) steps.
/// The last increment is set to minus the running sum of the others, so the
/// left-to-right floating-point sum of every row is exactly zero.
BridgePath sample_bridge(int steps, int terms, std::uint64_t seed, std::uint64_t path_index = 0);

/// Cov(l_j, l_jp) = min{(j/n)(1 - jp/n), (jp/n)(1 - j/n)}.
double bridge_covariance(int steps, int j, int jp);

struct PathMatrixReport {
  int steps = 0;
  double eigenvalue_deviation = 0.0;    // max |lambda_j - (2 - 2 cos(pi j / n))|
  double determinant_deviation = 0.0;   // |det M - n| / n
  double inverse_deviation = 0.0;       // max |M Cov - I/n|
  double eigenvector_deviation = 0.0;   // max |M v_j - lambda_j v_j| for sine modes

  double max_deviation() const noexcept;
};

/// Checks the (n-1)x(n-1) precision matrix M = 2I - P_{n-1} of the discrete
/// bridge measure against its closed-form spectrum, determinant and inverse.
PathMatrixReport path_matrix_checks(int steps);

struct CovarianceCheck {
  int j = 0;
  int jp = 0;
  double empirical = 0.0;
  double exact = 0.0;
  double stderr = 0.0;

  double z_score() const noexcept;
};

/// Empirical Cov(l_j, l_jp) over `paths` single-term bridges for every pair of
/// the given indices.
std::vector<CovarianceCheck> empirical_bridge_covariance(int steps, std::int64_t paths, std::uint64_t seed,
                                                         std::span<const int> indices);

}  // namespace disavg

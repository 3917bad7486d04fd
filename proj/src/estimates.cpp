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

#include "disavg/estimates.hpp"

#include "disavg/errors.hpp"

#include <cmath>

namespace disavg {

Eigen::ArrayXd uniform_grid(double t_max, int points) {
  if (points < 2) throw InvalidInput("uniform_grid: need at least 2 points");
  if (!(t_max > 0.0)) throw InvalidInput("uniform_grid: t_max must be positive");
  Eigen::ArrayXd grid(points);
  for (int k = 0; k < points; ++k) grid(k) = t_max * static_cast<double>(k) / static_cast<double>(points - 1);
  return grid;
}

void check_uniform_grid(const Eigen::ArrayXd& grid) {
  if (grid.size() < 2) throw InvalidInput("time grid needs at least 2 points");
  const double step = (grid(grid.size() - 1) - grid(0)) / static_cast<double>(grid.size() - 1);
  if (!(step > 0.0)) throw InvalidInput("time grid must be strictly increasing");
  for (Eigen::Index k = 1; k < grid.size(); ++k) {
    if (std::abs(grid(k) - grid(k - 1) - step) > 1e-12 * std::max(1.0, std::abs(grid(k)))) {
      throw InvalidInput("time grid is not uniform");
    }
  }
}

}  // namespace disavg

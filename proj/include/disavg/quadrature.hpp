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

namespace disavg {

struct QuadratureRule {
  Eigen::ArrayXd nodes;
  Eigen::ArrayXd weights;
};

/// Gauss-Legendre rule on [-1, 1] by Newton iteration on P_n.
QuadratureRule gauss_legendre(int nodes);

/// Gauss-Legendre rule mapped to [a, b].
QuadratureRule gauss_legendre(int nodes, double a, double b);

/// Gauss-Hermite rule for the weight e^{-y^2} (Golub-Welsch).
QuadratureRule gauss_hermite(int nodes);

}  // namespace disavg

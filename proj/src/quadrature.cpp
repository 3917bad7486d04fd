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

#include "disavg/quadrature.hpp"

#include "disavg/errors.hpp"

#include <cmath>
#include <numbers>

namespace disavg {

QuadratureRule gauss_legendre(int nodes) {
  if (nodes < 1) throw InvalidInput("gauss_legendre: need at least one node");
  QuadratureRule rule{Eigen::ArrayXd(nodes), Eigen::ArrayXd(nodes)};
  const int half = (nodes + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (nodes + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= nodes; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double p = nodes == 1 ? x : p1;
      const double pm1 = nodes == 1 ? 1.0 : p0;
      dp = nodes * (x * p - pm1) / (x * x - 1.0);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes(i) = -x;
    rule.nodes(nodes - 1 - i) = x;
    rule.weights(i) = w;
    rule.weights(nodes - 1 - i) = w;
  }
  if (nodes % 2 == 1) rule.nodes(nodes / 2) = 0.0;
  return rule;
}

QuadratureRule gauss_legendre(int nodes, double a, double b) {
  QuadratureRule rule = gauss_legendre(nodes);
  const double half = 0.5 * (b - a);
  rule.nodes = a + half * (rule.nodes + 1.0);
  rule.weights *= half;
  return rule;
}

QuadratureRule gauss_hermite(int nodes) {
  if (nodes < 1) throw InvalidInput("gauss_hermite: need at least one node");
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(nodes, nodes);
  for (int k = 1; k < nodes; ++k) {
    jacobi(k, k - 1) = std::sqrt(k / 2.0);
    jacobi(k - 1, k) = jacobi(k, k - 1);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  QuadratureRule rule{solver.eigenvalues().array(), Eigen::ArrayXd(nodes)};
  const double mu0 = std::sqrt(std::numbers::pi);
  for (int k = 0; k < nodes; ++k) rule.weights(k) = mu0 * solver.eigenvectors()(0, k) * solver.eigenvectors()(0, k);
  return rule;
}

}  // namespace disavg

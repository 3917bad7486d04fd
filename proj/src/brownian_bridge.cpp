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

#include "disavg/brownian_bridge.hpp"

#include "disavg/errors.hpp"
#include "disavg/parallel.hpp"
#include "disavg/random.hpp"
#include "disavg/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace disavg {

Eigen::MatrixXd BridgePath::values() const {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(increments.rows(), steps + 1);
  for (Eigen::Index i = 0; i < increments.rows(); ++i) {
    for (int j = 1; j <= steps; ++j) out(i, j) = out(i, j - 1) + increments(i, j - 1);
  }
  return out;
}

BridgePath sample_bridge(int steps, int terms, std::uint64_t seed, std::uint64_t path_index) {
  if (steps < 1) throw InvalidInput("sample_bridge: steps must be positive");
  if (terms < 1) throw InvalidInput("sample_bridge: terms must be positive");
  auto engine = stream_engine(seed, path_index);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double step_sd = 1.0 / std::sqrt(static_cast<double>(steps));

  BridgePath path{steps, Eigen::MatrixXd(terms, steps)};
  Eigen::VectorXd w(steps + 1);
  for (int i = 0; i < terms; ++i) {
    w(0) = 0.0;
    for (int j = 1; j <= steps; ++j) w(j) = w(j - 1) + step_sd * normal(engine);
    const double end = w(steps);
    double previous = 0.0;
    double running = 0.0;
    for (int j = 1; j < steps; ++j) {
      const double b = w(j) - (static_cast<double>(j) / steps) * end;
      path.increments(i, j - 1) = b - previous;
      running += path.increments(i, j - 1);
      previous = b;
    }
    path.increments(i, steps - 1) = -running;
  }
  return path;
}

double bridge_covariance(int steps, int j, int jp) {
  if (steps < 1) throw InvalidInput("bridge_covariance: steps must be positive");
  if (j < 0 || jp < 0 || j > steps || jp > steps) throw InvalidInput("bridge_covariance: index out of range");
  const double s = static_cast<double>(j) / steps;
  const double sp = static_cast<double>(jp) / steps;
  return std::min(s * (1.0 - sp), sp * (1.0 - s));
}

double PathMatrixReport::max_deviation() const noexcept {
  return std::max({eigenvalue_deviation, determinant_deviation, inverse_deviation, eigenvector_deviation});
}

PathMatrixReport path_matrix_checks(int steps) {
  if (steps < 2 || steps > 512) throw InvalidInput("path_matrix_checks: steps must lie in [2, 512]");
  const int dim = steps - 1;
  Eigen::MatrixXd m = 2.0 * Eigen::MatrixXd::Identity(dim, dim);
  for (int k = 0; k + 1 < dim; ++k) {
    m(k, k + 1) = -1.0;
    m(k + 1, k) = -1.0;
  }

  PathMatrixReport report;
  report.steps = steps;

  const Eigen::VectorXd computed = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m, Eigen::EigenvaluesOnly).eigenvalues();
  Eigen::VectorXd expected(dim);
  for (int j = 1; j <= dim; ++j) expected(j - 1) = 2.0 - 2.0 * std::cos(std::numbers::pi * j / steps);
  std::sort(expected.data(), expected.data() + dim);
  report.eigenvalue_deviation = (computed - expected).cwiseAbs().maxCoeff();

  for (int j = 1; j <= dim; ++j) {
    Eigen::VectorXd v(dim);
    for (int k = 1; k <= dim; ++k) v(k - 1) = std::sin(std::numbers::pi * j * k / steps);
    v.normalize();
    const double lambda = 2.0 - 2.0 * std::cos(std::numbers::pi * j / steps);
    report.eigenvector_deviation = std::max(report.eigenvector_deviation, (m * v - lambda * v).cwiseAbs().maxCoeff());
  }

  // M is tridiagonal and positive definite; the LDL^T pivots give det M.
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(m);
  double det = 1.0;
  for (int k = 0; k < dim; ++k) det *= ldlt.vectorD()(k);
  report.determinant_deviation = std::abs(det - steps) / steps;

  Eigen::MatrixXd cov(dim, dim);
  for (int j = 1; j <= dim; ++j) {
    for (int k = 1; k <= dim; ++k) cov(j - 1, k - 1) = bridge_covariance(steps, j, k);
  }
  const Eigen::MatrixXd target = Eigen::MatrixXd::Identity(dim, dim) / static_cast<double>(steps);
  report.inverse_deviation = (m * cov - target).cwiseAbs().maxCoeff();
  return report;
}

double CovarianceCheck::z_score() const noexcept {
  if (stderr == 0.0) return empirical == exact ? 0.0 : INFINITY;
  return (empirical - exact) / stderr;
}

std::vector<CovarianceCheck> empirical_bridge_covariance(int steps, std::int64_t paths, std::uint64_t seed,
                                                         std::span<const int> indices) {
  if (paths < 2) throw InvalidInput("empirical_bridge_covariance: need at least 2 paths");
  const auto k = static_cast<Eigen::Index>(indices.size());
  for (int j : indices) {
    if (j < 0 || j > steps) throw InvalidInput("empirical_bridge_covariance: index out of range");
  }
  // Bridge values have mean zero, so E[l_j l_jp] is the covariance.
  const auto stats = deterministic_reduce<RunningStats<>>(
      static_cast<std::size_t>(paths), 256,
      [&](std::size_t begin, std::size_t end) {
        RunningStats<> acc(k, k);
        Eigen::ArrayXXd products(k, k);
        for (std::size_t p = begin; p < end; ++p) {
          const Eigen::MatrixXd l = sample_bridge(steps, 1, seed, p).values();
          for (Eigen::Index a = 0; a < k; ++a) {
            for (Eigen::Index b = 0; b < k; ++b) products(a, b) = l(0, indices[a]) * l(0, indices[b]);
          }
          acc.push(products);
        }
        return acc;
      },
      [](RunningStats<>& acc, const RunningStats<>& part) { acc.merge(part); });

  std::vector<CovarianceCheck> out;
  out.reserve(static_cast<std::size_t>(k * k));
  const Eigen::ArrayXXd se = stats.standard_error();
  for (Eigen::Index a = 0; a < k; ++a) {
    for (Eigen::Index b = 0; b < k; ++b) {
      out.push_back({indices[a], indices[b], stats.mean()(a, b), bridge_covariance(steps, indices[a], indices[b]),
                     se(a, b)});
    }
  }
  return out;
}

}  // namespace disavg

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

#include "disavg/stochastic_propagator.hpp"

#include "disavg/errors.hpp"
#include "disavg/parallel.hpp"
#include "disavg/random.hpp"
#include "disavg/statistics.hpp"

#include <cmath>
#include <random>

namespace disavg {
namespace {

constexpr std::size_t kChunk = 32;

// Pieces of a slice exponent that do not depend on the path.
struct SliceTerms {
  OperatorMatrix drift;  // (it/n) H0 - (t^2 gamma^2 / 2n) sum D^2
  double coupling;       // t gamma
};

SliceTerms slice_terms(const DisorderedHamiltonian& model, double t, int steps) {
  const double g = model.gamma();
  const double n = steps;
  OperatorMatrix drift = Complex(0.0, t / n) * model.h0() - (t * t * g * g / (2.0 * n)) * model.disorder_square_sum();
  return {std::move(drift), t * g};
}

OperatorMatrix product_over_path(const DisorderedHamiltonian& model, const SliceTerms& terms,
                                 const BridgePath& path, FactorForm form) {
  const Eigen::Index dim = model.dim();
  OperatorMatrix out = OperatorMatrix::Identity(dim, dim);
  OperatorMatrix exponent(dim, dim);
  OperatorMatrix fluct(dim, dim);
  for (int j = 0; j < path.steps; ++j) {
    fluct.setZero();
    for (int i = 0; i < path.terms(); ++i) {
      fluct += path.increments(i, j) * model.disorder_ops()[static_cast<std::size_t>(i)];
    }
    fluct *= terms.coupling;
    exponent = terms.drift + fluct;
    if (form == FactorForm::exponential) {
      out = expm(exponent) * out;
    } else {
      OperatorMatrix factor = OperatorMatrix::Identity(dim, dim) + exponent;
      factor.noalias() += 0.5 * fluct * fluct;
      out = factor * out;
    }
  }
  return out;
}

}  // namespace

OperatorMatrix path_propagator(const DisorderedHamiltonian& model, double t, const BridgePath& path,
                               FactorForm form) {
  if (static_cast<std::size_t>(path.terms()) != model.terms()) {
    throw InvalidInput("path_propagator: path has a different number of terms than the model");
  }
  if (path.steps < 1 || path.increments.cols() != path.steps) throw InvalidInput("path_propagator: malformed path");
  return product_over_path(model, slice_terms(model, t, path.steps), path, form);
}

MatrixEstimate estimate_S_stochastic(const DisorderedHamiltonian& model, double t, int steps, std::int64_t paths,
                                     std::uint64_t seed, FactorForm form) {
  if (steps < 1) throw InvalidInput("estimate_S_stochastic: steps must be positive");
  if (paths < 2) throw InvalidInput("estimate_S_stochastic: need at least 2 paths");
  if (model.terms() == 0) throw InvalidInput("estimate_S_stochastic: model has no disorder terms");
  const SliceTerms terms = slice_terms(model, t, steps);
  const int m = static_cast<int>(model.terms());
  const auto stats = deterministic_reduce<ComplexRunningStats>(
      static_cast<std::size_t>(paths), kChunk,
      [&](std::size_t begin, std::size_t end) {
        ComplexRunningStats acc(model.dim(), model.dim());
        for (std::size_t p = begin; p < end; ++p) {
          acc.push(product_over_path(model, terms, sample_bridge(steps, m, seed, p), form));
        }
        return acc;
      },
      [](ComplexRunningStats& acc, const ComplexRunningStats& part) { acc.merge(part); });
  return {stats.mean(), stats.stderr_re(), stats.stderr_im(), stats.count(), seed};
}

MatrixEstimate estimate_S_sde(const DisorderedHamiltonian& model, double t, int steps, std::int64_t paths,
                              std::uint64_t seed) {
  if (steps < 2) throw InvalidInput("estimate_S_sde: need at least 2 steps");
  if (paths < 2) throw InvalidInput("estimate_S_sde: need at least 2 paths");
  const Eigen::Index dim = model.dim();
  const auto m = static_cast<Eigen::Index>(model.terms());
  const double ds = 1.0 / steps;
  const double coupling = t * model.gamma();
  const OperatorMatrix drift = Complex(0.0, t * ds) * model.h0();

  const auto stats = deterministic_reduce<ComplexRunningStats>(
      static_cast<std::size_t>(paths), kChunk,
      [&](std::size_t begin, std::size_t end) {
        ComplexRunningStats acc(dim, dim);
        std::normal_distribution<double> normal(0.0, 1.0);
        const double dw_sd = std::sqrt(ds);
        Eigen::VectorXd z(m);
        Eigen::VectorXd dz(m);
        OperatorMatrix x(dim, dim);
        OperatorMatrix step(dim, dim);
        for (std::size_t p = begin; p < end; ++p) {
          auto engine = stream_engine(seed, p);
          normal.reset();
          z.setZero();
          x.setIdentity();
          for (int k = 0; k < steps; ++k) {
            if (k + 1 < steps) {
              const double s = k * ds;
              for (Eigen::Index i = 0; i < m; ++i) dz(i) = -z(i) / (1.0 - s) * ds + dw_sd * normal(engine);
            } else {
              dz = -z;
            }
            step = drift;
            for (Eigen::Index i = 0; i < m; ++i) {
              step += (coupling * dz(i)) * model.disorder_ops()[static_cast<std::size_t>(i)];
            }
            x += step * x;
            z += dz;
          }
          acc.push(x);
        }
        return acc;
      },
      [](ComplexRunningStats& acc, const ComplexRunningStats& part) { acc.merge(part); });
  return {stats.mean(), stats.stderr_re(), stats.stderr_im(), stats.count(), seed};
}

}  // namespace disavg

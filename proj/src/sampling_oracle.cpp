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

#include "disavg/sampling_oracle.hpp"

#include "disavg/errors.hpp"
#include "disavg/parallel.hpp"
#include "disavg/random.hpp"
#include "disavg/statistics.hpp"

#include <cmath>
#include <random>

namespace disavg {
namespace {

constexpr std::size_t kChunk = 64;

void require_samples(std::int64_t samples, const char* op) {
  if (samples < 2) throw InvalidInput(std::string(op) + ": need at least 2 samples");
}

Eigen::VectorXd sample_spectrum(const DisorderedHamiltonian& model, std::uint64_t seed, std::uint64_t index) {
  const OperatorMatrix h = sample_hamiltonian(model, disorder_sample(model, seed, index));
  return Eigen::SelfAdjointEigenSolver<OperatorMatrix>(h, Eigen::EigenvaluesOnly).eigenvalues();
}

template <typename PerSample>
ComplexRunningStats accumulate(std::int64_t samples, Eigen::Index rows, Eigen::Index cols, PerSample&& per_sample) {
  return deterministic_reduce<ComplexRunningStats>(
      static_cast<std::size_t>(samples), kChunk,
      [&](std::size_t begin, std::size_t end) {
        ComplexRunningStats stats(rows, cols);
        for (std::size_t i = begin; i < end; ++i) stats.push(per_sample(static_cast<std::uint64_t>(i)));
        return stats;
      },
      [](ComplexRunningStats& acc, const ComplexRunningStats& part) { acc.merge(part); });
}

MatrixEstimate to_matrix_estimate(const ComplexRunningStats& stats, std::uint64_t seed) {
  return {stats.mean(), stats.stderr_re(), stats.stderr_im(), stats.count(), seed};
}

ScalarEstimate to_scalar_estimate(const ComplexRunningStats& stats, std::uint64_t seed) {
  return {stats.mean()(0, 0), stats.stderr_re()(0, 0), stats.stderr_im()(0, 0), stats.count(), seed};
}

TimeSeries to_series(const Eigen::ArrayXd& times, const ComplexRunningStats& stats) {
  TimeSeries out;
  out.t_grid = times;
  out.values = stats.mean().col(0).array();
  out.stderr_re = stats.stderr_re().col(0).array();
  out.stderr_im = stats.stderr_im().col(0).array();
  return out;
}

// (1/N) sum_k e^{i t lambda_k} for every t
Eigen::ArrayXcd normalized_traces(const Eigen::VectorXd& spectrum, const Eigen::ArrayXd& times) {
  Eigen::ArrayXcd out(times.size());
  const auto n = static_cast<double>(spectrum.size());
  for (Eigen::Index k = 0; k < times.size(); ++k) {
    Complex acc{0.0, 0.0};
    for (Eigen::Index j = 0; j < spectrum.size(); ++j) acc += std::polar(1.0, times(k) * spectrum(j));
    out(k) = acc / n;
  }
  return out;
}

}  // namespace

RealVector disorder_sample(const DisorderedHamiltonian& model, std::uint64_t seed, std::uint64_t index) {
  auto engine = stream_engine(seed, index);
  std::normal_distribution<double> normal(0.0, 1.0);
  RealVector x(static_cast<Eigen::Index>(model.terms()));
  for (Eigen::Index j = 0; j < x.size(); ++j) x(j) = model.gamma() * normal(engine);
  return x;
}

std::vector<RealVector> sample_disorder(const DisorderedHamiltonian& model, std::int64_t count, std::uint64_t seed) {
  if (count < 1) throw InvalidInput("sample_disorder: count must be positive");
  std::vector<RealVector> out;
  out.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) out.push_back(disorder_sample(model, seed, static_cast<std::uint64_t>(i)));
  return out;
}

MatrixEstimate estimate_propagator(const DisorderedHamiltonian& model, double t, std::int64_t samples,
                                   std::uint64_t seed) {
  require_samples(samples, "estimate_propagator");
  const auto stats = accumulate(samples, model.dim(), model.dim(), [&](std::uint64_t i) {
    return exp_i_hermitian(sample_hamiltonian(model, disorder_sample(model, seed, i)), t);
  });
  return to_matrix_estimate(stats, seed);
}

ScalarEstimate estimate_trace_x(const DisorderedHamiltonian& model, double t, std::int64_t samples,
                                std::uint64_t seed) {
  require_samples(samples, "estimate_trace_x");
  const Eigen::ArrayXd times = Eigen::ArrayXd::Constant(1, t);
  const auto stats = accumulate(samples, 1, 1, [&](std::uint64_t i) {
    return Eigen::ArrayXcd(normalized_traces(sample_spectrum(model, seed, i), times));
  });
  return to_scalar_estimate(stats, seed);
}

TimeSeries estimate_trace_x(const DisorderedHamiltonian& model, const Eigen::ArrayXd& times,
                            std::int64_t samples, std::uint64_t seed) {
  require_samples(samples, "estimate_trace_x");
  const auto stats = accumulate(samples, times.size(), 1, [&](std::uint64_t i) {
    return Eigen::ArrayXcd(normalized_traces(sample_spectrum(model, seed, i), times));
  });
  return to_series(times, stats);
}

ScalarEstimate estimate_sff(const DisorderedHamiltonian& model, double t, std::int64_t samples,
                            std::uint64_t seed) {
  require_samples(samples, "estimate_sff");
  const Eigen::ArrayXd times = Eigen::ArrayXd::Constant(1, t);
  const auto stats = accumulate(samples, 1, 1, [&](std::uint64_t i) {
    return Eigen::ArrayXcd(normalized_traces(sample_spectrum(model, seed, i), times).abs2().cast<Complex>());
  });
  return to_scalar_estimate(stats, seed);
}

TimeSeries estimate_sff(const DisorderedHamiltonian& model, const Eigen::ArrayXd& times, std::int64_t samples,
                        std::uint64_t seed) {
  require_samples(samples, "estimate_sff");
  const auto stats = accumulate(samples, times.size(), 1, [&](std::uint64_t i) {
    return Eigen::ArrayXcd(normalized_traces(sample_spectrum(model, seed, i), times).abs2().cast<Complex>());
  });
  return to_series(times, stats);
}

MatrixEstimate estimate_density(const DisorderedHamiltonian& model, double t, const ComplexVector& psi0,
                                std::int64_t samples, std::uint64_t seed) {
  require_samples(samples, "estimate_density");
  if (psi0.size() != model.dim()) throw InvalidInput("estimate_density: state dimension mismatch");
  if (std::abs(psi0.norm() - 1.0) > 1e-12) throw InvalidInput("estimate_density: psi0 is not normalised");
  const auto stats = accumulate(samples, model.dim(), model.dim(), [&](std::uint64_t i) {
    const ComplexVector phi = exp_i_hermitian(sample_hamiltonian(model, disorder_sample(model, seed, i)), -t) * psi0;
    return OperatorMatrix(phi * phi.adjoint());
  });
  return to_matrix_estimate(stats, seed);
}

}  // namespace disavg

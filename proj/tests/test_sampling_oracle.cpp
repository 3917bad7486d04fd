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

#include "disavg/errors.hpp"
#include "disavg/parallel.hpp"
#include "disavg/sampling_oracle.hpp"
#include "disavg/statistics.hpp"
#include "support/oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <numbers>

using namespace disavg;

namespace {

DisorderedHamiltonian two_level(double gamma) {
  OperatorMatrix h0(2, 2);
  h0 << 0.0, 1.0, 1.0, 0.0;
  OperatorMatrix d(2, 2);
  d << 1.0, 0.0, 0.0, -1.0;
  return DisorderedHamiltonian(h0, {d}, gamma);
}

Complex band_average(int n, double t) {
  Complex acc = 0.0;
  for (int k = 0; k < n; ++k) acc += std::polar(1.0, t * (2.0 - 2.0 * std::cos(2.0 * std::numbers::pi * k / n)));
  return acc / static_cast<double>(n);
}

}  // namespace

TEST_CASE("disorder samples", "[sampling-oracle]") {
  const DisorderedHamiltonian zero = build_anderson(5, 0.0);
  for (const auto& x : sample_disorder(zero, 10, 1)) CHECK(x.isZero());

  const double gamma = 0.8;
  const DisorderedHamiltonian m = build_anderson(3, gamma);
  const auto xs = sample_disorder(m, 100000, 42);
  RunningStats<Eigen::ArrayXXd> stats;
  for (const auto& x : xs) stats.push(x.array());
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(stats.mean()(i, 0)) <= 4.0 * gamma / std::sqrt(1e5));
    CHECK(std::abs(stats.variance()(i, 0) / (gamma * gamma) - 1.0) <= 0.05);
  }
  CHECK(disorder_sample(m, 42, 17) == xs[17]);
  CHECK(disorder_sample(m, 43, 17) != xs[17]);
}

TEST_CASE("estimate_propagator special cases", "[sampling-oracle]") {
  const DisorderedHamiltonian m = build_anderson(4, 0.0);
  const MatrixEstimate e = estimate_propagator(m, 1.3, 16, 0);
  CHECK((e.mean - exp_i_hermitian(m.h0(), 1.3)).norm() < 1e-13);
  CHECK(e.stderr_re.maxCoeff() < 1e-15);
  CHECK(e.samples == 16);
  CHECK_THROWS_AS(estimate_propagator(m, 1.0, 1, 0), InvalidInput);

  // A = a I, B = b I: E[e^{it(a + b x)}] = e^{ita} e^{-gamma^2 t^2 b^2 / 2}
  const double a = 0.7;
  const double b = 1.3;
  const DisorderedHamiltonian scalar(a * OperatorMatrix::Identity(2, 2), {b * OperatorMatrix::Identity(2, 2)}, 0.5);
  const double t = 1.1;
  const MatrixEstimate s = estimate_propagator(scalar, t, 20000, 5);
  const Complex exact = std::exp(Complex(-0.5 * 0.25 * t * t * b * b, t * a));
  for (int i = 0; i < 2; ++i) {
    CHECK(std::abs(s.mean(i, i).real() - exact.real()) <= 3.0 * s.stderr_re(i, i));
    CHECK(std::abs(s.mean(i, i).imag() - exact.imag()) <= 3.0 * s.stderr_im(i, i));
  }
}

TEST_CASE("estimate_propagator against Gauss-Hermite", "[sampling-oracle]") {
  const DisorderedHamiltonian m = two_level(0.5);
  const OperatorMatrix oracle = testing::gauss_hermite_propagator(m, 1.0);
  const MatrixEstimate e = estimate_propagator(m, 1.0, 40000, 9);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      CHECK(std::abs(e.mean(i, j).real() - oracle(i, j).real()) <= 3.0 * e.stderr_re(i, j) + 1e-15);
      CHECK(std::abs(e.mean(i, j).imag() - oracle(i, j).imag()) <= 3.0 * e.stderr_im(i, j) + 1e-15);
    }
  }
}

TEST_CASE("estimate_trace_x", "[sampling-oracle]") {
  const DisorderedHamiltonian m = build_anderson(30, 1.0);
  const ScalarEstimate zero = estimate_trace_x(m, 0.0, 50, 3);
  CHECK(zero.mean == Complex(1.0, 0.0));
  CHECK(zero.stderr_re == 0.0);
  CHECK(zero.stderr_im == 0.0);

  const ScalarEstimate clean = estimate_trace_x(m.with_gamma(0.0), 1.0, 4, 3);
  CHECK(std::abs(clean.mean - band_average(30, 1.0)) < 1e-12);

  // Grid and scalar overloads draw the same samples.
  Eigen::ArrayXd times(3);
  times << 0.0, 0.5, 2.0;
  const TimeSeries series = estimate_trace_x(m, times, 200, 8);
  const ScalarEstimate at2 = estimate_trace_x(m, 2.0, 200, 8);
  CHECK(std::abs(series.values(2) - at2.mean) < 1e-12);
  CHECK(std::abs(series.stderr_re(2) - at2.stderr_re) < 1e-12);
  CHECK(series.has_stderr());
}

TEST_CASE("estimate_sff", "[sampling-oracle]") {
  const DisorderedHamiltonian m = build_anderson(6, 0.7);
  CHECK(estimate_sff(m, 0.0, 20, 1).mean == Complex(1.0, 0.0));
  const ScalarEstimate clean = estimate_sff(m.with_gamma(0.0), 1.7, 4, 1);
  CHECK(std::abs(clean.mean.real() - std::norm(band_average(6, 1.7))) < 1e-12);

  // Two-copy identity: |tr e^{itH}|^2 = tr e^{itH_(2)} sample by sample.
  const double t = 0.8;
  const ScalarEstimate sff = estimate_sff(m, t, 3000, 4);
  const MatrixEstimate pair = estimate_propagator(build_copies(m, 2), t, 3000, 4);
  CHECK(std::abs(sff.mean - pair.mean.trace() / 36.0) < 1e-10);
}

TEST_CASE("estimate_density", "[sampling-oracle]") {
  const DisorderedHamiltonian m = two_level(0.5);
  ComplexVector psi(2);
  psi << 1.0 / std::sqrt(2.0), Complex(0.0, 1.0 / std::sqrt(2.0));
  const OperatorMatrix rho0 = psi * psi.adjoint();
  CHECK((estimate_density(m, 0.0, psi, 10, 0).mean - rho0).norm() < 1e-15);

  const MatrixEstimate rho = estimate_density(m, 0.9, psi, 20000, 2);
  CHECK(std::abs(rho.mean.trace() - 1.0) < 1e-12);
  CHECK(hermiticity_defect(rho.mean) < 1e-12);
  const OperatorMatrix oracle = testing::gauss_hermite_density(m, 0.9, rho0);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      CHECK(std::abs(rho.mean(i, j).real() - oracle(i, j).real()) <= 3.0 * rho.stderr_re(i, j) + 1e-14);
      CHECK(std::abs(rho.mean(i, j).imag() - oracle(i, j).imag()) <= 3.0 * rho.stderr_im(i, j) + 1e-14);
    }

  const MatrixEstimate pure = estimate_density(m.with_gamma(0.0), 0.9, psi, 5, 2);
  CHECK(std::abs((pure.mean * pure.mean).trace() - 1.0) < 1e-12);

  ComplexVector bad = psi * 1.001;
  CHECK_THROWS_AS(estimate_density(m, 1.0, bad, 10, 0), InvalidInput);
}

TEST_CASE("standard error shrinks as 1/sqrt(samples)", "[sampling-oracle][property]") {
  const DisorderedHamiltonian m = two_level(0.7);
  const MatrixEstimate small = estimate_propagator(m, 1.5, 4000, 21);
  const MatrixEstimate large = estimate_propagator(m, 1.5, 16000, 21);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const double ratio = large.stderr_re(i, j) / small.stderr_re(i, j);
      CHECK(std::abs(ratio - 0.5) <= 0.1);
    }
}

TEST_CASE("results do not depend on the worker count", "[sampling-oracle][property]") {
  const DisorderedHamiltonian m = build_anderson(5, 0.9);
  ::setenv("DISAVG_THREADS", "1", 1);
  const MatrixEstimate one = estimate_propagator(m, 1.2, 500, 77);
  ::setenv("DISAVG_THREADS", "7", 1);
  const MatrixEstimate many = estimate_propagator(m, 1.2, 500, 77);
  ::unsetenv("DISAVG_THREADS");
  CHECK(one.mean == many.mean);
  CHECK(one.stderr_re == many.stderr_re);

  // Force real concurrency regardless of the host core count.
  auto run = [&](unsigned workers) {
    return deterministic_reduce<ComplexRunningStats>(
        1000, 64,
        [&](std::size_t begin, std::size_t end) {
          ComplexRunningStats s(1, 1);
          for (std::size_t i = begin; i < end; ++i)
            s.push(Complex(disorder_sample(m, 5, i)(0), disorder_sample(m, 5, i)(1)));
          return s;
        },
        [](ComplexRunningStats& acc, const ComplexRunningStats& part) { acc.merge(part); }, workers);
  };
  const ComplexRunningStats a = run(1);
  const ComplexRunningStats b = run(5);
  CHECK(a.mean() == b.mean());
  CHECK(a.stderr_re() == b.stderr_re());
  CHECK(a.stderr_im() == b.stderr_im());
}

TEST_CASE("every sampled propagator is unitary", "[sampling-oracle][property]") {
  const DisorderedHamiltonian m = build_anderson(6, 1.5);
  for (std::uint64_t i = 0; i < 50; ++i) {
    const OperatorMatrix u = exp_i_hermitian(sample_hamiltonian(m, disorder_sample(m, 9, i)), 3.0);
    CHECK((u.adjoint() * u - OperatorMatrix::Identity(6, 6)).norm() < 1e-9);
  }
}

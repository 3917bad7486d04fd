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

#include "disavg/anderson_analytics.hpp"
#include "disavg/disorder_model.hpp"
#include "disavg/errors.hpp"
#include "support/oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

using namespace disavg;

namespace {

constexpr double kPi = std::numbers::pi;

TimeSeries closed_series(double gamma, double t_max, int points) {
  TimeSeries s;
  s.t_grid = uniform_grid(t_max, points);
  s.values.resize(points);
  for (int k = 0; k < points; ++k) s.values(k) = x0_closed(s.t_grid(k), gamma);
  return s;
}

}  // namespace

TEST_CASE("J0 special values", "[anderson-analytics]") {
  CHECK(bessel_j0(0.0) == 1.0);
  CHECK(std::abs(bessel_j0(2.0) - 0.2238907791412357) <= 1e-15);

  // First zero located by bisection on the independent trapezoid oracle.
  double lo = 2.0;
  double hi = 3.0;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    (testing::bessel_j0_trapezoid(mid) > 0.0 ? lo : hi) = mid;
  }
  CHECK(std::abs(lo - 2.404825557695773) <= 1e-12);
  CHECK(std::abs(bessel_j0(lo)) <= 1e-10);
  CHECK_THROWS_AS(bessel_j0(1.5e4), InvalidInput);
}

TEST_CASE("J0 across its domain", "[anderson-analytics][property]") {
  double worst = 0.0;
  for (double x = -60.0; x <= 60.0; x += 0.173) {
    worst = std::max(worst, std::abs(bessel_j0(x) - testing::bessel_j0_trapezoid(x)));
  }
  CHECK(worst <= 1e-12);
  worst = 0.0;
  for (double x = 11.5; x <= 1e4; x *= 1.07) {
    worst = std::max(worst, std::abs(bessel_j0(x) - std::cyl_bessel_j(0.0, x)));
  }
  worst = std::max(worst, std::abs(bessel_j0(1e4) - std::cyl_bessel_j(0.0, 1e4)));
  CHECK(worst <= 1e-12);
}

TEST_CASE("diffusive trace closed form", "[anderson-analytics]") {
  CHECK(x0_closed(0.0, 0.7) == Complex(1.0, 0.0));
  CHECK(std::abs(x0_closed(0.0, 1.3, 30) - 1.0) < 1e-15);
  CHECK(std::abs(x0_closed(1.0, 0.0) - std::exp(Complex(0.0, 2.0)) * bessel_j0(2.0)) < 1e-15);
  CHECK(std::abs(std::abs(x0_closed(1.0, 0.0)) - 0.22389) < 1e-5);

  double worst = 0.0;
  for (int k = 0; k <= 1000; ++k) {
    const double t = 0.01 * k;
    worst = std::max(worst, std::abs(x0_closed(t, 1.0, 30) - x0_closed(t, 1.0)));
    worst = std::max(worst, std::abs(x0_closed(t, 0.0, 30) - x0_closed(t, 0.0)));
  }
  CHECK(worst <= 1e-3);

  // Finite chains: exact band energies, and for even N the form with +cos.
  for (int n : {6, 7}) {
    const DisorderedHamiltonian m = build_anderson(n, 0.4);
    const Complex trace = expm(diffusive_generator(m, 1.7)).trace() / static_cast<double>(n);
    CHECK(std::abs(x0_closed(1.7, 0.4, n) - trace) < 1e-13);
  }
  Complex plus = 0.0;
  for (int k = 0; k < 10; ++k) plus += std::exp(Complex(0.0, 2.0 * 1.7 * std::cos(2.0 * kPi * k / 10)));
  plus *= std::exp(Complex(-0.5 * 0.16 * 1.7 * 1.7, 2.0 * 1.7)) / 10.0;
  CHECK(std::abs(x0_closed(1.7, 0.4, 10) - plus) < 1e-13);
}

TEST_CASE("second-order closed form", "[anderson-analytics]") {
  CHECK(x2_closed(0.0, 1.0) == Complex(0.0, 0.0));
  CHECK(x2_closed(3.0, 0.0) == Complex(0.0, 0.0));
  CHECK(std::abs(x_second_order(0.0, 0.8) - 1.0) < 1e-15);
  for (double t : {0.3, 1.0, 4.0}) {
    CHECK(std::abs(x_second_order(t, 0.0) - std::exp(Complex(0.0, 2.0 * t)) * bessel_j0(2.0 * t)) < 1e-15);
  }
  CHECK(std::abs(x_second_order(2.0, 1.0) - (x0_closed(2.0, 1.0) + x2_closed(2.0, 1.0))) <= 1e-14);

  // The fluctuation term is gamma^2 t^2 e^{2it - gamma^2 t^2 / 2} times the double Bessel integral.
  const double gamma = 0.9;
  const double t = 1.0;
  const Complex phase = std::exp(Complex(-0.5 * gamma * gamma * t * t, 2.0 * t));
  const Complex from_integral = gamma * gamma * t * t * phase * double_bessel_integral(t, 64);
  const Complex from_closed = gamma * gamma * t * phase * std::sin(2.0 * t) / 4.0;
  CHECK(std::abs(from_integral - from_closed) <= 1e-8);
}

TEST_CASE("second-order trace is bounded by its envelope", "[anderson-analytics][property]") {
  for (double gamma : {0.0, 0.3, 1.0, 2.0}) {
    for (int k = 0; k <= 400; ++k) {
      const double t = 0.05 * k;
      const double g2 = gamma * gamma;
      const double bound = (1.0 + 0.5 * g2 * t * t + 0.25 * g2 * t) * std::exp(-0.5 * g2 * t * t);
      CHECK(std::abs(x_second_order(t, gamma)) <= bound * (1.0 + 1e-14));
    }
  }
}

TEST_CASE("double Bessel integral", "[anderson-analytics]") {
  CHECK(std::abs(double_bessel_integral(1e-6, 16) - 0.5) < 1e-10);
  CHECK(std::abs(double_bessel_integral(1.0, 64) - 0.22732435670642) <= 1e-8);
  CHECK(std::abs(double_bessel_integral(kPi / 2.0, 64)) <= 1e-8);
  CHECK_THROWS_AS(double_bessel_integral(1.0, 7), InvalidInput);
}

TEST_CASE("DOS of the clean band", "[anderson-analytics]") {
  const TimeSeries series = closed_series(0.0, 100.0, 4096);
  const SpectrumResult dos = dos_from_timeseries(series, DosWindow::gaussian, 0.0, 0.0);
  const double d_omega = dos.omega_grid(1) - dos.omega_grid(0);
  CHECK(std::abs(dos.dos.sum() * d_omega - 1.0) <= 1e-3);
  const double peak = dos.dos.maxCoeff();
  CHECK(dos.dos.minCoeff() >= -1e-3 * peak);
  double outside = 0.0;
  for (Eigen::Index j = 0; j < dos.dos.size(); ++j) {
    if (dos.omega_grid(j) < -0.2 || dos.omega_grid(j) > 4.2) outside += std::abs(dos.dos(j)) * d_omega;
  }
  CHECK(outside <= 0.02);
  // Band centre density 1 / (pi sqrt(w (4 - w))) at w = 2.
  Eigen::Index centre = 0;
  (dos.omega_grid - 2.0).abs().minCoeff(&centre);
  CHECK(std::abs(dos.dos(centre) - 1.0 / (2.0 * kPi)) <= 0.01);
}

TEST_CASE("DOS windows and validation", "[anderson-analytics]") {
  const TimeSeries series = closed_series(0.5, 40.0, 1024);
  for (DosWindow w : {DosWindow::gaussian, DosWindow::hann, DosWindow::none}) {
    const SpectrumResult dos = dos_from_timeseries(series, w, 0.2, 0.5);
    const double d_omega = dos.omega_grid(1) - dos.omega_grid(0);
    CHECK(std::abs(dos.dos.sum() * d_omega - 1.0) <= 1e-3);
    if (w != DosWindow::none) CHECK(dos.dos.minCoeff() >= -1e-3 * dos.dos.maxCoeff());
  }

  CHECK_THROWS_AS(dos_from_timeseries(closed_series(0.5, 40.0, 200), DosWindow::gaussian, 0.0, 0.5), InvalidInput);
  // dt = 1 gives a Nyquist frequency of pi, below the band edge.
  CHECK_THROWS_AS(dos_from_timeseries(closed_series(0.0, 299.0, 300), DosWindow::gaussian, 0.0, 0.0), InvalidInput);
  TimeSeries bent = series;
  bent.t_grid(10) += 1e-3;
  CHECK_THROWS_AS(dos_from_timeseries(bent, DosWindow::gaussian, 0.0, 0.5), InvalidInput);
  TimeSeries shifted = series;
  shifted.t_grid += 1.0;
  CHECK_THROWS_AS(dos_from_timeseries(shifted, DosWindow::gaussian, 0.0, 0.5), InvalidInput);
}

TEST_CASE("diffusive spectral form factor", "[anderson-analytics]") {
  CHECK(std::abs(sff_diffusive(6, 0.0, 1.0) - 1.0) < 1e-12);
  for (double t : {0.4, 1.3, 3.7}) {
    CHECK(std::abs(sff_diffusive(8, t, 0.0) - std::norm(x0_closed(t, 0.0, 8))) <= 1e-10);
  }
  CHECK(sff_diffusive(8, 3.0, 1.0) < sff_diffusive(8, 3.0, 0.0));
  for (int n = 2; n <= 7; ++n) {
    for (double t : {0.3, 1.1, 2.6}) {
      const double gamma = 0.2 * n;
      const DisorderedHamiltonian pair = build_copies(build_anderson(n, gamma), 2);
      const Complex dense = expm(diffusive_generator(pair, t)).trace() / static_cast<double>(n * n);
      CHECK(std::abs(dense.imag()) <= 1e-10);
      CHECK(std::abs(sff_diffusive(n, t, gamma) - dense.real()) <= 1e-10);
    }
  }
  CHECK_THROWS_AS(sff_diffusive(kSffDenseLimit + 1, 1.0, 1.0), Unsupported);
  CHECK_THROWS_AS(sff_diffusive(1, 1.0, 1.0), InvalidInput);
}

TEST_CASE("diffusive OTOC", "[anderson-analytics]") {
  CHECK(std::abs(otoc_diffusive(4, 0.0, 0.5, 1) - 1.0) < 1e-14);
  for (int ell = 2; ell <= 4; ++ell) CHECK(std::abs(otoc_diffusive(4, 0.0, 0.5, ell)) < 1e-14);
  CHECK(std::abs(otoc_diffusive(4, 1.0, 0.5, 2) - testing::dense_otoc_traces(4, 1.0, 0.5)[1]) <= 1e-8);
  CHECK_THROWS_AS(otoc_diffusive(4, 1.0, 0.5, 0), InvalidInput);
  CHECK_THROWS_AS(otoc_diffusive(4, 1.0, 0.5, 5), InvalidInput);
}

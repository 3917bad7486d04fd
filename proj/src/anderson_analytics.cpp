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
#include "disavg/quadrature.hpp"

#include <unsupported/Eigen/FFT>

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

namespace disavg {
namespace {

constexpr double kPi = std::numbers::pi;

long double j0_series(long double x) {
  const long double q = -0.25L * x * x;
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int l = 1; l < 200; ++l) {
    term *= q / (static_cast<long double>(l) * l);
    sum += term;
    if (std::fabs(term) < 1e-22L * std::fabs(sum) + 1e-24L) break;
  }
  return sum;
}

// Miller's backward recurrence J_{k-1} = (2k/x) J_k - J_{k+1}, normalised by
// J0 + 2 sum_k J_2k = 1.
long double j0_recurrence(long double x) {
  const long double ax = std::fabs(x);
  int start = static_cast<int>(ax + 40.0L + 12.0L * std::cbrt(ax));
  if (start % 2 != 0) ++start;
  long double next = 0.0L;  // J_{k+1}
  long double cur = 1e-300L;  // J_k
  long double norm = 0.0L;
  long double j0 = 0.0L;
  for (int k = start; k >= 1; --k) {
    const long double prev = (2.0L * k / ax) * cur - next;
    next = cur;
    cur = prev;
    if (k % 2 == 1 && k > 1) norm += 2.0L * cur;  // cur is J_{k-1}, even order
    if (std::fabs(cur) > 1e300L) {
      next /= 1e300L;
      cur /= 1e300L;
      norm /= 1e300L;
    }
  }
  j0 = cur;
  norm += j0;
  return j0 / norm;
}

}  // namespace

double bessel_j0(double x) {
  if (!std::isfinite(x) || std::fabs(x) > 1e4) throw InvalidInput("bessel_j0: |x| must not exceed 1e4");
  if (std::fabs(x) <= 12.0) return static_cast<double>(j0_series(x));
  return static_cast<double>(j0_recurrence(x));
}

Complex x0_closed(double t, double gamma, std::optional<int> sites) {
  const Complex envelope = std::exp(Complex(-0.5 * gamma * gamma * t * t, 0.0));
  if (!sites) return envelope * std::exp(Complex(0.0, 2.0 * t)) * bessel_j0(2.0 * t);
  const int n = *sites;
  if (n < 1) throw InvalidInput("x0_closed: sites must be positive");
  Complex sum = 0.0;
  for (int k = 0; k < n; ++k) {
    const double energy = 2.0 - 2.0 * std::cos(2.0 * kPi * k / n);
    sum += std::exp(Complex(0.0, t * energy));
  }
  return envelope * sum / static_cast<double>(n);
}

Complex x2_closed(double t, double gamma) {
  const double g2 = gamma * gamma;
  const Complex phase = std::exp(Complex(-0.5 * g2 * t * t, 2.0 * t));
  return 0.5 * g2 * t * t * x0_closed(t, gamma) - g2 * t * phase * std::sin(2.0 * t) / 4.0;
}

Complex x_second_order(double t, double gamma) {
  const double g2 = gamma * gamma;
  const Complex phase = std::exp(Complex(-0.5 * g2 * t * t, 2.0 * t));
  return phase * ((1.0 + 0.5 * g2 * t * t) * bessel_j0(2.0 * t) - 0.25 * g2 * t * std::sin(2.0 * t));
}

double double_bessel_integral(double t, int quad_nodes) {
  if (quad_nodes < 8) throw InvalidInput("double_bessel_integral: need at least 8 quadrature nodes");
  const QuadratureRule rule = gauss_legendre(quad_nodes, 0.0, 1.0);
  double total = 0.0;
  for (Eigen::Index a = 0; a < rule.nodes.size(); ++a) {
    const double s1 = rule.nodes(a);
    double inner = 0.0;
    for (Eigen::Index b = 0; b < rule.nodes.size(); ++b) {
      const double s2 = s1 * rule.nodes(b);
      inner += rule.weights(b) * bessel_j0(2.0 * t * (1.0 - s1 + s2)) * bessel_j0(2.0 * t * (s1 - s2));
    }
    total += rule.weights(a) * s1 * inner;
  }
  return total;
}

SpectrumResult dos_from_timeseries(const TimeSeries& series, DosWindow window, double width, double gamma) {
  const Eigen::Index m = series.t_grid.size();
  if (m < 256 || series.values.size() != m) throw InvalidInput("dos_from_timeseries: need at least 256 points");
  check_uniform_grid(series.t_grid);
  const double dt = series.t_grid(1) - series.t_grid(0);
  if (std::abs(series.t_grid(0)) > 1e-12 * dt) throw InvalidInput("dos_from_timeseries: grid must start at t = 0");
  if (!(gamma >= 0.0)) throw InvalidInput("dos_from_timeseries: gamma must be non-negative");
  if (kPi / dt < 4.0 + 5.0 * gamma) throw InvalidInput("dos_from_timeseries: time step too coarse for the band edge");
  const double t_max = series.t_grid(m - 1);
  const double sigma = width > 0.0 ? width : 6.0 / t_max;

  Eigen::ArrayXd weights(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const double t = series.t_grid(k);
    switch (window) {
      case DosWindow::gaussian: weights(k) = std::exp(-0.5 * sigma * sigma * t * t); break;
      case DosWindow::hann: weights(k) = std::pow(std::cos(0.5 * kPi * t / t_max), 2); break;
      case DosWindow::none: weights(k) = 1.0; break;
    }
  }

  // Zero-padded, conjugate-symmetric layout: a[k] = X(t_k), a[L-k] = conj X(t_k).
  Eigen::Index length = 1;
  while (length < 4 * m) length *= 2;
  std::vector<Complex> signal(static_cast<std::size_t>(length), Complex(0.0, 0.0));
  signal[0] = Complex(series.values(0).real(), 0.0) * weights(0);
  for (Eigen::Index k = 1; k < m; ++k) {
    signal[static_cast<std::size_t>(k)] = series.values(k) * weights(k);
    signal[static_cast<std::size_t>(length - k)] = std::conj(series.values(k)) * weights(k);
  }
  Eigen::FFT<double> fft;
  std::vector<Complex> spectrum;
  fft.fwd(spectrum, signal);

  SpectrumResult result;
  result.omega_grid.resize(length);
  result.dos.resize(length);
  const double d_omega = 2.0 * kPi / (static_cast<double>(length) * dt);
  const Eigen::Index half = length / 2;
  for (Eigen::Index j = 0; j < length; ++j) {
    const Eigen::Index bin = (j + half) % length;  // frequency index j - half
    result.omega_grid(j) = static_cast<double>(j - half) * d_omega;
    result.dos(j) = dt / (2.0 * kPi) * spectrum[static_cast<std::size_t>(bin)].real();
  }
  const double mass = result.dos.sum() * d_omega;
  if (!(std::abs(mass) > 0.0)) throw InvalidInput("dos_from_timeseries: spectrum has zero mass");
  result.dos /= mass;
  return result;
}

double sff_diffusive(int sites, double t, double gamma) {
  if (sites > kSffDenseLimit) throw Unsupported("sff_diffusive: chain too long for the two-copy exponential");
  if (sites < 2) throw InvalidInput("sff_diffusive: need at least 2 sites");
  // The two-copy generator commutes with translating both copies at once. In
  // the basis |q, r> = N^{-1/2} sum_a e^{iqa} |a, a + r> it is block diagonal,
  // one N x N block per total momentum q:
  //   K_q[r -+ 1, r] += i t (1 - e^{-+iq}),  K_q[r, r] = -gamma^2 t^2 (1 - delta_{r0}).
  const int n = sites;
  const double damping = gamma * gamma * t * t;
  Complex trace = 0.0;
  OperatorMatrix block(n, n);
  for (int k = 0; k < n; ++k) {
    const double q = 2.0 * kPi * k / n;
    const Complex down = Complex(0.0, t) * (1.0 - std::exp(Complex(0.0, -q)));
    const Complex up = Complex(0.0, t) * (1.0 - std::exp(Complex(0.0, q)));
    block.setZero();
    for (int r = 0; r < n; ++r) {
      if (r != 0) block(r, r) = -damping;
      block((r + n - 1) % n, r) += down;
      block((r + 1) % n, r) += up;
    }
    trace += expm(block).trace();
  }
  return trace.real() / (static_cast<double>(n) * n);
}

Complex otoc_diffusive(int sites, double t, double gamma, int ell) {
  if (ell < 1 || ell > sites) throw InvalidInput("otoc_diffusive: ell must lie in [1, N]");
  const SparseOperator k = sparse_copy_generator(build_anderson(sites, gamma), 4, t);
  const int site = ell - 1;
  const std::array<int, 4> ket{site, 0, site, 0};
  const std::array<int, 4> bra{0, site, 0, site};
  ComplexVector v = ComplexVector::Zero(k.rows());
  v(product_index(sites, ket)) = 1.0;
  const ComplexVector w = apply_expm(k, v);
  return w(product_index(sites, bra));
}

}  // namespace disavg

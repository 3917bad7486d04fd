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

#include "disavg/estimates.hpp"
#include "disavg/operator_algebra.hpp"

#include <optional>

namespace disavg {

/// Bessel function of the first kind, order zero, for |x| <= 1e4.
double bessel_j0(double x);

/// Diffusive trace X0(t) = (1/N) tr e^K of the Anderson chain. A finite
/// `sites` sums over the exact band energies 2 - 2 cos(2 pi k / N); nullopt
/// gives the infinite-chain limit e^{2it - gamma^2 t^2 / 2} J0(2t).
Complex x0_closed(double t, double gamma, std::optional<int> sites = std::nullopt);

/// O(gamma^2) correction (gamma^2 t^2 / 2) X0 - gamma^2 t e^{2it - gamma^2 t^2 / 2} sin(2t) / 4.
Complex x2_closed(double t, double gamma);

/// e^{2it - gamma^2 t^2 / 2} [(1 + gamma^2 t^2 / 2) J0(2t) - (gamma^2 t / 4) sin(2t)]
Complex x_second_order(double t, double gamma);

/// int_0^1 ds1 int_0^s1 ds2 J0(2t(1 - s1 + s2)) J0(2t(s1 - s2)) by a tensor
/// Gauss-Legendre rule on the square (s1, u), s2 = s1 u.
double double_bessel_integral(double t, int quad_nodes);

enum class DosWindow { gaussian, hann, none };

struct SpectrumResult {
  Eigen::ArrayXd omega_grid;
  Eigen::ArrayXd dos;
};

/// DOS(w) = (1/2pi) int X(t) e^{-iwt} dt over the conjugate-symmetric
/// extension of `series` to [-T, T], normalised to unit mass.
///
/// The Gaussian window is exp(-(width t)^2 / 2), so `width` is the standard
/// deviation of the smoothing kernel in energy; width <= 0 selects 6/T. The
/// Hann window ignores `width`. `gamma` sets the band edge 4 + 5 gamma that
/// the Nyquist frequency pi/dt must exceed.
SpectrumResult dos_from_timeseries(const TimeSeries& series, DosWindow window, double width, double gamma);

/// Largest chain accepted by sff_diffusive.
inline constexpr int kSffDenseLimit = 40;

/// (1/N^2) tr exp(K) for the two-copy Anderson generator, evaluated sector by
/// sector in the total momentum of the pair.
double sff_diffusive(int sites, double t, double gamma);

/// <1, ell, 1, ell| exp(K4) |ell, 1, ell, 1> for the four-copy Anderson
/// generator, sites labelled 1..N with the perturbation on site 1.
Complex otoc_diffusive(int sites, double t, double gamma, int ell);

}  // namespace disavg

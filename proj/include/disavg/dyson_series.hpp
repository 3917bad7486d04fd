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

#include "disavg/disorder_model.hpp"

namespace disavg {

/// Zeroth-order (diffusive) term e^K, K = i t H0 - (gamma^2 t^2 / 2) sum D^2.
OperatorMatrix diffusive_propagator(const DisorderedHamiltonian& model, double t);

/// Diffusive term plus the O(gamma^2) fluctuation correction,
///   e^K [I - gamma^2 t^2 sum_i  int_0^1 ds1 int_0^s1 ds2 D_i(s2) D_i(s1)
///          + (gamma^2 t^2 / 2) sum_i int_0^1 D_i(s)^2 ds],
/// with D_i(s) = e^{sK} D_i e^{-sK}, integrated by Gauss-Legendre quadrature
/// (the triangle is mapped to the square with s2 = s1 u).
OperatorMatrix second_order_propagator(const DisorderedHamiltonian& model, double t, int quad_nodes = 64);

/// Row-major vectorised generator of
///   L(X) = -i t [H0, X] + gamma^2 t^2 sum_i (D_i X D_i - {D_i^2, X} / 2),
/// i.e. vec(A X B) = (A kron B^T) vec(X).
OperatorMatrix lindblad_superoperator(const DisorderedHamiltonian& model, double t);

/// e^L applied to rho0. The Hamiltonian part carries the sign that evolves
/// rho like e^{-itH} rho e^{itH}. Dense superoperator exponential up to 32
/// levels; above that a fixed-step RK4 integration in the unit time.
OperatorMatrix lindblad_evolve(const DisorderedHamiltonian& model, double t, const OperatorMatrix& rho0);

/// Dimension up to which lindblad_evolve exponentiates the superoperator.
inline constexpr Eigen::Index kLindbladDenseLimit = 32;

/// RK4 path of lindblad_evolve, exposed for cross-checks.
OperatorMatrix lindblad_evolve_rk4(const DisorderedHamiltonian& model, double t, const OperatorMatrix& rho0,
                                   int steps = 1000);

}  // namespace disavg

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

#include "disavg/brownian_bridge.hpp"
#include "disavg/disorder_model.hpp"
#include "disavg/estimates.hpp"

#include <cstdint>

namespace disavg {

/// How each time slice of the bridge product is represented.
enum class FactorForm {
  /// exp{(it/n) H0 - (t^2 gamma^2 / 2n) sum D_i^2 + t gamma sum_i Delta l_i D_i}
  exponential,
  /// The same exponent expanded to second order in the slice: I + Z + (t gamma Y)^2 / 2
  /// with Y = sum_i Delta l_i D_i.
  linear,
};

/// Time-ordered product over one bridge path; slice j = 1 acts first
/// (rightmost factor).
OperatorMatrix path_propagator(const DisorderedHamiltonian& model, double t, const BridgePath& path,
                               FactorForm form = FactorForm::exponential);

/// Mean of path_propagator over `paths` bridges with `steps` slices each.
MatrixEstimate estimate_S_stochastic(const DisorderedHamiltonian& model, double t, int steps, std::int64_t paths,
                                     std::uint64_t seed, FactorForm form = FactorForm::exponential);

/// Euler-Maruyama for dX = (i t H0 ds + t gamma sum_i D_i dz_i) X with the
/// bridge drift dz = -z/(1-s) ds + dW. The last step pins z to zero.
MatrixEstimate estimate_S_sde(const DisorderedHamiltonian& model, double t, int steps, std::int64_t paths,
                              std::uint64_t seed);

}  // namespace disavg

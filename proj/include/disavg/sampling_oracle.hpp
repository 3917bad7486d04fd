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
#include "disavg/estimates.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace disavg {

/// Disorder vector number `index` of the stream family `seed`: m i.i.d.
/// N(0, gamma^2) entries.
RealVector disorder_sample(const DisorderedHamiltonian& model, std::uint64_t seed, std::uint64_t index);

/// The first `count` disorder vectors of the family `seed`.
std::vector<RealVector> sample_disorder(const DisorderedHamiltonian& model, std::int64_t count, std::uint64_t seed);

/// E_x[e^{i t H(x)}]
MatrixEstimate estimate_propagator(const DisorderedHamiltonian& model, double t, std::int64_t samples,
                                   std::uint64_t seed);

/// (1/N) E_x[tr e^{i t H(x)}]
ScalarEstimate estimate_trace_x(const DisorderedHamiltonian& model, double t, std::int64_t samples,
                                std::uint64_t seed);

/// Same estimator on a whole time grid; each disorder sample is diagonalised
/// once.
TimeSeries estimate_trace_x(const DisorderedHamiltonian& model, const Eigen::ArrayXd& times,
                            std::int64_t samples, std::uint64_t seed);

/// (1/N^2) E_x[|tr e^{i t H(x)}|^2]
ScalarEstimate estimate_sff(const DisorderedHamiltonian& model, double t, std::int64_t samples,
                            std::uint64_t seed);

TimeSeries estimate_sff(const DisorderedHamiltonian& model, const Eigen::ArrayXd& times, std::int64_t samples,
                        std::uint64_t seed);

/// E_x[e^{-i t H} |psi0><psi0| e^{i t H}]; psi0 must have unit norm (1e-12).
MatrixEstimate estimate_density(const DisorderedHamiltonian& model, double t, const ComplexVector& psi0,
                                std::int64_t samples, std::uint64_t seed);

}  // namespace disavg

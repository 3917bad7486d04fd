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

#include "disavg/operator_algebra.hpp"

#include <cstddef>
#include <vector>

namespace disavg {

/// H(x) = H0 + sum_j x_j D_j with x_j ~ N(0, gamma^2) i.i.d.
class DisorderedHamiltonian {
 public:
  /// Validates Hermiticity (1e-12), equal dimensions and gamma >= 0.
  DisorderedHamiltonian(OperatorMatrix h0, std::vector<OperatorMatrix> disorder_ops, double gamma);

  const OperatorMatrix& h0() const noexcept { return h0_; }
  const std::vector<OperatorMatrix>& disorder_ops() const noexcept { return disorder_ops_; }
  double gamma() const noexcept { return gamma_; }
  Eigen::Index dim() const noexcept { return h0_.rows(); }
  std::size_t terms() const noexcept { return disorder_ops_.size(); }

  /// sum_j D_j^2
  OperatorMatrix disorder_square_sum() const;

  DisorderedHamiltonian with_gamma(double gamma) const;

 private:
  OperatorMatrix h0_;
  std::vector<OperatorMatrix> disorder_ops_;
  double gamma_;
};

/// Periodic 1D tight-binding chain, H0 = 2I - sum_j (|j+1><j| + |j><j+1|),
/// with one site projector per disorder term.
DisorderedHamiltonian build_anderson(int sites, double gamma);

OperatorMatrix sample_hamiltonian(const DisorderedHamiltonian& model, const RealVector& x);

/// K = i t H0 - (gamma^2 t^2 / 2) sum_j D_j^2
OperatorMatrix diffusive_generator(const DisorderedHamiltonian& model, double t);

/// Model on `copies` tensor copies with alternating signs: every operator O
/// becomes sum_c (-1)^{c+1} I x ... x O (slot c) x ... x I. The same disorder
/// vector drives all copies. Only 2 and 4 copies are supported.
DisorderedHamiltonian build_copies(const DisorderedHamiltonian& model, int copies);

/// Sparse form of diffusive_generator(build_copies(model, copies), t), built
/// without forming any dense matrix of the copied dimension.
SparseOperator sparse_copy_generator(const DisorderedHamiltonian& model, int copies, double t);

/// Permutation |a1 a2 ... ac> -> |ac a1 ... a(c-1)>.
OperatorMatrix swap_cycle_operator(int sites, int copies);

/// Flat index of the product basis state |a1 ... ac> (zero-based labels).
Eigen::Index product_index(int sites, std::span<const int> labels);

}  // namespace disavg

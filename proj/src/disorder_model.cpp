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

#include "disavg/disorder_model.hpp"

#include "disavg/errors.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace disavg {
namespace {

constexpr double kHermitianTol = 1e-12;

int checked_copies(int copies) {
  if (copies != 2 && copies != 4) {
    throw Unsupported("build_copies: only 2 or 4 copies are supported, got " + std::to_string(copies));
  }
  return copies;
}

double copy_sign(int slot) { return slot % 2 == 0 ? 1.0 : -1.0; }

// sum_c (-1)^{c+1} I x ... x op (slot c) x ... x I
OperatorMatrix embed_alternating(const OperatorMatrix& op, int copies) {
  const Eigen::Index n = op.rows();
  const OperatorMatrix id = OperatorMatrix::Identity(n, n);
  Eigen::Index total = 1;
  for (int c = 0; c < copies; ++c) total *= n;
  OperatorMatrix out = OperatorMatrix::Zero(total, total);
  std::vector<OperatorMatrix> factors(static_cast<std::size_t>(copies), id);
  for (int c = 0; c < copies; ++c) {
    factors[static_cast<std::size_t>(c)] = op;
    out += copy_sign(c) * kron(std::span<const OperatorMatrix>(factors));
    factors[static_cast<std::size_t>(c)] = id;
  }
  return out;
}

SparseOperator sparse_identity(Eigen::Index n) {
  SparseOperator id(n, n);
  id.setIdentity();
  return id;
}

SparseOperator sparse_embed_alternating(const SparseOperator& op, int copies) {
  const Eigen::Index n = op.rows();
  const SparseOperator id = sparse_identity(n);
  SparseOperator out;
  for (int c = 0; c < copies; ++c) {
    SparseOperator term = c == 0 ? op : id;
    for (int k = 1; k < copies; ++k) term = sparse_kron(term, k == c ? op : id);
    if (c == 0) {
      out = term;
    } else {
      out = out + copy_sign(c) * term;
    }
  }
  out.makeCompressed();
  return out;
}

}  // namespace

DisorderedHamiltonian::DisorderedHamiltonian(OperatorMatrix h0, std::vector<OperatorMatrix> disorder_ops,
                                             double gamma)
    : h0_(std::move(h0)), disorder_ops_(std::move(disorder_ops)), gamma_(gamma) {
  if (h0_.rows() < 1 || h0_.rows() != h0_.cols()) {
    throw InvalidInput("DisorderedHamiltonian: h0 must be a non-empty square matrix");
  }
  if (!(gamma_ >= 0.0) || !std::isfinite(gamma_)) {
    throw InvalidInput("DisorderedHamiltonian: gamma must be finite and non-negative");
  }
  if (hermiticity_defect(h0_) > kHermitianTol) throw InvalidInput("DisorderedHamiltonian: h0 is not Hermitian");
  for (const auto& d : disorder_ops_) {
    if (d.rows() != h0_.rows() || d.cols() != h0_.cols()) {
      throw InvalidInput("DisorderedHamiltonian: disorder operator dimension mismatch");
    }
    if (hermiticity_defect(d) > kHermitianTol) {
      throw InvalidInput("DisorderedHamiltonian: disorder operator is not Hermitian");
    }
  }
}

OperatorMatrix DisorderedHamiltonian::disorder_square_sum() const {
  OperatorMatrix out = OperatorMatrix::Zero(dim(), dim());
  for (const auto& d : disorder_ops_) out.noalias() += d * d;
  return out;
}

DisorderedHamiltonian DisorderedHamiltonian::with_gamma(double gamma) const {
  return DisorderedHamiltonian(h0_, disorder_ops_, gamma);
}

DisorderedHamiltonian build_anderson(int sites, double gamma) {
  if (sites < 2) throw InvalidInput("build_anderson: need at least 2 sites");
  OperatorMatrix h0 = 2.0 * OperatorMatrix::Identity(sites, sites);
  for (int j = 0; j < sites; ++j) {
    const int next = (j + 1) % sites;
    h0(next, j) -= 1.0;
    h0(j, next) -= 1.0;
  }
  std::vector<OperatorMatrix> ops;
  ops.reserve(static_cast<std::size_t>(sites));
  for (int j = 0; j < sites; ++j) {
    OperatorMatrix d = OperatorMatrix::Zero(sites, sites);
    d(j, j) = 1.0;
    ops.push_back(std::move(d));
  }
  return DisorderedHamiltonian(std::move(h0), std::move(ops), gamma);
}

OperatorMatrix sample_hamiltonian(const DisorderedHamiltonian& model, const RealVector& x) {
  if (static_cast<std::size_t>(x.size()) != model.terms()) {
    throw InvalidInput("sample_hamiltonian: disorder vector length does not match the number of terms");
  }
  OperatorMatrix h = model.h0();
  for (std::size_t j = 0; j < model.terms(); ++j) h += x(static_cast<Eigen::Index>(j)) * model.disorder_ops()[j];
  return h;
}

OperatorMatrix diffusive_generator(const DisorderedHamiltonian& model, double t) {
  const double g = model.gamma();
  return Complex(0.0, t) * model.h0() - (0.5 * g * g * t * t) * model.disorder_square_sum();
}

DisorderedHamiltonian build_copies(const DisorderedHamiltonian& model, int copies) {
  checked_copies(copies);
  std::vector<OperatorMatrix> ops;
  ops.reserve(model.terms());
  for (const auto& d : model.disorder_ops()) ops.push_back(embed_alternating(d, copies));
  return DisorderedHamiltonian(embed_alternating(model.h0(), copies), std::move(ops), model.gamma());
}

SparseOperator sparse_copy_generator(const DisorderedHamiltonian& model, int copies, double t) {
  checked_copies(copies);
  const double g = model.gamma();
  SparseOperator out = Complex(0.0, t) * sparse_embed_alternating(to_sparse(model.h0()), copies);
  for (const auto& d : model.disorder_ops()) {
    const SparseOperator embedded = sparse_embed_alternating(to_sparse(d), copies);
    const SparseOperator square = embedded * embedded;
    out = out - Complex(0.5 * g * g * t * t) * square;
  }
  out.prune(Complex(0.0, 0.0), 0.0);
  out.makeCompressed();
  return out;
}

OperatorMatrix swap_cycle_operator(int sites, int copies) {
  if (sites < 1) throw InvalidInput("swap_cycle_operator: sites must be positive");
  if (copies < 2) throw InvalidInput("swap_cycle_operator: need at least 2 copies");
  Eigen::Index dim = 1;
  for (int c = 0; c < copies; ++c) dim *= sites;
  OperatorMatrix p = OperatorMatrix::Zero(dim, dim);
  std::vector<int> labels(static_cast<std::size_t>(copies));
  std::vector<int> shifted(labels.size());
  for (Eigen::Index idx = 0; idx < dim; ++idx) {
    Eigen::Index rest = idx;
    for (int c = copies - 1; c >= 0; --c) {
      labels[static_cast<std::size_t>(c)] = static_cast<int>(rest % sites);
      rest /= sites;
    }
    shifted[0] = labels.back();
    for (std::size_t c = 1; c < labels.size(); ++c) shifted[c] = labels[c - 1];
    p(product_index(sites, shifted), idx) = 1.0;
  }
  return p;
}

Eigen::Index product_index(int sites, std::span<const int> labels) {
  Eigen::Index idx = 0;
  for (int a : labels) {
    if (a < 0 || a >= sites) throw InvalidInput("product_index: label out of range");
    idx = idx * sites + a;
  }
  return idx;
}

}  // namespace disavg

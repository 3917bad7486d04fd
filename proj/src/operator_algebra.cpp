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

#include "disavg/operator_algebra.hpp"

#include "disavg/errors.hpp"

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace disavg {
namespace {

bool all_finite(const OperatorMatrix& m) {
  return m.array().real().allFinite() && m.array().imag().allFinite();
}

// e^{Y} for 2x2 Y: with Y = a I + M and tr M = 0 we have M^2 = q^2 I.
OperatorMatrix expm_2x2(const OperatorMatrix& y) {
  const Complex a = 0.5 * (y(0, 0) + y(1, 1));
  OperatorMatrix traceless = y;
  traceless(0, 0) -= a;
  traceless(1, 1) -= a;
  const Complex q2 = traceless(0, 0) * traceless(0, 0) + traceless(0, 1) * traceless(1, 0);
  const Complex q = std::sqrt(q2);
  Complex cosh_q;
  Complex sinhc_q;  // sinh(q) / q
  if (std::abs(q) < 1e-3) {
    cosh_q = 1.0 + q2 / 2.0 + q2 * q2 / 24.0 + q2 * q2 * q2 / 720.0;
    sinhc_q = 1.0 + q2 / 6.0 + q2 * q2 / 120.0 + q2 * q2 * q2 / 5040.0;
  } else {
    cosh_q = std::cosh(q);
    sinhc_q = std::sinh(q) / q;
  }
  OperatorMatrix out = sinhc_q * traceless;
  out(0, 0) += cosh_q;
  out(1, 1) += cosh_q;
  return std::exp(a) * out;
}

OperatorMatrix spectral_exp_hermitian(const OperatorMatrix& h, Complex scale) {
  Eigen::SelfAdjointEigenSolver<OperatorMatrix> solver(h);
  const Eigen::VectorXcd phases =
      (scale * solver.eigenvalues().cast<Complex>()).array().exp().matrix();
  return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

}  // namespace

OperatorMatrix kron(std::span<const OperatorMatrix> factors) {
  if (factors.empty()) throw InvalidInput("kron: empty factor list");
  OperatorMatrix out = factors.front();
  for (const auto& f : factors.subspan(1)) out = kron(out, f);
  return out;
}

SparseOperator sparse_kron(const SparseOperator& a, const SparseOperator& b) {
  SparseOperator out = Eigen::kroneckerProduct(a, b);
  out.makeCompressed();
  return out;
}

bool is_normal(const OperatorMatrix& m, double tol) {
  const double scale = m.squaredNorm();
  if (scale == 0.0) return true;
  const OperatorMatrix commutator = m * m.adjoint() - m.adjoint() * m;
  return commutator.norm() <= tol * scale;
}

OperatorMatrix expm(const OperatorMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidInput("expm: matrix is not square");
  if (!all_finite(m)) throw InvalidInput("expm: non-finite entries");
  const Eigen::Index n = m.rows();
  if (n == 0) return m;
  if (n == 1) return OperatorMatrix::Constant(1, 1, std::exp(m(0, 0)));
  if (n == 2) return expm_2x2(m);

  if (is_normal(m)) {
    // Strip the trace so the common "anti-Hermitian plus multiple of the
    // identity" generator lands on the Hermitian solver.
    const Complex shift = m.trace() / static_cast<double>(n);
    OperatorMatrix rest = m;
    rest.diagonal().array() -= shift;
    const double scale = std::max(1.0, rest.cwiseAbs().maxCoeff());
    if (hermiticity_defect(rest) <= 1e-14 * scale) {
      return std::exp(shift) * spectral_exp_hermitian(rest, 1.0);
    }
    if (anti_hermiticity_defect(rest) <= 1e-14 * scale) {
      return std::exp(shift) * spectral_exp_hermitian(OperatorMatrix(-kI * rest), kI);
    }
    Eigen::ComplexSchur<OperatorMatrix> schur(m);
    const auto& u = schur.matrixU();
    const Eigen::VectorXcd diag = schur.matrixT().diagonal().array().exp().matrix();
    return u * diag.asDiagonal() * u.adjoint();
  }
  return m.exp();
}

OperatorMatrix exp_i_hermitian(const OperatorMatrix& h, double t) {
  return spectral_exp_hermitian(h, Complex(0.0, t));
}

ComplexVector apply_expm(const SparseOperator& m, const ComplexVector& v, double tol) {
  if (m.rows() != m.cols()) throw InvalidInput("apply_expm: operator is not square");
  if (m.rows() != v.size()) throw InvalidInput("apply_expm: dimension mismatch");
  if (!(tol > 0.0)) throw InvalidInput("apply_expm: tolerance must be positive");
  const Eigen::Index n = m.rows();
  if (n == 0) return v;

  const Complex shift = m.diagonal().sum() / static_cast<double>(n);
  SparseOperator a = m;
  for (Eigen::Index i = 0; i < n; ++i) a.coeffRef(i, i) -= shift;
  a.makeCompressed();

  Eigen::VectorXd column_sums = Eigen::VectorXd::Zero(n);
  for (Eigen::Index r = 0; r < a.outerSize(); ++r) {
    for (SparseOperator::InnerIterator it(a, r); it; ++it) column_sums(it.col()) += std::abs(it.value());
  }
  const double norm1 = column_sums.maxCoeff();
  if (!std::isfinite(norm1)) throw InvalidInput("apply_expm: non-finite operator");

  constexpr double kStepNorm = 2.0;
  constexpr int kMaxTerms = 80;
  const auto steps = std::max<long>(1, static_cast<long>(std::ceil(norm1 / kStepNorm)));
  const double step_tol = std::max(tol / static_cast<double>(steps), 1e-17);
  const Complex step_phase = std::exp(shift / static_cast<double>(steps));

  ComplexVector f = v;
  ComplexVector term(n);
  for (long s = 0; s < steps; ++s) {
    term = f;
    ComplexVector acc = f;
    double previous = term.lpNorm<Eigen::Infinity>();
    bool converged = false;
    double residual = 0.0;
    for (int k = 1; k <= kMaxTerms; ++k) {
      term = (a * term) / (static_cast<double>(k) * static_cast<double>(steps));
      acc += term;
      const double current = term.lpNorm<Eigen::Infinity>();
      const double reference = acc.lpNorm<Eigen::Infinity>();
      residual = reference > 0.0 ? (current + previous) / reference : current + previous;
      if (!std::isfinite(residual)) break;
      if (residual <= step_tol) {
        converged = true;
        break;
      }
      previous = current;
    }
    if (!converged) {
      throw ConvergenceError("apply_expm: Taylor series did not converge (residual " +
                                 std::to_string(residual) + ")",
                             residual);
    }
    f = step_phase * acc;
  }
  return f;
}

SparseOperator sparse_from_entries(Eigen::Index dim, std::span<const SparseEntry> entries) {
  if (dim < 1) throw InvalidInput("sparse_from_entries: dimension must be positive");
  std::vector<std::pair<Eigen::Index, Eigen::Index>> keys;
  keys.reserve(entries.size());
  std::vector<Eigen::Triplet<Complex>> triplets;
  triplets.reserve(entries.size());
  for (const auto& e : entries) {
    if (e.row < 0 || e.row >= dim || e.col < 0 || e.col >= dim) {
      throw InvalidInput("sparse_from_entries: index out of range");
    }
    keys.emplace_back(e.row, e.col);
    triplets.emplace_back(e.row, e.col, e.value);
  }
  std::sort(keys.begin(), keys.end());
  if (std::adjacent_find(keys.begin(), keys.end()) != keys.end()) {
    throw InvalidInput("sparse_from_entries: duplicate (row, col) entry");
  }
  SparseOperator out(dim, dim);
  out.setFromTriplets(triplets.begin(), triplets.end());
  out.makeCompressed();
  return out;
}

std::vector<SparseEntry> sparse_entries(const SparseOperator& m) {
  std::vector<SparseEntry> out;
  out.reserve(static_cast<std::size_t>(m.nonZeros()));
  for (Eigen::Index r = 0; r < m.outerSize(); ++r) {
    for (SparseOperator::InnerIterator it(m, r); it; ++it) {
      out.push_back({it.row(), it.col(), it.value()});
    }
  }
  return out;
}

SparseOperator to_sparse(const OperatorMatrix& m) {
  std::vector<Eigen::Triplet<Complex>> triplets;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (m(i, j) != Complex(0.0, 0.0)) triplets.emplace_back(i, j, m(i, j));
    }
  }
  SparseOperator out(m.rows(), m.cols());
  out.setFromTriplets(triplets.begin(), triplets.end());
  out.makeCompressed();
  return out;
}

OperatorMatrix to_dense(const SparseOperator& m) { return OperatorMatrix(m); }

}  // namespace disavg

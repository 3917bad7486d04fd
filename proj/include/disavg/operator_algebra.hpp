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

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <complex>
#include <span>
#include <vector>

namespace disavg {

using Complex = std::complex<double>;
using OperatorMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using SparseOperator = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

inline constexpr Complex kI{0.0, 1.0};

/// Largest entry of |M - M^dagger|.
template <typename Derived>
double hermiticity_defect(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

/// Largest entry of |M + M^dagger|.
template <typename Derived>
double anti_hermiticity_defect(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0.0;
  return (m + m.adjoint()).cwiseAbs().maxCoeff();
}

/// Kronecker product of two dense factors; the left factor indexes the
/// most significant digit of the product basis.
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> kron(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Result = Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Result out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// Kronecker product of an ordered list of factors. Throws InvalidInput on an
/// empty list.
OperatorMatrix kron(std::span<const OperatorMatrix> factors);

/// Sparse Kronecker product, same ordering convention as the dense one.
SparseOperator sparse_kron(const SparseOperator& a, const SparseOperator& b);

/// True when ||M M^dagger - M^dagger M||_F <= tol * ||M||_F^2.
bool is_normal(const OperatorMatrix& m, double tol = 1e-12);

/// Matrix exponential. Normal inputs go through an exact unitary
/// diagonalisation; everything else through scaling and squaring with a Pade
/// approximant. Throws InvalidInput on non-finite entries.
OperatorMatrix expm(const OperatorMatrix& m);

/// e^{i t H} for Hermitian H via its spectral decomposition.
OperatorMatrix exp_i_hermitian(const OperatorMatrix& h, double t);

/// e^{M} v without densifying M. Truncated Taylor series with scaling and a
/// trace shift; the result has relative error <= tol. Throws ConvergenceError
/// if a step fails to converge within the term cap.
ComplexVector apply_expm(const SparseOperator& m, const ComplexVector& v, double tol = 1e-12);

struct SparseEntry {
  Eigen::Index row;
  Eigen::Index col;
  Complex value;
};

/// Builds a sparse operator from coordinate triplets. Rejects out-of-range
/// indices and duplicated (row, col) pairs.
SparseOperator sparse_from_entries(Eigen::Index dim, std::span<const SparseEntry> entries);

/// Nonzero entries in row-major order.
std::vector<SparseEntry> sparse_entries(const SparseOperator& m);

SparseOperator to_sparse(const OperatorMatrix& m);
OperatorMatrix to_dense(const SparseOperator& m);

}  // namespace disavg

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

#include "disavg/dyson_series.hpp"

#include "disavg/errors.hpp"
#include "disavg/quadrature.hpp"

#include <cmath>
#include <vector>

namespace disavg {
namespace {

void check_density_matrix(const OperatorMatrix& rho, Eigen::Index dim) {
  if (rho.rows() != dim || rho.cols() != dim) throw InvalidInput("lindblad_evolve: rho0 dimension mismatch");
  if (hermiticity_defect(rho) > 1e-10) throw InvalidInput("lindblad_evolve: rho0 is not Hermitian");
  if (std::abs(rho.trace() - Complex(1.0, 0.0)) > 1e-10) throw InvalidInput("lindblad_evolve: rho0 trace is not 1");
  const OperatorMatrix herm = 0.5 * (rho + rho.adjoint());
  const double min_eig = Eigen::SelfAdjointEigenSolver<OperatorMatrix>(herm, Eigen::EigenvaluesOnly).eigenvalues()(0);
  if (min_eig < -1e-10) throw InvalidInput("lindblad_evolve: rho0 is not positive semidefinite");
}

OperatorMatrix lindblad_apply(const DisorderedHamiltonian& model, double t, const OperatorMatrix& x) {
  const double rate = model.gamma() * model.gamma() * t * t;
  OperatorMatrix out = Complex(0.0, -t) * (model.h0() * x - x * model.h0());
  for (const auto& d : model.disorder_ops()) {
    const OperatorMatrix d2 = d * d;
    out += rate * (d * x * d - 0.5 * (d2 * x + x * d2));
  }
  return out;
}

}  // namespace

OperatorMatrix diffusive_propagator(const DisorderedHamiltonian& model, double t) {
  return expm(diffusive_generator(model, t));
}

OperatorMatrix second_order_propagator(const DisorderedHamiltonian& model, double t, int quad_nodes) {
  if (quad_nodes < 2) throw InvalidInput("second_order_propagator: need at least 2 quadrature nodes");
  const OperatorMatrix k = diffusive_generator(model, t);
  const OperatorMatrix ek = expm(k);
  const double g2t2 = model.gamma() * model.gamma() * t * t;
  const Eigen::Index dim = model.dim();
  if (g2t2 == 0.0 || model.terms() == 0) return ek;

  const QuadratureRule rule = gauss_legendre(quad_nodes, 0.0, 1.0);
  const Eigen::Index q = rule.nodes.size();
  OperatorMatrix ordered = OperatorMatrix::Zero(dim, dim);  // sum_i int int_{s2<s1} D(s2) D(s1)
  OperatorMatrix squares = OperatorMatrix::Zero(dim, dim);  // sum_i int D(s)^2

  if (is_normal(k)) {
    // In the eigenbasis of K, D(s)_ab = D_ab e^{s(l_a - l_b)}, so the inner
    // integral is D times a kernel shared by every disorder term.
    const Eigen::ComplexSchur<OperatorMatrix> schur(k);
    const OperatorMatrix& basis = schur.matrixU();
    const Eigen::ArrayXcd lambda = schur.matrixT().diagonal().array();
    std::vector<OperatorMatrix> ops;
    ops.reserve(model.terms());
    for (const auto& d : model.disorder_ops()) ops.push_back(basis.adjoint() * d * basis);

    Eigen::ArrayXXcd kernel(dim, dim);
    Eigen::ArrayXXcd outer(dim, dim);
    for (Eigen::Index a = 0; a < q; ++a) {
      const double s1 = rule.nodes(a);
      kernel.setZero();
      for (Eigen::Index b = 0; b < q; ++b) {
        const Eigen::ArrayXcd phase = (s1 * rule.nodes(b) * lambda).exp();
        kernel += rule.weights(b) * (phase.matrix() * phase.inverse().matrix().transpose()).array();
      }
      const Eigen::ArrayXcd phase = (s1 * lambda).exp();
      outer = (phase.matrix() * phase.inverse().matrix().transpose()).array();
      for (const auto& d : ops) {
        const OperatorMatrix d1 = (d.array() * outer).matrix();
        const OperatorMatrix inner = (d.array() * kernel).matrix();
        ordered.noalias() += (rule.weights(a) * s1) * (inner * d1);
        squares.noalias() += rule.weights(a) * (d1 * d1);
      }
    }
    OperatorMatrix correction = OperatorMatrix::Identity(dim, dim) - g2t2 * ordered + (0.5 * g2t2) * squares;
    return ek * (basis * correction * basis.adjoint());
  }

  // General K: explicit exponentials at the outer nodes and at every inner
  // node s1 u_b.
  std::vector<OperatorMatrix> inner(model.terms(), OperatorMatrix(dim, dim));
  for (Eigen::Index a = 0; a < q; ++a) {
    const double s1 = rule.nodes(a);
    for (auto& m : inner) m.setZero();
    for (Eigen::Index b = 0; b < q; ++b) {
      const double s2 = s1 * rule.nodes(b);
      const OperatorMatrix forward = expm(s2 * k);
      const OperatorMatrix backward = expm(-s2 * k);
      for (std::size_t i = 0; i < model.terms(); ++i) {
        inner[i] += rule.weights(b) * (forward * model.disorder_ops()[i] * backward);
      }
    }
    const OperatorMatrix forward = expm(s1 * k);
    const OperatorMatrix backward = expm(-s1 * k);
    for (std::size_t i = 0; i < model.terms(); ++i) {
      const OperatorMatrix d1 = forward * model.disorder_ops()[i] * backward;
      ordered.noalias() += (rule.weights(a) * s1) * (inner[i] * d1);
      squares.noalias() += rule.weights(a) * (d1 * d1);
    }
  }
  return ek * (OperatorMatrix::Identity(dim, dim) - g2t2 * ordered + (0.5 * g2t2) * squares);
}

OperatorMatrix lindblad_superoperator(const DisorderedHamiltonian& model, double t) {
  const Eigen::Index n = model.dim();
  const OperatorMatrix id = OperatorMatrix::Identity(n, n);
  const double rate = model.gamma() * model.gamma() * t * t;
  OperatorMatrix l = Complex(0.0, -t) * (kron(model.h0(), id) - kron(id, model.h0().transpose()));
  for (const auto& d : model.disorder_ops()) {
    const OperatorMatrix d2 = d * d;
    l += rate * (kron(d, d.transpose()) - 0.5 * kron(d2, id) - 0.5 * kron(id, d2.transpose()));
  }
  return l;
}

OperatorMatrix lindblad_evolve(const DisorderedHamiltonian& model, double t, const OperatorMatrix& rho0) {
  const Eigen::Index n = model.dim();
  check_density_matrix(rho0, n);
  OperatorMatrix rho;
  if (n <= kLindbladDenseLimit) {
    const OperatorMatrix propagator = expm(lindblad_superoperator(model, t));
    // Row-major vectorisation of rho0.
    ComplexVector vec(n * n);
    for (Eigen::Index i = 0; i < n; ++i) vec.segment(i * n, n) = rho0.row(i).transpose();
    const ComplexVector out = propagator * vec;
    rho.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) rho.row(i) = out.segment(i * n, n).transpose();
  } else {
    rho = lindblad_evolve_rk4(model, t, rho0);
  }
  return 0.5 * (rho + rho.adjoint());
}

OperatorMatrix lindblad_evolve_rk4(const DisorderedHamiltonian& model, double t, const OperatorMatrix& rho0,
                                   int steps) {
  if (steps < 1) throw InvalidInput("lindblad_evolve_rk4: steps must be positive");
  check_density_matrix(rho0, model.dim());
  const double h = 1.0 / steps;
  OperatorMatrix rho = rho0;
  for (int k = 0; k < steps; ++k) {
    const OperatorMatrix k1 = lindblad_apply(model, t, rho);
    const OperatorMatrix k2 = lindblad_apply(model, t, rho + 0.5 * h * k1);
    const OperatorMatrix k3 = lindblad_apply(model, t, rho + 0.5 * h * k2);
    const OperatorMatrix k4 = lindblad_apply(model, t, rho + h * k3);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return rho;
}

}  // namespace disavg

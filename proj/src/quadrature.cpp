// Copyright 2026 The lyapcert Authors
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

#include "lyap/quadrature.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "lyap/error.hpp"

namespace lyap {

QuadratureRule gauss_jacobi(int n, double a, double b) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "quadrature needs at least one node");
  if (!(a > -1.0 && b > -1.0)) {
    throw Error(ErrorCode::DomainViolation, "Gauss-Jacobi exponents must exceed -1");
  }

  // Three-term recurrence of the orthonormal Jacobi polynomials.
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(n > 1 ? n - 1 : 0);
  const double ab = a + b;
  for (int k = 0; k < n; ++k) {
    const double two_k_ab = 2.0 * k + ab;
    if (k == 0) {
      diag(0) = (b - a) / (ab + 2.0);
    } else {
      diag(k) = (b * b - a * a) / (two_k_ab * (two_k_ab + 2.0));
    }
  }
  for (int k = 1; k < n; ++k) {
    const double two_k_ab = 2.0 * k + ab;
    double beta = 0.0;
    if (k == 1) {
      // (k + a + b) cancels against (2k + a + b - 1); avoids 0/0 at a + b = -1.
      beta = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      beta = 4.0 * k * (k + a) * (k + b) * (k + ab) /
             (two_k_ab * two_k_ab * (two_k_ab + 1.0) * (two_k_ab - 1.0));
    }
    sub(k - 1) = std::sqrt(beta);
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NoConvergence, "Gauss-Jacobi: tridiagonal eigensolver failed");
  }

  const double log_mass = (ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) +
                          std::lgamma(b + 1.0) - std::lgamma(ab + 2.0);
  const double mass = std::exp(log_mass);

  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int k = 0; k < n; ++k) {
    rule.nodes[k] = solver.eigenvalues()(k);
    const double v0 = solver.eigenvectors()(0, k);
    rule.weights[k] = mass * v0 * v0;
  }
  return rule;
}

QuadratureRule gauss_legendre(int n, double lo, double hi) {
  QuadratureRule rule = gauss_jacobi(n, 0.0, 0.0);
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  for (std::size_t k = 0; k < rule.size(); ++k) {
    rule.nodes[k] = mid + half * rule.nodes[k];
    rule.weights[k] *= half;
  }
  return rule;
}

}  // namespace lyap

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

#pragma once

// Dense complex-matrix kernels: Hermitian eigendecomposition by cyclic Jacobi
// rotations, spectral matrix functions, and the weighted Sylvester solver
//
//     s * X * rho + rho * X = delta,     rho > 0, s in [0, 1],
//
// solved in the eigenbasis of rho.

#include <complex>
#include <functional>
#include <limits>

#include <Eigen/Dense>

namespace lyap {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kHermitianTolerance = 1e-12;
/// Smallest admissible eigenvalue of rho in the Sylvester/Lyapunov solvers.
inline constexpr double kRankTolerance = 1e-12;
inline constexpr double kJacobiOffDiagonalTolerance = 1e-13;
inline constexpr int kJacobiMaxSweeps = 100;

/// ||M - M^dagger||_F / max(1, ||M||_F).
double hermiticity_defect(const ComplexMatrix& m);
ComplexMatrix hermitian_part(const ComplexMatrix& m);
bool all_finite(const ComplexMatrix& m);

/// Throws InvalidDimension unless m is square and non-empty.
void require_square(const ComplexMatrix& m, const char* what);
/// Throws DimensionMismatch unless both are square of the same size.
void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* what);

struct HermitianEigen {
  RealVector eigenvalues;  // ascending
  ComplexMatrix unitary;   // columns are the eigenvectors

  Index dim() const { return eigenvalues.size(); }
  ComplexMatrix reconstruct() const;
  ComplexMatrix to_eigenbasis(const ComplexMatrix& x) const;
  ComplexMatrix from_eigenbasis(const ComplexMatrix& x) const;
};

/// Cyclic Jacobi. Throws NotHermitian, NoConvergence.
HermitianEigen hermitian_eig(const ComplexMatrix& m);

/// Admissible spectrum for a matrix function. Eigenvalues below a closed
/// lower bound by less than kDomainTolerance are clamped onto it; an open
/// bound admits no tolerance.
struct SpectralDomain {
  static constexpr double kDomainTolerance = 1e-12;

  double lower = -std::numeric_limits<double>::infinity();
  bool open = false;

  static SpectralDomain all() { return {}; }
  static SpectralDomain nonnegative() { return {0.0, false}; }
  static SpectralDomain positive() { return {0.0, true}; }
};

using ScalarFunction = std::function<double(double)>;

ComplexMatrix matrix_function(const ComplexMatrix& m, const ScalarFunction& f,
                              SpectralDomain domain = SpectralDomain::all());
ComplexMatrix matrix_function(const HermitianEigen& eig, const ScalarFunction& f,
                              SpectralDomain domain = SpectralDomain::all());

/// Eigendecomposition of a positive-definite rho, reused across solves of
///     s * X * rho + rho * X = delta.
/// In the eigenbasis X'_ij = delta'_ij / (lambda_i + s * lambda_j).
class SpectralSylvester {
 public:
  explicit SpectralSylvester(const ComplexMatrix& rho, double min_eigenvalue = kRankTolerance);

  ComplexMatrix solve(const ComplexMatrix& delta, double s) const;
  /// The same solve with delta and the result expressed in rho's eigenbasis.
  ComplexMatrix solve_in_eigenbasis(const ComplexMatrix& delta_eig, double s) const;

  const HermitianEigen& eigen() const { return eig_; }
  Index dim() const { return eig_.dim(); }
  double min_eigenvalue() const { return eig_.eigenvalues(0); }

 private:
  HermitianEigen eig_;
};

ComplexMatrix solve_sylvester_weighted(const ComplexMatrix& rho, const ComplexMatrix& delta,
                                       double s, double min_eigenvalue = kRankTolerance);

/// rho_inf * G + G * rho_inf = delta, G Hermitian. delta must be Hermitian.
ComplexMatrix solve_lyapunov_bures(const ComplexMatrix& rho_inf, const ComplexMatrix& delta,
                                   double min_eigenvalue = kRankTolerance);

// Column-stacking vectorization: vec(A X B) = (B^T kron A) vec(X).
ComplexVector vectorize(const ComplexMatrix& m);
ComplexMatrix devectorize(const ComplexVector& v, Index dim);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Sum of absolute eigenvalues of a Hermitian matrix.
double trace_norm(const ComplexMatrix& hermitian);

}  // namespace lyap

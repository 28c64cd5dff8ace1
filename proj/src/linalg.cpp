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

#include "lyap/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include <unsupported/Eigen/KroneckerProduct>

#include "lyap/error.hpp"

namespace lyap {

double hermiticity_defect(const ComplexMatrix& m) {
  return (m - m.adjoint()).norm() / std::max(1.0, m.norm());
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

bool all_finite(const ComplexMatrix& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    }
  }
  return true;
}

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    std::ostringstream os;
    os << what << ": expected a non-empty square matrix, got " << m.rows() << "x" << m.cols();
    throw Error(ErrorCode::InvalidDimension, os.str());
  }
}

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  require_square(a, what);
  require_square(b, what);
  if (a.rows() != b.rows()) {
    std::ostringstream os;
    os << what << ": dimension " << a.rows() << " does not match " << b.rows();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
}

ComplexMatrix HermitianEigen::reconstruct() const {
  return unitary * eigenvalues.cast<Complex>().asDiagonal() * unitary.adjoint();
}

ComplexMatrix HermitianEigen::to_eigenbasis(const ComplexMatrix& x) const {
  return unitary.adjoint() * x * unitary;
}

ComplexMatrix HermitianEigen::from_eigenbasis(const ComplexMatrix& x) const {
  return unitary * x * unitary.adjoint();
}

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      if (i != j) sum += std::norm(a(i, j));
    }
  }
  return std::sqrt(sum);
}

// Annihilates a(p, q) with the unitary Q = diag(1, e^{-i phi}) * R acting on
// the (p, q) plane, where phi = arg a(p, q) and R is the real Jacobi rotation
// of the resulting real symmetric 2x2 block.
void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, Index p, Index q) {
  const Complex apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double zeta = (aqq - app) / (2.0 * mag);
  const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  const Complex phase_conj = std::conj(apq / mag);

  const Complex q00 = c;
  const Complex q01 = s;
  const Complex q10 = -s * phase_conj;
  const Complex q11 = c * phase_conj;

  const Index n = a.rows();
  for (Index k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * q00 + akq * q10;
    a(k, q) = akp * q01 + akq * q11;
  }
  for (Index k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = std::conj(q00) * apk + std::conj(q10) * aqk;
    a(q, k) = std::conj(q01) * apk + std::conj(q11) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();
  for (Index k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = vkp * q00 + vkq * q10;
    v(k, q) = vkp * q01 + vkq * q11;
  }
}

}  // namespace

HermitianEigen hermitian_eig(const ComplexMatrix& m) {
  require_square(m, "hermitian_eig");
  if (!all_finite(m)) throw Error(ErrorCode::InvalidArgument, "hermitian_eig: non-finite entries");
  const double defect = hermiticity_defect(m);
  if (defect > kHermitianTolerance) {
    std::ostringstream os;
    os << "hermitian_eig: relative Hermiticity defect " << defect;
    throw Error(ErrorCode::NotHermitian, os.str());
  }

  const Index n = m.rows();
  ComplexMatrix a = hermitian_part(m);
  ComplexMatrix v = ComplexMatrix::Identity(n, n);
  const double threshold = kJacobiOffDiagonalTolerance * a.norm();

  int sweeps = 0;
  while (off_diagonal_norm(a) > threshold) {
    if (sweeps == kJacobiMaxSweeps) {
      throw Error(ErrorCode::NoConvergence, "hermitian_eig: Jacobi sweep budget exhausted");
    }
    for (Index p = 0; p + 1 < n; ++p) {
      for (Index q = p + 1; q < n; ++q) jacobi_rotate(a, v, p, q);
    }
    ++sweeps;
  }

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index i, Index j) { return a(i, i).real() < a(j, j).real(); });

  HermitianEigen out;
  out.eigenvalues.resize(n);
  out.unitary.resize(n, n);
  for (Index k = 0; k < n; ++k) {
    out.eigenvalues(k) = a(order[k], order[k]).real();
    out.unitary.col(k) = v.col(order[k]);
  }
  return out;
}

ComplexMatrix matrix_function(const ComplexMatrix& m, const ScalarFunction& f,
                              SpectralDomain domain) {
  return matrix_function(hermitian_eig(m), f, domain);
}

ComplexMatrix matrix_function(const HermitianEigen& eig, const ScalarFunction& f,
                              SpectralDomain domain) {
  RealVector values(eig.dim());
  for (Index i = 0; i < eig.dim(); ++i) {
    double lambda = eig.eigenvalues(i);
    const bool outside = domain.open ? !(lambda > domain.lower)
                                     : lambda < domain.lower - SpectralDomain::kDomainTolerance;
    if (outside) {
      std::ostringstream os;
      os << "matrix_function: eigenvalue " << lambda << " outside the domain "
         << (domain.open ? "(" : "[") << domain.lower << ", inf)";
      throw Error(ErrorCode::DomainViolation, os.str());
    }
    if (!domain.open) lambda = std::max(lambda, domain.lower);
    values(i) = f(lambda);
  }
  return hermitian_part(eig.unitary * values.cast<Complex>().asDiagonal() * eig.unitary.adjoint());
}

SpectralSylvester::SpectralSylvester(const ComplexMatrix& rho, double min_eigenvalue)
    : eig_(hermitian_eig(rho)) {
  if (!(eig_.eigenvalues(0) > min_eigenvalue)) {
    std::ostringstream os;
    os << "smallest eigenvalue " << eig_.eigenvalues(0) << " is not above " << min_eigenvalue;
    throw Error(ErrorCode::SingularRho, os.str());
  }
}

ComplexMatrix SpectralSylvester::solve_in_eigenbasis(const ComplexMatrix& delta_eig,
                                                     double s) const {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw Error(ErrorCode::DomainViolation, "Sylvester weight s must lie in [0, 1]");
  }
  if (delta_eig.rows() != dim() || delta_eig.cols() != dim()) {
    throw Error(ErrorCode::DimensionMismatch, "Sylvester right-hand side has the wrong size");
  }
  const RealVector& lambda = eig_.eigenvalues;
  ComplexMatrix out(dim(), dim());
  for (Index j = 0; j < dim(); ++j) {
    for (Index i = 0; i < dim(); ++i) out(i, j) = delta_eig(i, j) / (lambda(i) + s * lambda(j));
  }
  return out;
}

ComplexMatrix SpectralSylvester::solve(const ComplexMatrix& delta, double s) const {
  return eig_.from_eigenbasis(solve_in_eigenbasis(eig_.to_eigenbasis(delta), s));
}

ComplexMatrix solve_sylvester_weighted(const ComplexMatrix& rho, const ComplexMatrix& delta,
                                       double s, double min_eigenvalue) {
  require_same_dim(rho, delta, "solve_sylvester_weighted");
  return SpectralSylvester(rho, min_eigenvalue).solve(delta, s);
}

ComplexMatrix solve_lyapunov_bures(const ComplexMatrix& rho_inf, const ComplexMatrix& delta,
                                   double min_eigenvalue) {
  require_same_dim(rho_inf, delta, "solve_lyapunov_bures");
  if (hermiticity_defect(delta) > kHermitianTolerance) {
    throw Error(ErrorCode::NotHermitian, "solve_lyapunov_bures: right-hand side is not Hermitian");
  }
  return hermitian_part(SpectralSylvester(rho_inf, min_eigenvalue).solve(delta, 1.0));
}

ComplexVector vectorize(const ComplexMatrix& m) {
  return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

ComplexMatrix devectorize(const ComplexVector& v, Index dim) {
  if (v.size() != dim * dim) {
    throw Error(ErrorCode::DimensionMismatch, "devectorize: length is not dim^2");
  }
  return Eigen::Map<const ComplexMatrix>(v.data(), dim, dim);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

double trace_norm(const ComplexMatrix& hermitian) {
  return hermitian_eig(hermitian).eigenvalues.cwiseAbs().sum();
}

}  // namespace lyap

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

#include "lyap/states.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/special_functions/gamma.hpp>

#include "lyap/error.hpp"

namespace lyap {

namespace {

// Eigenvalues below this count as zero when supports are compared.
constexpr double kSupportTolerance = 1e-10;
constexpr double kPrincipalAngleTolerance = 1e-8;
constexpr int kChernoffGridPoints = 33;
constexpr double kChernoffResolution = 1e-6;

struct Spectrum {
  RealVector values;  // clamped at zero
  ComplexMatrix vectors;
};

Spectrum clamped_spectrum(const DensityMatrix& rho) {
  HermitianEigen eig = hermitian_eig(rho.matrix());
  return {eig.eigenvalues.cwiseMax(0.0), std::move(eig.unitary)};
}

// |<u_i|v_j>|^2
Eigen::MatrixXd overlap_weights(const ComplexMatrix& u, const ComplexMatrix& v) {
  return (u.adjoint() * v).cwiseAbs2();
}

double chernoff_objective(const RealVector& p, const RealVector& q, const Eigen::MatrixXd& overlap,
                          double s) {
  double sum = 0.0;
  for (Index i = 0; i < p.size(); ++i) {
    if (p(i) <= 0.0) continue;
    const double ps = std::pow(p(i), s);
    for (Index j = 0; j < q.size(); ++j) {
      if (q(j) <= 0.0) continue;
      sum += ps * std::pow(q(j), 1.0 - s) * overlap(i, j);
    }
  }
  return sum;
}

double relative_entropy_sq(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  const Spectrum a = clamped_spectrum(rho1);
  const Spectrum b = clamped_spectrum(rho2);
  const Eigen::MatrixXd overlap = overlap_weights(a.vectors, b.vectors);
  double entropy_term = 0.0;
  for (Index i = 0; i < a.values.size(); ++i) {
    if (a.values(i) > 0.0) entropy_term += a.values(i) * std::log(a.values(i));
  }
  double cross_term = 0.0;
  double leak = 0.0;
  for (Index j = 0; j < b.values.size(); ++j) {
    double weight = 0.0;
    for (Index i = 0; i < a.values.size(); ++i) weight += a.values(i) * overlap(i, j);
    if (b.values(j) <= kSupportTolerance) {
      leak += weight;
    } else {
      cross_term += weight * std::log(b.values(j));
    }
  }
  if (leak > kSupportTolerance) {
    std::ostringstream os;
    os << "relative entropy: rho1 carries weight " << leak << " outside the support of rho2";
    throw Error(ErrorCode::SupportMismatch, os.str());
  }
  return std::max(0.0, entropy_term - cross_term);
}

double chi2_sq(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  const HermitianEigen b = hermitian_eig(rho2.matrix());
  if (!(b.eigenvalues(0) > kRankTolerance)) {
    std::ostringstream os;
    os << "chi2 divergence: rho2 has eigenvalue " << b.eigenvalues(0);
    throw Error(ErrorCode::SingularState, os.str());
  }
  // Tr(X Y X Y) = ||Y^{1/2} X Y^{1/2}||_F^2 with Y = rho2^{-1/2}.
  const ComplexMatrix x = b.to_eigenbasis(rho1.matrix() - rho2.matrix());
  double sum = 0.0;
  for (Index j = 0; j < x.cols(); ++j) {
    for (Index i = 0; i < x.rows(); ++i) {
      sum += std::norm(x(i, j)) / std::sqrt(b.eigenvalues(i) * b.eigenvalues(j));
    }
  }
  return sum;
}

double hilbert_metric(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  constexpr double kInfinity = std::numeric_limits<double>::infinity();
  const HermitianEigen a = hermitian_eig(rho1.matrix());
  const HermitianEigen b = hermitian_eig(rho2.matrix());
  const Index d = rho1.dim();
  Index null_a = 0;
  Index null_b = 0;
  while (null_a < d && a.eigenvalues(null_a) <= kSupportTolerance) ++null_a;
  while (null_b < d && b.eigenvalues(null_b) <= kSupportTolerance) ++null_b;
  if (null_a != null_b || null_a == d) return kInfinity;

  if (null_a > 0) {
    const ComplexMatrix na = a.unitary.leftCols(null_a);
    const ComplexMatrix nb = b.unitary.leftCols(null_b);
    const ComplexMatrix residual = na - nb * (nb.adjoint() * na);
    Eigen::JacobiSVD<ComplexMatrix> svd(residual);
    if (svd.singularValues()(0) > kPrincipalAngleTolerance) return kInfinity;
  }

  // rho2^{-1/2} rho1 rho2^{-1/2}, compressed to the common support.
  const Index rank = d - null_b;
  const ComplexMatrix support = b.unitary.rightCols(rank);
  const RealVector q = b.eigenvalues.tail(rank);
  ComplexMatrix k = support.adjoint() * rho1.matrix() * support;
  for (Index j = 0; j < rank; ++j) {
    for (Index i = 0; i < rank; ++i) k(i, j) /= std::sqrt(q(i) * q(j));
  }
  const RealVector mu = hermitian_eig(hermitian_part(k)).eigenvalues;
  if (!(mu(0) > 0.0)) return kInfinity;
  return std::log(mu(rank - 1) / mu(0));
}

void require_same_states(const DensityMatrix& a, const DensityMatrix& b, const char* what) {
  if (a.dim() != b.dim()) {
    std::ostringstream os;
    os << what << ": dimension " << a.dim() << " does not match " << b.dim();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
}

}  // namespace

Ket::Ket(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) throw Error(ErrorCode::InvalidDimension, "empty ket");
  const double norm = amplitudes_.norm();
  if (!(std::abs(norm - 1.0) <= 1e-12)) {
    std::ostringstream os;
    os << "ket norm " << norm << " differs from 1";
    throw Error(ErrorCode::InvalidState, os.str());
  }
}

Ket Ket::normalized(const ComplexVector& v) {
  const double norm = v.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw Error(ErrorCode::InvalidArgument, "cannot normalize a zero or non-finite vector");
  }
  return Ket(v / norm);
}

Ket Ket::fock(Index dim, Index n) {
  if (dim < 1 || n < 0 || n >= dim) throw Error(ErrorCode::InvalidDimension, "Fock index out of range");
  ComplexVector v = ComplexVector::Zero(dim);
  v(n) = 1.0;
  return Ket(std::move(v));
}

DensityMatrix::DensityMatrix(const ComplexMatrix& m, double tolerance) {
  require_square(m, "DensityMatrix");
  if (!all_finite(m)) throw Error(ErrorCode::InvalidState, "density matrix has non-finite entries");
  const double defect = hermiticity_defect(m);
  if (defect > tolerance) {
    std::ostringstream os;
    os << "density matrix Hermiticity defect " << defect;
    throw Error(ErrorCode::InvalidState, os.str());
  }
  m_ = hermitian_part(m);
  const double trace = m_.trace().real();
  if (std::abs(trace - 1.0) > tolerance) {
    std::ostringstream os;
    os << "density matrix trace " << trace << " differs from 1";
    throw Error(ErrorCode::InvalidState, os.str());
  }
  const double min_eig = hermitian_eig(m_).eigenvalues(0);
  if (min_eig < -tolerance) {
    std::ostringstream os;
    os << "density matrix has negative eigenvalue " << min_eig;
    throw Error(ErrorCode::InvalidState, os.str());
  }
}

DensityMatrix DensityMatrix::pure(const Ket& ket) {
  return DensityMatrix(ket.amplitudes() * ket.amplitudes().adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(Index dim) {
  if (dim < 1) throw Error(ErrorCode::InvalidDimension, "maximally_mixed: dim < 1");
  return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::fock(Index dim, Index n) { return pure(Ket::fock(dim, n)); }

OscillatorOps oscillator_ops(int nmax) {
  if (nmax < 1) throw Error(ErrorCode::InvalidDimension, "oscillator_ops: nmax must be >= 1");
  const Index d = nmax + 1;
  OscillatorOps ops;
  ops.nmax = nmax;
  ops.a = ComplexMatrix::Zero(d, d);
  ops.number = ComplexMatrix::Zero(d, d);
  ops.parity_rotation = ComplexMatrix::Zero(d, d);
  for (Index n = 0; n < d; ++n) {
    if (n >= 1) ops.a(n - 1, n) = std::sqrt(static_cast<double>(n));
    ops.number(n, n) = static_cast<double>(n);
    ops.parity_rotation(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
  }
  return ops;
}

namespace {

ComplexVector coherent_amplitudes(Complex alpha, int nmax) {
  ComplexVector v(nmax + 1);
  v(0) = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n <= nmax; ++n) v(n) = v(n - 1) * alpha / std::sqrt(static_cast<double>(n));
  return v;
}

double poisson_tail(double mean, int nmax) {
  if (mean <= 0.0) return 0.0;
  // P(X > nmax) for X ~ Poisson(mean).
  return boost::math::gamma_p(static_cast<double>(nmax) + 1.0, mean);
}

}  // namespace

TruncatedKet coherent_state(Complex alpha, int nmax) {
  if (nmax < 1) throw Error(ErrorCode::InvalidDimension, "coherent_state: nmax must be >= 1");
  return {Ket::normalized(coherent_amplitudes(alpha, nmax)), poisson_tail(std::norm(alpha), nmax)};
}

TruncatedKet cat_state(Complex alpha, std::span<const Complex> coeffs, int nmax) {
  if (nmax < 1) throw Error(ErrorCode::InvalidDimension, "cat_state: nmax must be >= 1");
  if (coeffs.empty()) throw Error(ErrorCode::InvalidArgument, "cat_state: no components");
  const double n_components = static_cast<double>(coeffs.size());
  for (const Complex& beta : coeffs) {
    if (std::abs(std::norm(beta) - 1.0 / n_components) > 1e-12) {
      throw Error(ErrorCode::InvalidArgument, "cat_state: coefficients must satisfy |beta_k|^2 = 1/N");
    }
  }
  ComplexVector sum = ComplexVector::Zero(nmax + 1);
  for (std::size_t k = 1; k <= coeffs.size(); ++k) {
    const Complex rotation = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / n_components);
    sum += coeffs[k - 1] * coherent_state(alpha * rotation, nmax).ket.amplitudes();
  }
  return {Ket::normalized(sum), poisson_tail(std::norm(alpha), nmax)};
}

std::string_view to_string(DistanceKind kind) {
  switch (kind) {
    case DistanceKind::Trace: return "trace";
    case DistanceKind::Bures: return "bures";
    case DistanceKind::Chernoff: return "chernoff";
    case DistanceKind::RelativeEntropy: return "relative_entropy";
    case DistanceKind::Chi2: return "chi2";
    case DistanceKind::Hilbert: return "hilbert";
  }
  return "unknown";
}

std::optional<DistanceKind> parse_distance_kind(std::string_view name) {
  for (DistanceKind kind : kAllDistanceKinds) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

double fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  require_same_states(rho1, rho2, "fidelity");
  const Spectrum a = clamped_spectrum(rho1);
  const ComplexMatrix sqrt_rho1 =
      a.vectors * a.values.cwiseSqrt().cast<Complex>().asDiagonal() * a.vectors.adjoint();
  const ComplexMatrix inner = hermitian_part(sqrt_rho1 * rho2.matrix() * sqrt_rho1);
  const RealVector mu = hermitian_eig(inner).eigenvalues;
  double f = 0.0;
  for (Index i = 0; i < mu.size(); ++i) f += std::sqrt(std::max(mu(i), 0.0));
  return std::clamp(f, 0.0, 1.0);
}

ChernoffResult chernoff_coefficient(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  require_same_states(rho1, rho2, "chernoff_coefficient");
  const Spectrum a = clamped_spectrum(rho1);
  const Spectrum b = clamped_spectrum(rho2);
  const Eigen::MatrixXd overlap = overlap_weights(a.vectors, b.vectors);
  auto objective = [&](double s) { return chernoff_objective(a.values, b.values, overlap, s); };

  const double step = 1.0 / (kChernoffGridPoints - 1);
  int best = 0;
  double best_value = objective(0.0);
  for (int k = 1; k < kChernoffGridPoints; ++k) {
    const double value = objective(k * step);
    if (value < best_value) {
      best_value = value;
      best = k;
    }
  }

  // Golden-section refinement on the bracket around the best grid point.
  double lo = std::max(0.0, (best - 1) * step);
  double hi = std::min(1.0, (best + 1) * step);
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - ratio * (hi - lo);
  double x2 = lo + ratio * (hi - lo);
  double f1 = objective(x1);
  double f2 = objective(x2);
  while (hi - lo > kChernoffResolution) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = objective(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = objective(x2);
    }
  }
  ChernoffResult result{best_value, best * step};
  const double s_mid = 0.5 * (lo + hi);
  const double f_mid = objective(s_mid);
  if (f_mid < result.q) result = {f_mid, s_mid};
  return result;
}

double distance(DistanceKind kind, const DensityMatrix& rho1, const DensityMatrix& rho2) {
  require_same_states(rho1, rho2, "distance");
  switch (kind) {
    case DistanceKind::Trace:
      return 0.5 * trace_norm(rho1.matrix() - rho2.matrix());
    case DistanceKind::Bures:
      return std::sqrt(std::max(0.0, 1.0 - fidelity(rho1, rho2)));
    case DistanceKind::Chernoff:
      return std::sqrt(std::max(0.0, 1.0 - chernoff_coefficient(rho1, rho2).q));
    case DistanceKind::RelativeEntropy:
      return std::sqrt(relative_entropy_sq(rho1, rho2));
    case DistanceKind::Chi2:
      return std::sqrt(chi2_sq(rho1, rho2));
    case DistanceKind::Hilbert:
      return hilbert_metric(rho1, rho2);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown distance kind");
}

}  // namespace lyap

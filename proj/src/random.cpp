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

#include "lyap/random.hpp"

#include <cmath>

#include "lyap/error.hpp"

namespace lyap {

double Rng::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

double Rng::normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return Complex(re, im) * std::sqrt(0.5);
}

ComplexMatrix ginibre(Rng& rng, Index rows, Index cols) {
  ComplexMatrix z(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) z(i, j) = rng.complex_normal();
  }
  return z;
}

ComplexMatrix haar_unitary(Rng& rng, Index dim) {
  if (dim < 1) throw Error(ErrorCode::InvalidDimension, "haar_unitary: dim < 1");
  Eigen::HouseholderQR<ComplexMatrix> qr(ginibre(rng, dim, dim));
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  // Fix the phase of R's diagonal so that Q is Haar distributed.
  for (Index j = 0; j < dim; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

ComplexMatrix random_hermitian(Rng& rng, Index dim) {
  return hermitian_part(ginibre(rng, dim, dim));
}

ComplexMatrix random_density(Rng& rng, Index dim) {
  const ComplexMatrix g = ginibre(rng, dim, dim);
  ComplexMatrix rho = hermitian_part(g * g.adjoint());
  return rho / rho.trace().real();
}

ComplexMatrix random_traceless(Rng& rng, Index dim) {
  ComplexMatrix x = random_hermitian(rng, dim);
  x -= (x.trace().real() / static_cast<double>(dim)) * ComplexMatrix::Identity(dim, dim);
  return x / x.norm();
}

std::vector<ComplexMatrix> random_kraus_ops(Rng& rng, Index dim, Index ancilla) {
  if (ancilla < 1) throw Error(ErrorCode::InvalidDimension, "random_kraus_ops: ancilla < 1");
  const ComplexMatrix u = haar_unitary(rng, dim * ancilla);
  std::vector<ComplexMatrix> ops(ancilla, ComplexMatrix(dim, dim));
  for (Index k = 0; k < ancilla; ++k) {
    for (Index i = 0; i < dim; ++i) {
      for (Index j = 0; j < dim; ++j) ops[k](i, j) = u(i * ancilla + k, j * ancilla);
    }
  }
  return ops;
}

}  // namespace lyap

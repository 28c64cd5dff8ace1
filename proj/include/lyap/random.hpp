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

// Seeded samplers for test ensembles: Haar unitaries, Ginibre states, random
// Hermitian and traceless matrices, and Kraus maps obtained from a unitary on
// system (x) ancilla.

#include <cstdint>
#include <random>
#include <vector>

#include "lyap/linalg.hpp"

namespace lyap {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0);
  double normal();
  /// Real and imaginary parts independent N(0, 1/2).
  Complex complex_normal();

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

ComplexMatrix ginibre(Rng& rng, Index rows, Index cols);
ComplexMatrix haar_unitary(Rng& rng, Index dim);
ComplexMatrix random_hermitian(Rng& rng, Index dim);
/// Normalized Wishart state G G^dagger / Tr; full rank almost surely.
ComplexMatrix random_density(Rng& rng, Index dim);
/// Traceless Hermitian with unit Frobenius norm.
ComplexMatrix random_traceless(Rng& rng, Index dim);
/// Kraus operators <k|_anc U |0>_anc of a Haar unitary on system (x) ancilla;
/// trace preserving by construction.
std::vector<ComplexMatrix> random_kraus_ops(Rng& rng, Index dim, Index ancilla = 2);

}  // namespace lyap

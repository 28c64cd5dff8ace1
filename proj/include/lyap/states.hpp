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

// Density matrices, truncated harmonic-oscillator operators, coherent and cat
// states, and six distances that every Kraus map contracts.

#include <array>
#include <optional>
#include <span>
#include <string_view>

#include "lyap/linalg.hpp"

namespace lyap {

/// Tolerance for Hermiticity, unit trace and positivity of a density matrix.
inline constexpr double kStateTolerance = 1e-10;
/// Coherent-state tail mass above which a truncation warning is raised.
inline constexpr double kTruncationTailTolerance = 1e-8;

class Ket {
 public:
  /// Throws InvalidState unless the amplitudes have unit norm within 1e-12.
  explicit Ket(ComplexVector amplitudes);
  static Ket normalized(const ComplexVector& v);
  static Ket fock(Index dim, Index n);

  const ComplexVector& amplitudes() const { return amplitudes_; }
  Index dim() const { return amplitudes_.size(); }

 private:
  ComplexVector amplitudes_;
};

class DensityMatrix {
 public:
  /// Validates Hermiticity, unit trace and min eigenvalue >= -tolerance. The
  /// stored matrix is the Hermitian part of the input.
  explicit DensityMatrix(const ComplexMatrix& m, double tolerance = kStateTolerance);

  static DensityMatrix pure(const Ket& ket);
  static DensityMatrix maximally_mixed(Index dim);
  static DensityMatrix fock(Index dim, Index n);

  const ComplexMatrix& matrix() const { return m_; }
  Index dim() const { return m_.rows(); }

 private:
  ComplexMatrix m_;
};

/// Truncated a, N = a^dagger a and the parity rotation e^{i pi N} on
/// span{|0>, ..., |nmax>}.
struct OscillatorOps {
  int nmax = 0;
  ComplexMatrix a;
  ComplexMatrix number;
  ComplexMatrix parity_rotation;

  Index dim() const { return nmax + 1; }
};

OscillatorOps oscillator_ops(int nmax);

/// A truncated, renormalized state together with the Poisson mass that the
/// truncation dropped.
struct TruncatedKet {
  Ket ket;
  double tail_mass = 0.0;

  bool truncation_warning() const { return tail_mass > kTruncationTailTolerance; }
};

TruncatedKet coherent_state(Complex alpha, int nmax);

/// sum_k beta_k |alpha e^{2 pi i k / N}>, k = 1..N, normalized after assembly.
/// Requires |beta_k|^2 = 1/N.
TruncatedKet cat_state(Complex alpha, std::span<const Complex> coeffs, int nmax);

enum class DistanceKind { Trace, Bures, Chernoff, RelativeEntropy, Chi2, Hilbert };

inline constexpr std::array<DistanceKind, 6> kAllDistanceKinds = {
    DistanceKind::Trace,           DistanceKind::Bures, DistanceKind::Chernoff,
    DistanceKind::RelativeEntropy, DistanceKind::Chi2,  DistanceKind::Hilbert};

std::string_view to_string(DistanceKind kind);
std::optional<DistanceKind> parse_distance_kind(std::string_view name);

/// Tr sqrt(sqrt(rho1) rho2 sqrt(rho1)), clamped to [0, 1].
double fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2);

/// min over s in [0, 1] of Tr(rho1^s rho2^(1-s)); zero eigenvalues follow the
/// support-projector convention 0^0 = 0.
struct ChernoffResult {
  double q = 1.0;
  double s = 0.0;
};
ChernoffResult chernoff_coefficient(const DensityMatrix& rho1, const DensityMatrix& rho2);

/// Contractive distance between two states. Relative entropy and chi2 keep
/// the argument order rho1, rho2 (rho2 sits inside the log / is inverted).
/// Hilbert returns +inf when the supports differ.
double distance(DistanceKind kind, const DensityMatrix& rho1, const DensityMatrix& rho2);

}  // namespace lyap

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

// Engineered cat-state reservoir: the atom-cavity Kraus map, its Kerr frame,
// the continuous-time models with and without photon loss, the analytic
// equilibrium
//
//     rho_inf = int mu(z) |z><z| dz,
//     mu(z) ~ (alpha_c - z)^(alpha_c^2 r - 1) (alpha_c + z)^(alpha_c^2 r) e^(r z^2),
//     r = 2 kappa_c / (kappa + kappa_c),
//
// and the Bures-Lyapunov convergence experiment.

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "lyap/dynamics.hpp"
#include "lyap/petz.hpp"
#include "lyap/states.hpp"

namespace lyap {

struct CatReservoirParams {
  double u = 0.05;
  double theta = 0.05;
  double phi = std::numbers::pi;
  double f_phi = 0.0;
  double beta = 2.0;
  double kappa = 1.0;
  double kappa_c = 1.0;
  int nmax = 19;

  /// 2 beta / (kappa + kappa_c).
  double alpha_c() const { return 2.0 * beta / (kappa + kappa_c); }
  /// Throws InvalidArgument / InvalidDimension for unusable values.
  void validate() const;
  /// Truncation-adequacy warnings (alpha_c^2 >= nmax/4, coherent tail mass).
  std::vector<std::string> warnings() const;
};

/// {M1bar, M2bar}; requires nmax >= 2.
KrausMap bar_kraus_operators(const CatReservoirParams& p);
/// M_k = e^{-i h_N} M_k_bar e^{i h_N}, h_N = phi N^2 + f_phi N.
KrausMap kraus_operators(const CatReservoirParams& p);

enum class FrameDirection { ToBar, FromBar };
/// ToBar: e^{i h_N} rho e^{-i h_N}; FromBar inverts it.
DensityMatrix kerr_frame(const DensityMatrix& rho, double phi, double f_phi, FrameDirection dir);
/// Largest Frobenius gap over `iterations` Kraus steps between iterating
/// {M_k} directly and iterating {M_k_bar} in the Kerr frame.
double kerr_frame_equivalence_defect(const CatReservoirParams& p, const DensityMatrix& rho,
                                     int iterations);

/// H = i(beta a^dagger - conj(beta) a), jumps {sqrt(kappa) a}.
LindbladGenerator generator_eq16(Complex beta, double kappa, int nmax);
/// H = i beta (a^dagger - a), jumps {sqrt(kappa) a, sqrt(kappa_c) e^{i pi N} a};
/// zero-rate jumps are omitted.
LindbladGenerator generator_eq18(double beta, double kappa, double kappa_c, int nmax);
LindbladGenerator generator_eq18(const CatReservoirParams& p);

/// Normalized equilibrium density on [-alpha_c, alpha_c).
class EquilibriumDensity {
 public:
  /// Throws InvalidArgument for beta <= 0, kappa < 0, kappa_c < 0 or
  /// kappa + kappa_c <= 0, NonIntegrable if the exponent at z = alpha_c is <= -1
  /// (in particular kappa_c = 0).
  EquilibriumDensity(double beta, double kappa, double kappa_c);

  /// Throws DomainViolation unless -alpha_c <= z < alpha_c; mu(-alpha_c) = 0.
  double operator()(double z) const;

  double alpha_c() const { return alpha_; }
  /// Exponent of (alpha_c - z).
  double endpoint_exponent() const { return alpha_ * alpha_ * r_ - 1.0; }
  double rate_ratio() const { return r_; }
  /// Mass of mu over [lo, hi] within [-alpha_c, alpha_c].
  double mass(double lo, double hi) const;
  /// log of int (alpha_c - z)^e (alpha_c + z)^(alpha_c^2 r) e^(r z^2) dz.
  double log_normalization() const { return log_shift_ + std::log(norm_); }

 private:
  double log_unnormalized(double z) const;
  double distance_integral(double lo, double hi) const;

  double alpha_ = 0.0;
  double r_ = 0.0;
  double log_shift_ = 0.0;
  double norm_ = 1.0;
};

double equilibrium_mu(double z, double beta, double kappa, double kappa_c);

struct EquilibriumState {
  DensityMatrix rho;
  double min_eigenvalue = 0.0;
  bool full_rank = false;   // min eigenvalue > 0 (the sum is positive by construction)
  double residual = 0.0;    // Frobenius norm of generator_eq18(p) applied to rho
  double mass = 0.0;        // quadrature estimate of int mu, ~1
};

/// Gauss-Jacobi quadrature of the integral over real coherent states
/// (projected on the truncated space), renormalized to unit trace.
EquilibriumState equilibrium_state(const CatReservoirParams& p, int nodes = 400);

struct ConvergenceRun {
  LyapunovTrack track;
  bool passed = false;  // monotone, strict and final Bures distance < kFinalBuresTolerance
};

struct ConvergenceReport {
  SteadyState steady;
  bool full_rank = false;
  double equilibrium_residual = 0.0;
  std::vector<ConvergenceRun> runs;
  bool all_passed = false;
};

inline constexpr double kFinalBuresTolerance = 1e-4;

/// Tracks V about the numerical steady state of generator_eq18(p) from every
/// initial state. Runs execute on up to `jobs` threads; results are ordered
/// by input index.
ConvergenceReport convergence_experiment(const CatReservoirParams& p,
                                         const std::vector<DensityMatrix>& initial_states,
                                         double t_end, double h, long stride = 1, int jobs = 1);

/// Trace-norm gap after `steps` applications of the bar Kraus map and of RK4
/// on generator_eq16 with dt = theta^2 / (4 kappa), beta = u theta / (4 dt);
/// the larger of the gaps from vacuum and from the maximally mixed state.
double kraus_lindblad_consistency(double u, double theta, int nmax, int steps = 1);

/// Real dimension of {G Hermitian : [G, A] = 0}.
int commutant_dimension(const ComplexMatrix& a);

}  // namespace lyap

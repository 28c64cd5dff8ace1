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

// Petz contraction metrics
//
//     ||delta||^2_rho = sum_j w_j Re Tr(delta * omega_{s_j}),
//     s omega_s rho + rho omega_s = delta,
//
// their operator-monotone function, and the Bures Lyapunov function
// V(rho) = Tr(rho_inf G^2), rho_inf G + G rho_inf = rho - rho_inf, with its
// analytic decay rate -sum_k Tr([G, L_k] rho_inf [G, L_k]^dagger).

#include <functional>
#include <optional>
#include <vector>

#include "lyap/dynamics.hpp"

namespace lyap {

/// Numerical floor below which V is treated as converged.
inline constexpr double kLyapunovFloor = 1e-9;
/// Strictness of the analytic rate is only asserted above this value of V.
inline constexpr double kStrictnessThreshold = 1e-8;
/// Per-step slack, relative to the initial value, of contraction traces.
inline constexpr double kContractionSlack = 1e-7;
/// Equilibrium residual above which a warning is attached.
inline constexpr double kEquilibriumWarning = 1e-8;

struct PetzAtom {
  double s = 0.0;
  double w = 0.0;
};

/// Finite positive measure on [0, 1] as weighted atoms.
class PetzMeasure {
 public:
  static constexpr int kDefaultNodes = 32;

  /// Throws InvalidArgument unless there is at least one atom, every
  /// s in [0, 1] and every weight is finite and > 0.
  explicit PetzMeasure(std::vector<PetzAtom> atoms);
  static PetzMeasure atom(double s, double w = 1.0);
  /// Gauss-Legendre discretization of density(s) ds on [0, 1]. The density
  /// must be positive at the nodes.
  static PetzMeasure from_density(const std::function<double(double)>& density,
                                  int nodes = kDefaultNodes);

  const std::vector<PetzAtom>& atoms() const { return atoms_; }
  /// f(1) = sum_j w_j / (1 + s_j).
  double f_at_one() const;

 private:
  std::vector<PetzAtom> atoms_;
};

PetzMeasure random_measure(Rng& rng, int n_atoms);

double petz_norm_sq(const DensityMatrix& rho, const TangentPerturbation& delta,
                    const PetzMeasure& m);
/// Same, reusing a factorized rho; delta is a traceless Hermitian matrix.
double petz_norm_sq(const SpectralSylvester& rho, const ComplexMatrix& delta, const PetzMeasure& m);

/// f(x) = 1/2 sum_j w_j (1/(s_j x + 1) + 1/(s_j + x)). Throws DomainViolation
/// unless x > 0.
double operator_monotone_f(const PetzMeasure& m, double x);

/// Tr(delta * omega_s). Complex in general for s < 1.
Complex sylvester_pairing(const DensityMatrix& rho, const TangentPerturbation& delta, double s);

struct DissipationTerms {
  double d1 = 0.0;  // sum_k Tr([omega_s, L_k] rho [omega_s, L_k]^dagger)
  double d2 = 0.0;  // same with omega_s^dagger
};
DissipationTerms dissipation_terms(const DensityMatrix& rho, const TangentPerturbation& delta,
                                   double s, const std::vector<ComplexMatrix>& jumps);

/// d/dt Tr(delta * omega_s) when rho and delta both follow the Lindblad flow:
/// -(s * d1 + d2). Real; the Hamiltonian does not contribute.
double sylvester_pairing_rate(const DensityMatrix& rho, const TangentPerturbation& delta, double s,
                              const std::vector<ComplexMatrix>& jumps);

struct BuresValue {
  double v = 0.0;
  ComplexMatrix g;
};

/// Bures Lyapunov function about a fixed full-rank rho_inf.
class BuresLyapunov {
 public:
  /// Throws SingularRho if rho_inf is not positive definite.
  explicit BuresLyapunov(const DensityMatrix& rho_inf);

  BuresValue evaluate(const ComplexMatrix& rho) const;
  double value(const ComplexMatrix& rho) const;
  /// Analytic rate; reads only the jumps of gen.
  double rate(const ComplexMatrix& rho, const LindbladGenerator& gen) const;
  double rate(const BuresValue& at, const LindbladGenerator& gen) const;
  /// ||L(rho_inf)||_F: the rate is exact only at a true equilibrium.
  double equilibrium_residual(const LindbladGenerator& gen) const;

  const DensityMatrix& rho_inf() const { return rho_inf_; }
  double min_eigenvalue() const { return sylvester_.min_eigenvalue(); }

 private:
  DensityMatrix rho_inf_;
  SpectralSylvester sylvester_;
  ComplexMatrix sqrt_weighted_;  // U diag(sqrt(lambda))
};

BuresValue bures_lyapunov(const DensityMatrix& rho_inf, const DensityMatrix& rho);
double bures_lyapunov_rate(const DensityMatrix& rho_inf, const DensityMatrix& rho,
                           const LindbladGenerator& gen);

struct ContractionTrace {
  std::vector<double> times;
  std::vector<double> values;
  double worst_increase = 0.0;  // largest per-step increase, relative to values[0]
  bool monotone = true;
};

/// Petz norm of the co-propagated tangent along the joint trajectory. Every
/// step is checked; every stride-th value is stored. Throws PositivityLost if
/// rho(t) stops being positive definite.
ContractionTrace contraction_trace(const LindbladGenerator& gen, const DensityMatrix& rho0,
                                   const TangentPerturbation& delta0, const PetzMeasure& m,
                                   double t_end, double h, long stride = 1);

struct LyapunovSample {
  double t = 0.0;
  double v = 0.0;         // NaN if rho_inf is singular
  double rate = 0.0;      // analytic
  double rate_fd = 0.0;   // five-point central difference of V; NaN within 2 steps of the ends
  double d_trace = 0.0;   // to rho_inf
  double d_bures = 0.0;
  double min_eig = 0.0;   // of rho(t)
  double trace_defect = 0.0;
};

struct LyapunovVerdict {
  bool certified = false;      // V defined along the run
  bool monotone = true;        // V strictly decreasing while above kLyapunovFloor
  double worst_increase = 0.0; // max V(t_{k+1}) - V(t_k) over those samples
  bool strict = true;          // rate < 0 whenever V > kStrictnessThreshold
  double max_rate = 0.0;       // max analytic rate over those samples
  double worst_fd_relative_error = 0.0;
  double final_v = 0.0;
  double final_d_trace = 0.0;
  double final_d_bures = 0.0;
};

struct LyapunovTrack {
  std::vector<LyapunovSample> samples;
  LyapunovVerdict verdict;
};

LyapunovVerdict summarize(const std::vector<LyapunovSample>& samples);

/// Integrates rho0 and samples V, its analytic and finite-difference rates and
/// distances to rho_inf every stride steps (and at the end).
LyapunovTrack track_bures_lyapunov(const LindbladGenerator& gen, const DensityMatrix& rho_inf,
                                   const DensityMatrix& rho0, double t_end, double h,
                                   long stride = 1);

}  // namespace lyap

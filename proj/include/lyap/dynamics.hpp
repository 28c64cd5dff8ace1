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

// Kraus maps and their duals, Lindblad generators, fixed-step RK4
// integration, the column-stacked superoperator and its steady state.

#include <functional>
#include <optional>
#include <vector>

#include "lyap/linalg.hpp"
#include "lyap/random.hpp"
#include "lyap/states.hpp"

namespace lyap {

/// Maps whose Kraus defect ||sum M^dagger M - I||_F exceeds this are flagged.
inline constexpr double kTracePreservingTolerance = 1e-8;
/// Integration aborts when an eigenvalue of rho drops below -kPositivityFloor.
inline constexpr double kPositivityFloor = 1e-6;
/// Singular values below this fraction of the largest span the kernel.
inline constexpr double kKernelTolerance = 1e-8;
inline constexpr double kNoSteadyStateResidual = 1e-6;
inline constexpr double kClosureRankTolerance = 1e-10;

class KrausMap {
 public:
  /// Throws InvalidArgument for an empty list, InvalidDimension /
  /// DimensionMismatch for inconsistent shapes.
  explicit KrausMap(std::vector<ComplexMatrix> ops);

  const std::vector<ComplexMatrix>& ops() const { return ops_; }
  Index dim() const { return ops_.front().rows(); }

  double trace_defect() const { return defect_; }
  bool is_trace_preserving() const { return defect_ <= kTracePreservingTolerance; }

 private:
  std::vector<ComplexMatrix> ops_;
  double defect_ = 0.0;
};

/// Traceless Hermitian tangent vector.
class TangentPerturbation {
 public:
  static constexpr double kTolerance = 1e-12;

  /// Throws InvalidArgument unless m is Hermitian and |Tr m| <= tolerance *
  /// max(1, ||m||_F).
  explicit TangentPerturbation(const ComplexMatrix& m, double tolerance = kTolerance);
  static TangentPerturbation zero(Index dim);
  /// rho1 - rho2.
  static TangentPerturbation difference(const DensityMatrix& rho1, const DensityMatrix& rho2);

  const ComplexMatrix& matrix() const { return m_; }
  Index dim() const { return m_.rows(); }

 private:
  ComplexMatrix m_;
};

class LindbladGenerator {
 public:
  /// Throws NotHermitian if H is not Hermitian within kHermitianTolerance.
  LindbladGenerator(const ComplexMatrix& hamiltonian, std::vector<ComplexMatrix> jumps);
  /// H = 0.
  static LindbladGenerator dissipative(Index dim, std::vector<ComplexMatrix> jumps);

  const ComplexMatrix& hamiltonian() const { return h_; }
  const std::vector<ComplexMatrix>& jumps() const { return jumps_; }
  Index dim() const { return h_.rows(); }
  /// A = -iH - 1/2 sum L^dagger L, so that L(X) = A X + X A^dagger + sum L X L^dagger.
  const ComplexMatrix& drift() const { return drift_; }

  LindbladGenerator with_hamiltonian(const ComplexMatrix& hamiltonian) const;

  /// The generator applied to an arbitrary square matrix.
  ComplexMatrix apply(const ComplexMatrix& x) const;

 private:
  ComplexMatrix h_;
  std::vector<ComplexMatrix> jumps_;
  ComplexMatrix drift_;
};

/// Random H (scaled by h_scale) and n_jumps Ginibre jumps (scaled by
/// jump_scale).
LindbladGenerator random_generator(Rng& rng, Index dim, int n_jumps, double h_scale = 1.0,
                                   double jump_scale = 1.0);

ComplexMatrix apply_kraus(const KrausMap& phi, const ComplexMatrix& x);
DensityMatrix apply_kraus(const KrausMap& phi, const DensityMatrix& rho);
TangentPerturbation apply_kraus(const KrausMap& phi, const TangentPerturbation& delta);

/// sum_k M_k^dagger X M_k for Hermitian X.
ComplexMatrix apply_dual(const KrausMap& phi, const ComplexMatrix& x);

/// Hermitian part of L(rho) (resp. L(delta)).
ComplexMatrix lindblad_rhs(const LindbladGenerator& gen, const DensityMatrix& rho);
ComplexMatrix lindblad_rhs(const LindbladGenerator& gen, const TangentPerturbation& delta);

/// Called at step 0 (the initial condition) and after every step. tangent is
/// null when no tangent is co-propagated.
using StepObserver =
    std::function<void(long step, double t, const ComplexMatrix& rho, const ComplexMatrix* tangent)>;

/// Number of RK4 steps of size h covering [0, t_end]. Throws InvalidArgument
/// unless h > 0 and t_end >= h.
long step_count(double t_end, double h);

/// Classical RK4 on rho (and optionally the tangent) for step_count(t_end, h)
/// steps. Throws PositivityLost if an eigenvalue of rho falls below
/// -kPositivityFloor.
void propagate(const LindbladGenerator& gen, const ComplexMatrix& rho0,
               const std::optional<ComplexMatrix>& tangent0, double t_end, double h,
               const StepObserver& observer);

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  std::vector<TangentPerturbation> tangents;  // empty unless a tangent was given
};

/// Stores every stride-th step plus the final one.
Trajectory integrate(const LindbladGenerator& gen, const DensityMatrix& rho0, double t_end,
                     double h, const std::optional<TangentPerturbation>& tangent0 = std::nullopt,
                     long stride = 1);

/// Final-state differences ||rho_h - rho_{h/2}||_F and ||rho_{h/2} - rho_{h/4}||_F;
/// ratio is nominally 16 for RK4.
struct StepHalving {
  double error_h = 0.0;
  double error_half = 0.0;
  double ratio = 0.0;
};
StepHalving rk4_step_halving(const LindbladGenerator& gen, const DensityMatrix& rho0,
                             double t_end, double h);

/// Matrix of L under column-stacking vectorization (dimension d^2).
ComplexMatrix build_superoperator(const LindbladGenerator& gen);

struct SteadyState {
  DensityMatrix rho;
  int kernel_dimension = 0;
  double residual = 0.0;  // ||L(rho)||_F
  double min_eigenvalue = 0.0;
};

/// Least-squares solution of [S; vec(I)^T] x = [0; 1]. Throws NoSteadyState if
/// the least-squares residual exceeds kNoSteadyStateResidual, NonUniqueKernel
/// if the kernel is degenerate and the solution found is not a state.
SteadyState steady_state(const LindbladGenerator& gen);

/// True iff span{I, L_k} is closed under the adjoint (rank test).
bool dsf_hermitian_closure(const std::vector<ComplexMatrix>& jumps);

}  // namespace lyap

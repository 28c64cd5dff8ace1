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

#include "lyap/dynamics.hpp"

#include <cmath>
#include <sstream>

#include "lyap/error.hpp"

namespace lyap {

namespace {

void require_matching_ops(const std::vector<ComplexMatrix>& ops, Index dim, const char* what) {
  for (const ComplexMatrix& op : ops) {
    require_square(op, what);
    if (op.rows() != dim) {
      std::ostringstream os;
      os << what << ": operator dimension " << op.rows() << " does not match " << dim;
      throw Error(ErrorCode::DimensionMismatch, os.str());
    }
  }
}

void require_dim(Index expected, Index got, const char* what) {
  if (expected != got) {
    std::ostringstream os;
    os << what << ": dimension " << got << " does not match " << expected;
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
}

int numerical_rank(const ComplexMatrix& columns, double relative_tolerance) {
  Eigen::BDCSVD<ComplexMatrix> svd(columns);
  const RealVector& sigma = svd.singularValues();
  if (sigma.size() == 0 || sigma(0) == 0.0) return 0;
  int rank = 0;
  for (Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) >= relative_tolerance * sigma(0)) ++rank;
  }
  return rank;
}

}  // namespace

KrausMap::KrausMap(std::vector<ComplexMatrix> ops) : ops_(std::move(ops)) {
  if (ops_.empty()) throw Error(ErrorCode::InvalidArgument, "KrausMap: no operators");
  require_square(ops_.front(), "KrausMap");
  const Index d = ops_.front().rows();
  require_matching_ops(ops_, d, "KrausMap");
  ComplexMatrix sum = -ComplexMatrix::Identity(d, d);
  for (const ComplexMatrix& m : ops_) sum.noalias() += m.adjoint() * m;
  defect_ = sum.norm();
}

TangentPerturbation::TangentPerturbation(const ComplexMatrix& m, double tolerance) {
  require_square(m, "TangentPerturbation");
  if (!all_finite(m)) throw Error(ErrorCode::InvalidArgument, "tangent has non-finite entries");
  if (hermiticity_defect(m) > tolerance) {
    throw Error(ErrorCode::InvalidArgument, "tangent is not Hermitian");
  }
  m_ = hermitian_part(m);
  const double trace = m_.trace().real();
  if (std::abs(trace) > tolerance * std::max(1.0, m_.norm())) {
    std::ostringstream os;
    os << "tangent trace " << trace << " is not zero";
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
}

TangentPerturbation TangentPerturbation::zero(Index dim) {
  return TangentPerturbation(ComplexMatrix::Zero(dim, dim));
}

TangentPerturbation TangentPerturbation::difference(const DensityMatrix& rho1,
                                                    const DensityMatrix& rho2) {
  require_same_dim(rho1.matrix(), rho2.matrix(), "TangentPerturbation::difference");
  // Both traces are 1 only within the state tolerance.
  return TangentPerturbation(rho1.matrix() - rho2.matrix(), 2.0 * kStateTolerance);
}

LindbladGenerator::LindbladGenerator(const ComplexMatrix& hamiltonian,
                                     std::vector<ComplexMatrix> jumps)
    : jumps_(std::move(jumps)) {
  require_square(hamiltonian, "LindbladGenerator");
  if (!all_finite(hamiltonian)) throw Error(ErrorCode::InvalidArgument, "H has non-finite entries");
  const double defect = hermiticity_defect(hamiltonian);
  if (defect > kHermitianTolerance) {
    std::ostringstream os;
    os << "Hamiltonian Hermiticity defect " << defect;
    throw Error(ErrorCode::NotHermitian, os.str());
  }
  h_ = hermitian_part(hamiltonian);
  require_matching_ops(jumps_, h_.rows(), "LindbladGenerator");
  for (const ComplexMatrix& l : jumps_) {
    if (!all_finite(l)) throw Error(ErrorCode::InvalidArgument, "jump has non-finite entries");
  }
  drift_ = Complex(0.0, -1.0) * h_;
  for (const ComplexMatrix& l : jumps_) drift_.noalias() -= 0.5 * (l.adjoint() * l);
}

LindbladGenerator LindbladGenerator::dissipative(Index dim, std::vector<ComplexMatrix> jumps) {
  if (dim < 1) throw Error(ErrorCode::InvalidDimension, "generator dimension < 1");
  return LindbladGenerator(ComplexMatrix::Zero(dim, dim), std::move(jumps));
}

LindbladGenerator LindbladGenerator::with_hamiltonian(const ComplexMatrix& hamiltonian) const {
  return LindbladGenerator(hamiltonian, jumps_);
}

ComplexMatrix LindbladGenerator::apply(const ComplexMatrix& x) const {
  require_dim(dim(), x.rows(), "lindblad_rhs");
  ComplexMatrix out = drift_ * x;
  out.noalias() += x * drift_.adjoint();
  for (const ComplexMatrix& l : jumps_) out.noalias() += l * x * l.adjoint();
  return out;
}

LindbladGenerator random_generator(Rng& rng, Index dim, int n_jumps, double h_scale,
                                   double jump_scale) {
  ComplexMatrix h = h_scale * random_hermitian(rng, dim);
  std::vector<ComplexMatrix> jumps;
  for (int k = 0; k < n_jumps; ++k) jumps.push_back(jump_scale * ginibre(rng, dim, dim));
  return LindbladGenerator(h, std::move(jumps));
}

ComplexMatrix apply_kraus(const KrausMap& phi, const ComplexMatrix& x) {
  require_dim(phi.dim(), x.rows(), "apply_kraus");
  ComplexMatrix out = ComplexMatrix::Zero(x.rows(), x.cols());
  for (const ComplexMatrix& m : phi.ops()) out.noalias() += m * x * m.adjoint();
  return out;
}

DensityMatrix apply_kraus(const KrausMap& phi, const DensityMatrix& rho) {
  return DensityMatrix(hermitian_part(apply_kraus(phi, rho.matrix())),
                       kStateTolerance + phi.trace_defect());
}

TangentPerturbation apply_kraus(const KrausMap& phi, const TangentPerturbation& delta) {
  return TangentPerturbation(hermitian_part(apply_kraus(phi, delta.matrix())),
                             TangentPerturbation::kTolerance + phi.trace_defect());
}

ComplexMatrix apply_dual(const KrausMap& phi, const ComplexMatrix& x) {
  require_dim(phi.dim(), x.rows(), "apply_dual");
  if (hermiticity_defect(x) > kHermitianTolerance) {
    throw Error(ErrorCode::NotHermitian, "apply_dual: observable is not Hermitian");
  }
  ComplexMatrix out = ComplexMatrix::Zero(x.rows(), x.cols());
  for (const ComplexMatrix& m : phi.ops()) out.noalias() += m.adjoint() * x * m;
  return hermitian_part(out);
}

ComplexMatrix lindblad_rhs(const LindbladGenerator& gen, const DensityMatrix& rho) {
  return hermitian_part(gen.apply(rho.matrix()));
}

ComplexMatrix lindblad_rhs(const LindbladGenerator& gen, const TangentPerturbation& delta) {
  return hermitian_part(gen.apply(delta.matrix()));
}

long step_count(double t_end, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorCode::InvalidArgument, "step size must be > 0");
  if (!(t_end >= h) || !std::isfinite(t_end)) {
    throw Error(ErrorCode::InvalidArgument, "t_end must be >= h");
  }
  return std::max(1L, std::lround(t_end / h));
}

namespace {

ComplexMatrix rk4_step(const LindbladGenerator& gen, const ComplexMatrix& x, double h) {
  const ComplexMatrix k1 = gen.apply(x);
  const ComplexMatrix k2 = gen.apply(x + (0.5 * h) * k1);
  const ComplexMatrix k3 = gen.apply(x + (0.5 * h) * k2);
  const ComplexMatrix k4 = gen.apply(x + h * k3);
  return hermitian_part(x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

void check_positivity(const ComplexMatrix& rho, long step, double t) {
  const Index d = rho.rows();
  Eigen::LLT<ComplexMatrix> llt(rho + kPositivityFloor * ComplexMatrix::Identity(d, d));
  if (llt.info() != Eigen::Success) {
    std::ostringstream os;
    os << "state lost positivity at step " << step << " (t = " << t
       << "); min eigenvalue " << hermitian_eig(rho).eigenvalues(0) << " — reduce h";
    throw Error(ErrorCode::PositivityLost, os.str());
  }
}

}  // namespace

void propagate(const LindbladGenerator& gen, const ComplexMatrix& rho0,
               const std::optional<ComplexMatrix>& tangent0, double t_end, double h,
               const StepObserver& observer) {
  require_dim(gen.dim(), rho0.rows(), "propagate");
  if (tangent0) require_dim(gen.dim(), tangent0->rows(), "propagate");
  const long steps = step_count(t_end, h);
  ComplexMatrix rho = rho0;
  std::optional<ComplexMatrix> tangent = tangent0;
  observer(0, 0.0, rho, tangent ? &*tangent : nullptr);
  for (long step = 1; step <= steps; ++step) {
    const double t = static_cast<double>(step) * h;
    rho = rk4_step(gen, rho, h);
    if (!all_finite(rho)) {
      throw Error(ErrorCode::PositivityLost, "state diverged during integration — reduce h");
    }
    check_positivity(rho, step, t);
    if (tangent) tangent = rk4_step(gen, *tangent, h);
    observer(step, t, rho, tangent ? &*tangent : nullptr);
  }
}

Trajectory integrate(const LindbladGenerator& gen, const DensityMatrix& rho0, double t_end,
                     double h, const std::optional<TangentPerturbation>& tangent0, long stride) {
  if (stride < 1) throw Error(ErrorCode::InvalidArgument, "stride must be >= 1");
  const long steps = step_count(t_end, h);
  Trajectory traj;
  std::optional<ComplexMatrix> t0;
  if (tangent0) t0 = tangent0->matrix();
  propagate(gen, rho0.matrix(), t0, t_end, h,
            [&](long step, double t, const ComplexMatrix& rho, const ComplexMatrix* tangent) {
              if (step % stride != 0 && step != steps) return;
              traj.times.push_back(t);
              // RK4 keeps the trace to roundoff; positivity is policed by propagate.
              traj.states.emplace_back(rho, kPositivityFloor);
              if (tangent) traj.tangents.emplace_back(*tangent, 1e-10);
            });
  return traj;
}

StepHalving rk4_step_halving(const LindbladGenerator& gen, const DensityMatrix& rho0,
                             double t_end, double h) {
  auto final_state = [&](double step) {
    ComplexMatrix last;
    propagate(gen, rho0.matrix(), std::nullopt, t_end, step,
              [&](long, double, const ComplexMatrix& rho, const ComplexMatrix*) { last = rho; });
    return last;
  };
  const ComplexMatrix r1 = final_state(h);
  const ComplexMatrix r2 = final_state(h / 2.0);
  const ComplexMatrix r4 = final_state(h / 4.0);
  StepHalving out;
  out.error_h = (r1 - r2).norm();
  out.error_half = (r2 - r4).norm();
  out.ratio = out.error_half > 0.0 ? out.error_h / out.error_half : 0.0;
  return out;
}

ComplexMatrix build_superoperator(const LindbladGenerator& gen) {
  const Index d = gen.dim();
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  const ComplexMatrix& a = gen.drift();
  ComplexMatrix s = kron(id, a) + kron(a.conjugate(), id);
  for (const ComplexMatrix& l : gen.jumps()) s += kron(l.conjugate(), l);
  return s;
}

SteadyState steady_state(const LindbladGenerator& gen) {
  const Index d = gen.dim();
  const Index n = d * d;
  const ComplexMatrix s = build_superoperator(gen);

  const RealVector sigma = Eigen::BDCSVD<ComplexMatrix>(s).singularValues();
  int kernel = 0;
  if (sigma(0) == 0.0) {
    kernel = static_cast<int>(n);
  } else {
    for (Index i = 0; i < n; ++i) {
      if (sigma(i) < kKernelTolerance * sigma(0)) ++kernel;
    }
  }

  ComplexMatrix system(n + 1, n);
  system.topRows(n) = s;
  system.row(n) = vectorize(ComplexMatrix::Identity(d, d)).transpose();
  ComplexVector rhs = ComplexVector::Zero(n + 1);
  rhs(n) = 1.0;
  const ComplexVector x = Eigen::CompleteOrthogonalDecomposition<ComplexMatrix>(system).solve(rhs);
  const double ls_residual = (system * x - rhs).norm();
  if (!(ls_residual <= kNoSteadyStateResidual)) {
    std::ostringstream os;
    os << "steady_state: least-squares residual " << ls_residual << " (kernel dimension " << kernel
       << ")";
    throw Error(ErrorCode::NoSteadyState, os.str());
  }

  ComplexMatrix rho = hermitian_part(devectorize(x, d));
  rho /= rho.trace().real();
  const double min_eig = hermitian_eig(rho).eigenvalues(0);
  if (min_eig < -kKernelTolerance) {
    std::ostringstream os;
    os << "steady_state: kernel dimension " << kernel << ", solution has eigenvalue " << min_eig;
    throw Error(kernel > 1 ? ErrorCode::NonUniqueKernel : ErrorCode::NoSteadyState, os.str());
  }
  const double residual = gen.apply(rho).norm();
  return {DensityMatrix(rho, kKernelTolerance), kernel, residual, min_eig};
}

bool dsf_hermitian_closure(const std::vector<ComplexMatrix>& jumps) {
  if (jumps.empty()) return true;
  require_square(jumps.front(), "dsf_hermitian_closure");
  const Index d = jumps.front().rows();
  require_matching_ops(jumps, d, "dsf_hermitian_closure");
  const Index k = static_cast<Index>(jumps.size());
  ComplexMatrix span(d * d, 1 + 2 * k);
  span.col(0) = vectorize(ComplexMatrix::Identity(d, d));
  for (Index j = 0; j < k; ++j) {
    span.col(1 + j) = vectorize(jumps[j]);
    span.col(1 + k + j) = vectorize(jumps[j].adjoint());
  }
  return numerical_rank(span.leftCols(1 + k), kClosureRankTolerance) ==
         numerical_rank(span, kClosureRankTolerance);
}

}  // namespace lyap

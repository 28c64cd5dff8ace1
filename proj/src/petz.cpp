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

#include "lyap/petz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "lyap/error.hpp"
#include "lyap/quadrature.hpp"

namespace lyap {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// sum_k ||[x, L_k] w||_F^2 = sum_k Tr([x, L_k] rho [x, L_k]^dagger) for w w^dagger = rho.
double commutator_dissipation(const ComplexMatrix& x, const std::vector<ComplexMatrix>& jumps,
                              const ComplexMatrix& w) {
  double sum = 0.0;
  for (const ComplexMatrix& l : jumps) {
    require_same_dim(x, l, "dissipation");
    const ComplexMatrix c = x * l - l * x;
    sum += (c * w).squaredNorm();
  }
  return sum;
}

ComplexMatrix sqrt_weighted_basis(const HermitianEigen& eig) {
  return eig.unitary * eig.eigenvalues.cwiseMax(0.0).cwiseSqrt().cast<Complex>().asDiagonal();
}

}  // namespace

PetzMeasure::PetzMeasure(std::vector<PetzAtom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw Error(ErrorCode::InvalidArgument, "PetzMeasure: no atoms");
  for (const PetzAtom& a : atoms_) {
    if (!(a.s >= 0.0 && a.s <= 1.0)) {
      std::ostringstream os;
      os << "PetzMeasure: atom position " << a.s << " outside [0, 1]";
      throw Error(ErrorCode::InvalidArgument, os.str());
    }
    if (!(a.w > 0.0) || !std::isfinite(a.w)) {
      std::ostringstream os;
      os << "PetzMeasure: atom weight " << a.w << " is not positive";
      throw Error(ErrorCode::InvalidArgument, os.str());
    }
  }
}

PetzMeasure PetzMeasure::atom(double s, double w) { return PetzMeasure({{s, w}}); }

PetzMeasure PetzMeasure::from_density(const std::function<double(double)>& density, int nodes) {
  const QuadratureRule rule = gauss_legendre(nodes, 0.0, 1.0);
  std::vector<PetzAtom> atoms;
  atoms.reserve(rule.size());
  for (std::size_t j = 0; j < rule.size(); ++j) {
    atoms.push_back({rule.nodes[j], rule.weights[j] * density(rule.nodes[j])});
  }
  return PetzMeasure(std::move(atoms));
}

double PetzMeasure::f_at_one() const {
  double f = 0.0;
  for (const PetzAtom& a : atoms_) f += a.w / (1.0 + a.s);
  return f;
}

PetzMeasure random_measure(Rng& rng, int n_atoms) {
  std::vector<PetzAtom> atoms;
  for (int k = 0; k < n_atoms; ++k) {
    const double s = rng.uniform(0.0, 1.0);
    const double w = rng.uniform(0.1, 1.0);
    atoms.push_back({s, w});
  }
  return PetzMeasure(std::move(atoms));
}

double petz_norm_sq(const SpectralSylvester& rho, const ComplexMatrix& delta, const PetzMeasure& m) {
  const HermitianEigen& eig = rho.eigen();
  require_same_dim(eig.unitary, delta, "petz_norm_sq");
  const ComplexMatrix delta_eig = eig.to_eigenbasis(delta);
  double sum = 0.0;
  for (const PetzAtom& a : m.atoms()) {
    const ComplexMatrix omega = rho.solve_in_eigenbasis(delta_eig, a.s);
    // Re Tr(delta omega) = Tr(delta (omega + omega^dagger) / 2) for Hermitian delta.
    sum += a.w * (delta_eig.transpose().cwiseProduct(omega)).sum().real();
  }
  return sum;
}

double petz_norm_sq(const DensityMatrix& rho, const TangentPerturbation& delta,
                    const PetzMeasure& m) {
  return petz_norm_sq(SpectralSylvester(rho.matrix()), delta.matrix(), m);
}

double operator_monotone_f(const PetzMeasure& m, double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    std::ostringstream os;
    os << "operator_monotone_f: x = " << x << " is not positive";
    throw Error(ErrorCode::DomainViolation, os.str());
  }
  double f = 0.0;
  for (const PetzAtom& a : m.atoms()) f += a.w * (1.0 / (a.s * x + 1.0) + 1.0 / (a.s + x));
  return 0.5 * f;
}

Complex sylvester_pairing(const DensityMatrix& rho, const TangentPerturbation& delta, double s) {
  const ComplexMatrix omega = solve_sylvester_weighted(rho.matrix(), delta.matrix(), s);
  return (delta.matrix() * omega).trace();
}

DissipationTerms dissipation_terms(const DensityMatrix& rho, const TangentPerturbation& delta,
                                   double s, const std::vector<ComplexMatrix>& jumps) {
  const SpectralSylvester sylvester(rho.matrix());
  const ComplexMatrix omega = sylvester.solve(delta.matrix(), s);
  const ComplexMatrix w = sqrt_weighted_basis(sylvester.eigen());
  return {commutator_dissipation(omega, jumps, w),
          commutator_dissipation(omega.adjoint(), jumps, w)};
}

double sylvester_pairing_rate(const DensityMatrix& rho, const TangentPerturbation& delta, double s,
                              const std::vector<ComplexMatrix>& jumps) {
  const DissipationTerms terms = dissipation_terms(rho, delta, s, jumps);
  return -(s * terms.d1 + terms.d2);
}

BuresLyapunov::BuresLyapunov(const DensityMatrix& rho_inf)
    : rho_inf_(rho_inf),
      sylvester_(rho_inf.matrix()),
      sqrt_weighted_(sqrt_weighted_basis(sylvester_.eigen())) {}

BuresValue BuresLyapunov::evaluate(const ComplexMatrix& rho) const {
  const HermitianEigen& eig = sylvester_.eigen();
  require_same_dim(eig.unitary, rho, "bures_lyapunov");
  const ComplexMatrix delta_eig = eig.to_eigenbasis(rho - rho_inf_.matrix());
  const ComplexMatrix g_eig = hermitian_part(sylvester_.solve_in_eigenbasis(delta_eig, 1.0));
  // Tr(Lambda G'^2) = sum_ij lambda_i |G'_ij|^2.
  double v = 0.0;
  for (Index j = 0; j < g_eig.cols(); ++j) {
    for (Index i = 0; i < g_eig.rows(); ++i) v += eig.eigenvalues(i) * std::norm(g_eig(i, j));
  }
  return {v, hermitian_part(eig.from_eigenbasis(g_eig))};
}

double BuresLyapunov::value(const ComplexMatrix& rho) const { return evaluate(rho).v; }

double BuresLyapunov::rate(const BuresValue& at, const LindbladGenerator& gen) const {
  return -commutator_dissipation(at.g, gen.jumps(), sqrt_weighted_);
}

double BuresLyapunov::rate(const ComplexMatrix& rho, const LindbladGenerator& gen) const {
  return rate(evaluate(rho), gen);
}

double BuresLyapunov::equilibrium_residual(const LindbladGenerator& gen) const {
  return gen.apply(rho_inf_.matrix()).norm();
}

BuresValue bures_lyapunov(const DensityMatrix& rho_inf, const DensityMatrix& rho) {
  return BuresLyapunov(rho_inf).evaluate(rho.matrix());
}

double bures_lyapunov_rate(const DensityMatrix& rho_inf, const DensityMatrix& rho,
                           const LindbladGenerator& gen) {
  return BuresLyapunov(rho_inf).rate(rho.matrix(), gen);
}

ContractionTrace contraction_trace(const LindbladGenerator& gen, const DensityMatrix& rho0,
                                   const TangentPerturbation& delta0, const PetzMeasure& m,
                                   double t_end, double h, long stride) {
  if (stride < 1) throw Error(ErrorCode::InvalidArgument, "stride must be >= 1");
  const long steps = step_count(t_end, h);
  ContractionTrace trace;
  double initial = 0.0;
  double previous = 0.0;
  propagate(gen, rho0.matrix(), delta0.matrix(), t_end, h,
            [&](long step, double t, const ComplexMatrix& rho, const ComplexMatrix* delta) {
              double value = 0.0;
              try {
                value = petz_norm_sq(SpectralSylvester(rho), *delta, m);
              } catch (const Error& e) {
                if (e.code() != ErrorCode::SingularRho) throw;
                std::ostringstream os;
                os << "contraction_trace: rho(t) singular at t = " << t << ": " << e.what();
                throw Error(ErrorCode::PositivityLost, os.str());
              }
              if (step == 0) {
                initial = value;
              } else {
                const double increase = initial > 0.0 ? (value - previous) / initial : value - previous;
                trace.worst_increase = step == 1 ? increase : std::max(trace.worst_increase, increase);
                if (value - previous > kContractionSlack * initial) trace.monotone = false;
              }
              previous = value;
              if (step % stride == 0 || step == steps) {
                trace.times.push_back(t);
                trace.values.push_back(value);
              }
            });
  return trace;
}

LyapunovVerdict summarize(const std::vector<LyapunovSample>& samples) {
  LyapunovVerdict verdict;
  if (samples.empty()) return verdict;
  verdict.certified = std::all_of(samples.begin(), samples.end(),
                                  [](const LyapunovSample& s) { return std::isfinite(s.v); });
  const LyapunovSample& last = samples.back();
  verdict.final_v = last.v;
  verdict.final_d_trace = last.d_trace;
  verdict.final_d_bures = last.d_bures;
  if (!verdict.certified) {
    verdict.monotone = false;
    verdict.strict = false;
    verdict.worst_increase = kNaN;
    verdict.max_rate = kNaN;
    verdict.worst_fd_relative_error = kNaN;
    return verdict;
  }

  bool any_pair = false;
  for (std::size_t k = 1; k < samples.size(); ++k) {
    if (!(samples[k - 1].v > kLyapunovFloor)) continue;
    const double increase = samples[k].v - samples[k - 1].v;
    verdict.worst_increase = any_pair ? std::max(verdict.worst_increase, increase) : increase;
    any_pair = true;
  }
  verdict.monotone = !any_pair || verdict.worst_increase < 0.0;

  bool any_strict = false;
  for (const LyapunovSample& s : samples) {
    if (!(s.v > kStrictnessThreshold)) continue;
    verdict.max_rate = any_strict ? std::max(verdict.max_rate, s.rate) : s.rate;
    any_strict = true;
    if (!std::isfinite(s.rate_fd)) continue;
    const double error = std::abs(s.rate - s.rate_fd) / std::abs(s.rate_fd);
    verdict.worst_fd_relative_error = std::max(verdict.worst_fd_relative_error, error);
  }
  verdict.strict = !any_strict || verdict.max_rate < 0.0;
  return verdict;
}

LyapunovTrack track_bures_lyapunov(const LindbladGenerator& gen, const DensityMatrix& rho_inf,
                                   const DensityMatrix& rho0, double t_end, double h, long stride) {
  if (stride < 1) throw Error(ErrorCode::InvalidArgument, "stride must be >= 1");
  require_same_dim(gen.hamiltonian(), rho_inf.matrix(), "track_bures_lyapunov");
  const long steps = step_count(t_end, h);

  std::optional<BuresLyapunov> lyapunov;
  try {
    lyapunov.emplace(rho_inf);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SingularRho) throw;
  }

  std::vector<double> v(static_cast<std::size_t>(steps) + 1, kNaN);
  std::vector<long> sampled_steps;
  LyapunovTrack track;
  propagate(gen, rho0.matrix(), std::nullopt, t_end, h,
            [&](long step, double t, const ComplexMatrix& rho, const ComplexMatrix*) {
              const bool sampled = step % stride == 0 || step == steps;
              if (!lyapunov && !sampled) return;
              LyapunovSample sample;
              sample.t = t;
              sample.rate = kNaN;
              sample.rate_fd = kNaN;
              if (lyapunov) {
                const BuresValue at = lyapunov->evaluate(rho);
                v[step] = at.v;
                if (!sampled) return;
                sample.rate = lyapunov->rate(at, gen);
              }
              sample.v = v[step];
              const DensityMatrix state(rho, kPositivityFloor);
              sample.d_trace = distance(DistanceKind::Trace, state, rho_inf);
              sample.d_bures = distance(DistanceKind::Bures, state, rho_inf);
              sample.min_eig = hermitian_eig(rho).eigenvalues(0);
              sample.trace_defect = std::abs(rho.trace().real() - 1.0);
              track.samples.push_back(sample);
              sampled_steps.push_back(step);
            });

  if (lyapunov) {
    // Five-point central differences; NaN where the stencil does not fit.
    for (std::size_t k = 0; k < sampled_steps.size(); ++k) {
      const long n = sampled_steps[k];
      if (n < 2 || n + 2 > steps) continue;
      track.samples[k].rate_fd = (v[n - 2] - 8.0 * v[n - 1] + 8.0 * v[n + 1] - v[n + 2]) / (12.0 * h);
    }
  }
  track.verdict = summarize(track.samples);
  return track;
}

}  // namespace lyap

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

#include "lyap/cat_reservoir.hpp"

#include <cmath>
#include <sstream>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "lyap/error.hpp"
#include "lyap/parallel.hpp"
#include "lyap/quadrature.hpp"

namespace lyap {

namespace {

ComplexVector kerr_phases(double phi, double f_phi, Index dim) {
  ComplexVector phases(dim);
  for (Index n = 0; n < dim; ++n) {
    const double x = static_cast<double>(n);
    phases(n) = std::polar(1.0, std::fmod(phi * x * x + f_phi * x, 2.0 * std::numbers::pi));
  }
  return phases;
}

// e^{-i h} M e^{i h} for diagonal phases e^{i h}.
ComplexMatrix conjugate_by_phases(const ComplexMatrix& m, const ComplexVector& phases) {
  return phases.conjugate().asDiagonal() * m * phases.asDiagonal();
}

// P|z> without renormalization.
ComplexVector projected_coherent(double z, int nmax) {
  ComplexVector v(nmax + 1);
  v(0) = std::exp(-0.5 * z * z);
  for (int n = 1; n <= nmax; ++n) v(n) = v(n - 1) * (z / std::sqrt(static_cast<double>(n)));
  return v;
}

void require_finite(double x, const char* name) {
  if (!std::isfinite(x)) {
    std::ostringstream os;
    os << name << " must be finite";
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
}

}  // namespace

void CatReservoirParams::validate() const {
  for (auto [value, name] : {std::pair{u, "u"}, {theta, "theta"}, {phi, "phi"}, {f_phi, "f_phi"},
                             {beta, "beta"}, {kappa, "kappa"}, {kappa_c, "kappa_c"}}) {
    require_finite(value, name);
  }
  if (u < 0.0 || u > 2.0 * std::numbers::pi || theta < 0.0 || theta > 2.0 * std::numbers::pi) {
    throw Error(ErrorCode::InvalidArgument, "u and theta must lie in [0, 2 pi]");
  }
  if (beta < 0.0) throw Error(ErrorCode::InvalidArgument, "beta must be >= 0");
  if (!(kappa > 0.0)) throw Error(ErrorCode::InvalidArgument, "kappa must be > 0");
  if (kappa_c < 0.0) throw Error(ErrorCode::InvalidArgument, "kappa_c must be >= 0");
  if (nmax < 2) throw Error(ErrorCode::InvalidDimension, "nmax must be >= 2");
}

std::vector<std::string> CatReservoirParams::warnings() const {
  std::vector<std::string> out;
  const double a2 = alpha_c() * alpha_c();
  if (a2 >= nmax / 4.0) {
    std::ostringstream os;
    os << "truncation guard: alpha_c^2 = " << a2 << " >= nmax/4 = " << nmax / 4.0;
    out.push_back(os.str());
  }
  const double tail = a2 > 0.0 ? boost::math::gamma_p(nmax + 1.0, a2) : 0.0;
  if (tail > kTruncationTailTolerance) {
    std::ostringstream os;
    os << "coherent tail mass of |alpha_c> beyond nmax is " << tail;
    out.push_back(os.str());
  }
  return out;
}

KrausMap bar_kraus_operators(const CatReservoirParams& p) {
  if (p.nmax < 2) throw Error(ErrorCode::InvalidDimension, "bar_kraus_operators: nmax must be >= 2");
  const Index d = p.nmax + 1;
  const double cu = std::cos(p.u / 2.0);
  const double su = std::sin(p.u / 2.0);
  auto half_angle = [&](Index n) { return p.theta * std::sqrt(static_cast<double>(n)) / 2.0; };
  ComplexMatrix m1 = ComplexMatrix::Zero(d, d);
  ComplexMatrix m2 = ComplexMatrix::Zero(d, d);
  for (Index n = 0; n < d; ++n) {
    m1(n, n) = cu * std::cos(half_angle(n));
    m2(n, n) = su * std::cos(half_angle(n + 1));
    // sin(theta sqrt(N)/2)/sqrt(N) a^dagger: |n> -> sin(theta sqrt(n+1)/2) |n+1>.
    if (n + 1 < d) m1(n + 1, n) = su * std::sin(half_angle(n + 1));
    // a sin(theta sqrt(N)/2)/sqrt(N): |n> -> sin(theta sqrt(n)/2) |n-1>.
    if (n >= 1) m2(n - 1, n) = -cu * std::sin(half_angle(n));
  }
  return KrausMap({m1, m2});
}

KrausMap kraus_operators(const CatReservoirParams& p) {
  const KrausMap bar = bar_kraus_operators(p);
  const ComplexVector phases = kerr_phases(p.phi, p.f_phi, bar.dim());
  std::vector<ComplexMatrix> ops;
  for (const ComplexMatrix& m : bar.ops()) ops.push_back(conjugate_by_phases(m, phases));
  return KrausMap(std::move(ops));
}

DensityMatrix kerr_frame(const DensityMatrix& rho, double phi, double f_phi, FrameDirection dir) {
  ComplexVector phases = kerr_phases(phi, f_phi, rho.dim());
  if (dir == FrameDirection::FromBar) phases = phases.conjugate();
  return DensityMatrix(phases.asDiagonal() * rho.matrix() * phases.conjugate().asDiagonal());
}

double kerr_frame_equivalence_defect(const CatReservoirParams& p, const DensityMatrix& rho,
                                     int iterations) {
  const KrausMap direct = kraus_operators(p);
  const KrausMap bar = bar_kraus_operators(p);
  if (rho.dim() != direct.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "kerr_frame_equivalence_defect: state dimension");
  }
  ComplexMatrix x = rho.matrix();
  ComplexMatrix y = kerr_frame(rho, p.phi, p.f_phi, FrameDirection::ToBar).matrix();
  const ComplexVector phases = kerr_phases(p.phi, p.f_phi, rho.dim());
  double worst = 0.0;
  for (int k = 0; k < iterations; ++k) {
    x = apply_kraus(direct, x);
    y = apply_kraus(bar, y);
    const ComplexMatrix back = phases.conjugate().asDiagonal() * y * phases.asDiagonal();
    worst = std::max(worst, (x - back).norm());
  }
  return worst;
}

LindbladGenerator generator_eq16(Complex beta, double kappa, int nmax) {
  if (!(kappa > 0.0)) throw Error(ErrorCode::InvalidArgument, "generator_eq16: kappa must be > 0");
  const OscillatorOps ops = oscillator_ops(nmax);
  const ComplexMatrix h = Complex(0.0, 1.0) * (beta * ops.a.adjoint() - std::conj(beta) * ops.a);
  return LindbladGenerator(hermitian_part(h), {std::sqrt(kappa) * ops.a});
}

LindbladGenerator generator_eq18(double beta, double kappa, double kappa_c, int nmax) {
  if (kappa < 0.0 || kappa_c < 0.0 || !(kappa + kappa_c > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "generator_eq18: need kappa, kappa_c >= 0 and kappa + kappa_c > 0");
  }
  const OscillatorOps ops = oscillator_ops(nmax);
  const ComplexMatrix h = Complex(0.0, beta) * (ops.a.adjoint() - ops.a);
  std::vector<ComplexMatrix> jumps;
  if (kappa > 0.0) jumps.push_back(std::sqrt(kappa) * ops.a);
  if (kappa_c > 0.0) jumps.push_back(std::sqrt(kappa_c) * (ops.parity_rotation * ops.a));
  return LindbladGenerator(hermitian_part(h), std::move(jumps));
}

LindbladGenerator generator_eq18(const CatReservoirParams& p) {
  return generator_eq18(p.beta, p.kappa, p.kappa_c, p.nmax);
}

EquilibriumDensity::EquilibriumDensity(double beta, double kappa, double kappa_c) {
  require_finite(beta, "beta");
  require_finite(kappa, "kappa");
  require_finite(kappa_c, "kappa_c");
  if (!(beta > 0.0)) throw Error(ErrorCode::InvalidArgument, "equilibrium density: beta must be > 0");
  if (kappa < 0.0 || kappa_c < 0.0 || !(kappa + kappa_c > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "equilibrium density: need kappa, kappa_c >= 0, kappa + kappa_c > 0");
  }
  alpha_ = 2.0 * beta / (kappa + kappa_c);
  r_ = 2.0 * kappa_c / (kappa + kappa_c);
  if (!(endpoint_exponent() > -1.0)) {
    std::ostringstream os;
    os << "equilibrium density: exponent " << endpoint_exponent()
       << " at z = alpha_c makes the normalization diverge";
    throw Error(ErrorCode::NonIntegrable, os.str());
  }
  const double b = alpha_ * alpha_ * r_;
  log_shift_ = b * std::log(2.0 * alpha_) + r_ * alpha_ * alpha_;
  norm_ = distance_integral(-alpha_, alpha_);
}

double EquilibriumDensity::log_unnormalized(double z) const {
  const double b = alpha_ * alpha_ * r_;
  return endpoint_exponent() * std::log(alpha_ - z) + b * std::log(alpha_ + z) + r_ * z * z;
}

double EquilibriumDensity::distance_integral(double lo, double hi) const {
  const double a = alpha_;
  const double b = a * a * r_;
  const double e = endpoint_exponent();
  boost::math::quadrature::tanh_sinh<double> integrator;
  double total = 0.0;
  // Left half in t = alpha + z, which vanishes like t^b at z = -alpha_c.
  if (lo < 0.0) {
    const double t_lo = a + lo;
    const double t_hi = a + std::min(hi, 0.0);
    if (t_hi > t_lo) {
      auto f = [&](double t) {
        if (t <= 0.0) return 0.0;
        return std::exp(e * std::log(2.0 * a - t) + b * std::log(t) + r_ * (t - a) * (t - a) -
                        log_shift_);
      };
      total += integrator.integrate(f, t_lo, t_hi);
    }
  }
  // Right half in v = (alpha - z)^(e+1): u^e du = dv / (e+1) absorbs the
  // endpoint power exactly.
  if (hi > 0.0) {
    const double p = e + 1.0;
    const double v_lo = std::pow(a - hi, p);
    const double v_hi = std::pow(a - std::max(lo, 0.0), p);
    if (v_hi > v_lo) {
      auto f = [&](double v) {
        const double u = std::pow(std::max(v, 0.0), 1.0 / p);
        return std::exp(b * std::log(2.0 * a - u) + r_ * (a - u) * (a - u) - log_shift_) / p;
      };
      total += integrator.integrate(f, v_lo, v_hi);
    }
  }
  return total;
}

double EquilibriumDensity::operator()(double z) const {
  if (!(z >= -alpha_ && z < alpha_)) {
    std::ostringstream os;
    os << "equilibrium density: z = " << z << " outside [-alpha_c, alpha_c) with alpha_c = " << alpha_;
    throw Error(ErrorCode::DomainViolation, os.str());
  }
  if (z == -alpha_) return 0.0;
  return std::exp(log_unnormalized(z) - log_shift_) / norm_;
}

double EquilibriumDensity::mass(double lo, double hi) const {
  lo = std::max(lo, -alpha_);
  hi = std::min(hi, alpha_);
  if (!(hi > lo)) return 0.0;
  return distance_integral(lo, hi) / norm_;
}

double equilibrium_mu(double z, double beta, double kappa, double kappa_c) {
  return EquilibriumDensity(beta, kappa, kappa_c)(z);
}

EquilibriumState equilibrium_state(const CatReservoirParams& p, int nodes) {
  p.validate();
  const EquilibriumDensity mu(p.beta, p.kappa, p.kappa_c);
  const double a = mu.alpha_c();
  const double r = mu.rate_ratio();
  const double b = a * a * r;
  const double e = mu.endpoint_exponent();
  // z = alpha_c x turns (alpha_c - z)^e (alpha_c + z)^b into the Jacobi weight.
  const QuadratureRule rule = gauss_jacobi(nodes, e, b);
  const Index d = p.nmax + 1;
  ComplexMatrix rho = ComplexMatrix::Zero(d, d);
  double weight_sum = 0.0;
  for (std::size_t j = 0; j < rule.size(); ++j) {
    const double x = rule.nodes[j];
    const double w = rule.weights[j] * std::exp(r * a * a * (x * x - 1.0));
    const ComplexVector v = projected_coherent(a * x, p.nmax);
    rho.noalias() += w * (v * v.adjoint());
    weight_sum += w;
  }
  rho = hermitian_part(rho);
  rho /= rho.trace().real();

  // alpha^(1+e+b) sum_j w_j e^{r alpha^2 x_j^2} estimates int g dz.
  const double log_integral =
      (1.0 + e + b) * std::log(a) + r * a * a + std::log(weight_sum);
  const double norm = std::exp(log_integral - mu.log_normalization());

  const double min_eig = hermitian_eig(rho).eigenvalues(0);
  const double residual = generator_eq18(p).apply(rho).norm();
  return {DensityMatrix(rho), min_eig, min_eig > 0.0, residual, norm};
}

ConvergenceReport convergence_experiment(const CatReservoirParams& p,
                                         const std::vector<DensityMatrix>& initial_states,
                                         double t_end, double h, long stride, int jobs) {
  p.validate();
  const LindbladGenerator gen = generator_eq18(p);
  ConvergenceReport report{steady_state(gen), false, 0.0, {}, false};
  report.full_rank = report.steady.min_eigenvalue > kRankTolerance;
  report.equilibrium_residual = report.steady.residual;
  report.runs.resize(initial_states.size());
  parallel_for(initial_states.size(), jobs, [&](std::size_t i) {
    ConvergenceRun& run = report.runs[i];
    run.track = track_bures_lyapunov(gen, report.steady.rho, initial_states[i], t_end, h, stride);
    const LyapunovVerdict& v = run.track.verdict;
    run.passed = v.certified && v.monotone && v.strict && v.final_d_bures < kFinalBuresTolerance;
  });
  report.all_passed = report.full_rank;
  for (const ConvergenceRun& run : report.runs) report.all_passed = report.all_passed && run.passed;
  return report;
}

double kraus_lindblad_consistency(double u, double theta, int nmax, int steps) {
  if (steps < 1) throw Error(ErrorCode::InvalidArgument, "kraus_lindblad_consistency: steps < 1");
  if (theta == 0.0) return 0.0;
  constexpr double kappa = 1.0;
  const double dt = theta * theta / (4.0 * kappa);
  const double beta = u * theta / (4.0 * dt);
  CatReservoirParams p;
  p.u = u;
  p.theta = theta;
  p.nmax = nmax;
  const KrausMap kraus = bar_kraus_operators(p);
  const LindbladGenerator gen = generator_eq16(beta, kappa, nmax);
  const Index d = nmax + 1;
  double worst = 0.0;
  for (const DensityMatrix& probe : {DensityMatrix::fock(d, 0), DensityMatrix::maximally_mixed(d)}) {
    ComplexMatrix discrete = probe.matrix();
    for (int k = 0; k < steps; ++k) discrete = apply_kraus(kraus, discrete);
    ComplexMatrix continuous;
    propagate(gen, probe.matrix(), std::nullopt, dt * steps, dt,
              [&](long, double, const ComplexMatrix& rho, const ComplexMatrix*) { continuous = rho; });
    worst = std::max(worst, trace_norm(hermitian_part(discrete - continuous)));
  }
  return worst;
}

int commutant_dimension(const ComplexMatrix& a) {
  require_square(a, "commutant_dimension");
  const Index d = a.rows();
  // Real basis of Hermitian matrices, mapped through G -> G A - A G and
  // flattened to real vectors of length 2 d^2.
  Eigen::MatrixXd map(2 * d * d, d * d);
  Index col = 0;
  auto add = [&](const ComplexMatrix& g) {
    const ComplexMatrix c = g * a - a * g;
    for (Index j = 0; j < d; ++j) {
      for (Index i = 0; i < d; ++i) {
        map(2 * (j * d + i), col) = c(i, j).real();
        map(2 * (j * d + i) + 1, col) = c(i, j).imag();
      }
    }
    ++col;
  };
  for (Index i = 0; i < d; ++i) {
    for (Index j = i; j < d; ++j) {
      ComplexMatrix g = ComplexMatrix::Zero(d, d);
      if (i == j) {
        g(i, i) = 1.0;
        add(g);
        continue;
      }
      g(i, j) = 1.0;
      g(j, i) = 1.0;
      add(g);
      g(i, j) = Complex(0.0, 1.0);
      g(j, i) = Complex(0.0, -1.0);
      add(g);
    }
  }
  const RealVector sigma = Eigen::BDCSVD<Eigen::MatrixXd>(map).singularValues();
  if (sigma(0) == 0.0) return static_cast<int>(d * d);
  int kernel = 0;
  for (Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) < kClosureRankTolerance * sigma(0)) ++kernel;
  }
  return kernel;
}

}  // namespace lyap

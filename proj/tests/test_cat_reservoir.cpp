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

#include <cmath>
#include <numbers>

#include <doctest.h>
#include <Eigen/Eigenvalues>

#include "lyap/cat_reservoir.hpp"
#include "lyap/error.hpp"
#include "lyap/random.hpp"
#include "test_util.hpp"

using namespace lyap;
using lyap::test::frob;

namespace {

// The reservoir master equation written out term by term.
ComplexMatrix transcribed_rhs(double beta, double kappa, double kappa_c, int nmax, const ComplexMatrix& rho) {
  const OscillatorOps o = oscillator_ops(nmax);
  const ComplexMatrix& a = o.a;
  const ComplexMatrix ad = a.adjoint();
  const ComplexMatrix& n = o.number;
  const ComplexMatrix& p = o.parity_rotation;
  const ComplexMatrix drive = ad - a;
  const ComplexMatrix ara = a * rho * ad;
  return beta * (drive * rho - rho * drive) - (kappa + kappa_c) / 2.0 * (n * rho + rho * n - 2.0 * ara) -
         kappa_c * (ara - p * ara * p.adjoint());
}

// Unnormalized equilibrium weight, straight from its defining formula.
double mu_shape(double z, double beta, double kappa, double kappa_c) {
  const double ac = 2 * beta / (kappa + kappa_c);
  return std::pow(std::pow(ac * ac - z * z, ac * ac) * std::exp(z * z), 2 * kappa_c / (kappa + kappa_c)) / (ac - z);
}

double expect(const ComplexMatrix& op, const ComplexMatrix& rho) { return (op * rho).trace().real(); }

}  // namespace

TEST_CASE("params validation and warnings") {
  CatReservoirParams p;
  CHECK_NOTHROW(p.validate());
  CHECK(p.alpha_c() == doctest::Approx(2.0));
  p.nmax = 1;
  CHECK_THROWS_AS(p.validate(), Error);
  p.nmax = 10;
  CHECK_FALSE(p.warnings().empty());
  p.nmax = 30;
  CHECK(p.warnings().empty());
}

TEST_CASE("bar_kraus_operators") {
  CatReservoirParams p;
  p.u = 0.0;
  p.theta = 0.0;
  p.nmax = 6;
  const KrausMap zero = bar_kraus_operators(p);
  CHECK(frob(zero.ops()[0] - ComplexMatrix::Identity(7, 7)) < 1e-15);
  CHECK(frob(zero.ops()[1]) < 1e-15);

  Rng rng(61);
  for (int trial = 0; trial < 5; ++trial) {
    p.u = rng.uniform(0, std::numbers::pi);
    p.theta = rng.uniform(0, 2);
    const KrausMap k = bar_kraus_operators(p);
    ComplexMatrix sum = ComplexMatrix::Zero(7, 7);
    for (const ComplexMatrix& m : k.ops()) sum += m.adjoint() * m;
    for (int n = 0; n < p.nmax; ++n) CHECK(std::abs(sum(n, n) - 1.0) < 1e-14);
    CHECK(frob(sum.topLeftCorner(6, 6) - ComplexMatrix::Identity(6, 6)) < 1e-14);
  }

  p.u = std::numbers::pi;
  p.theta = 0.1;
  const OscillatorOps o = oscillator_ops(p.nmax);
  const ComplexMatrix after = apply_kraus(bar_kraus_operators(p), DensityMatrix::fock(7, 0).matrix());
  CHECK(expect(o.number, after) > 0.0);

  p.nmax = 1;
  CHECK_THROWS_AS(bar_kraus_operators(p), Error);
}

TEST_CASE("kraus_operators and the Kerr frame") {
  CatReservoirParams p;
  p.nmax = 8;
  p.phi = 0.0;
  p.f_phi = 0.0;
  const KrausMap bar = bar_kraus_operators(p);
  const KrausMap plain = kraus_operators(p);
  for (std::size_t k = 0; k < 2; ++k) CHECK(frob(plain.ops()[k] - bar.ops()[k]) < 1e-15);

  p.phi = 0.7;
  p.f_phi = -0.3;
  const KrausMap rotated = kraus_operators(p);
  for (std::size_t k = 0; k < 2; ++k) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> a(rotated.ops()[k].adjoint() * rotated.ops()[k]);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> b(bar.ops()[k].adjoint() * bar.ops()[k]);
    CHECK((a.eigenvalues() - b.eigenvalues()).norm() < 1e-13);
  }
  CHECK(std::abs(rotated.trace_defect() - bar.trace_defect()) < 1e-13);

  Rng rng(62);
  const DensityMatrix rho(random_density(rng, 9));
  CHECK(frob(kerr_frame(rho, 0.0, 0.0, FrameDirection::ToBar).matrix() - rho.matrix()) < 1e-15);
  const DensityMatrix diag_rho(ComplexMatrix(rho.matrix().diagonal().asDiagonal()));
  CHECK(frob(kerr_frame(diag_rho, 0.7, 0.2, FrameDirection::ToBar).matrix() - diag_rho.matrix()) < 1e-15);
  const DensityMatrix there = kerr_frame(rho, 0.7, 0.2, FrameDirection::ToBar);
  CHECK(frob(kerr_frame(there, 0.7, 0.2, FrameDirection::FromBar).matrix() - rho.matrix()) < 1e-12);
  CHECK(kerr_frame_equivalence_defect(p, rho, 5) < 1e-10);
}

TEST_CASE("generator_eq16") {
  // Coherent state at alpha_c = 2 beta / kappa is stationary up to truncation;
  // at alpha_c = 2 the tail drops below 1e-5 from nmax = 24 on.
  for (int nmax : {24, 30}) {
    const LindbladGenerator g = generator_eq16(1.0, 1.0, nmax);
    const DensityMatrix coh = DensityMatrix::pure(coherent_state(2.0, nmax).ket);
    CAPTURE(nmax);
    CHECK(frob(lindblad_rhs(g, coh)) < 1e-5);
  }
  // beta = 0: pure loss.
  const SteadyState ss = steady_state(generator_eq16(0.0, 1.0, 6));
  CHECK(frob(ss.rho.matrix() - DensityMatrix::fock(7, 0).matrix()) < 1e-10);

  // <a>(t) = 2 beta / kappa + (<a>(0) - 2 beta / kappa) e^{-kappa t / 2}.
  const double beta = 0.6, kappa = 1.3;
  const int nmax = 25;
  const OscillatorOps o = oscillator_ops(nmax);
  const Trajectory tr = integrate(generator_eq16(beta, kappa, nmax), DensityMatrix::fock(nmax + 1, 0), 2.0, 1e-3,
                                  std::nullopt, 250);
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    const Complex mean_a = (o.a * tr.states[k].matrix()).trace();
    const double ref = 2 * beta / kappa * (1 - std::exp(-kappa * tr.times[k] / 2));
    CHECK(std::abs(mean_a - ref) < 1e-6);
  }
}

TEST_CASE("generator_eq18 against a term-by-term transcription") {
  Rng rng(63);
  for (double kc : {0.0, 0.4, 1.0}) {
    const LindbladGenerator g = generator_eq18(0.8, 1.1, kc, 7);
    for (int trial = 0; trial < 3; ++trial) {
      const ComplexMatrix rho = random_density(rng, 8);
      CHECK(frob(lindblad_rhs(g, DensityMatrix(rho)) - transcribed_rhs(0.8, 1.1, kc, 7, rho)) < 1e-12);
    }
  }
  const ComplexMatrix rho = random_density(rng, 8);
  CHECK(frob(generator_eq18(0.8, 1.1, 0.0, 7).apply(rho) - generator_eq16(0.8, 1.1, 7).apply(rho)) < 1e-15);
  CHECK_FALSE(dsf_hermitian_closure(generator_eq18(0.8, 1.0, 1.0, 7).jumps()));
}

TEST_CASE("EquilibriumDensity") {
  const double beta = 2.0, kappa = 1.0, kappa_c = 1.0;
  const EquilibriumDensity mu(beta, kappa, kappa_c);
  const double ac = mu.alpha_c();
  CHECK(ac == doctest::Approx(2.0));
  CHECK(mu(-ac) == 0.0);
  CHECK(mu(-ac + 1e-6) < 1e-20);
  CHECK_THROWS_AS(mu(ac), Error);
  CHECK_THROWS_AS(mu(-ac - 0.1), Error);

  // Shape ratios from the defining formula.
  for (double z : {-1.5, -0.3, 0.4, 1.9}) {
    CHECK(mu(z) / mu(0.0) == doctest::Approx(mu_shape(z, beta, kappa, kappa_c) / mu_shape(0.0, beta, kappa, kappa_c))
                                 .epsilon(1e-10));
    CHECK(equilibrium_mu(z, beta, kappa, kappa_c) == doctest::Approx(mu(z)).epsilon(1e-14));
  }

  // Composite Simpson on the (here smooth) density as an independent total.
  const int n = 200000;
  const double step = 2 * ac / n;
  double simpson = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double z = -ac + k * step;
    const double f = k == n ? 0.0 : mu_shape(z, beta, kappa, kappa_c);
    simpson += (k == 0 || k == n ? 1 : (k % 2 ? 4 : 2)) * f;
  }
  simpson *= step / 3;
  CHECK(mu(0.3) == doctest::Approx(mu_shape(0.3, beta, kappa, kappa_c) / simpson).epsilon(1e-8));
  CHECK(mu.mass(-ac, ac) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(mu.mass(-ac, 0.0) + mu.mass(0.0, ac) == doctest::Approx(1.0).epsilon(1e-10));

  // Small parity-loss rate: the weight piles up at alpha_c.
  const EquilibriumDensity sharp(0.5 * 1.001, 1.0, 1e-3);
  CHECK(sharp.alpha_c() == doctest::Approx(1.0));
  CHECK(sharp.mass(0.9 * sharp.alpha_c(), sharp.alpha_c()) >= 0.99);

  CHECK_THROWS_AS(EquilibriumDensity(1.0, 1.0, 0.0), Error);
  try {
    EquilibriumDensity(1.0, 1.0, 0.0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonIntegrable);
  }
  CHECK_THROWS_AS(EquilibriumDensity(-1.0, 1.0, 1.0), Error);
}

TEST_CASE("equilibrium_state agrees with the null-space steady state") {
  CatReservoirParams p;
  p.nmax = 19;
  const EquilibriumState eq = equilibrium_state(p, 400);
  CHECK(eq.residual < 1e-4);
  CHECK(eq.full_rank);
  CHECK(eq.min_eigenvalue > 0.0);
  CHECK(eq.mass == doctest::Approx(1.0).epsilon(1e-8));
  const SteadyState ss = steady_state(generator_eq18(p));
  CHECK(ss.kernel_dimension == 1);
  CHECK(distance(DistanceKind::Bures, eq.rho, ss.rho) < 1e-3);
}

TEST_CASE("convergence_experiment from the equilibrium is flat") {
  CatReservoirParams p;
  p.beta = 1.0;
  p.nmax = 10;
  const SteadyState ss = steady_state(generator_eq18(p));
  const ConvergenceReport rep = convergence_experiment(p, {ss.rho, DensityMatrix::fock(11, 0)}, 10.0, 1e-2, 10, 2);
  REQUIRE(rep.runs.size() == 2);
  CHECK(rep.full_rank);
  for (const LyapunovSample& s : rep.runs[0].track.samples) CHECK(s.v < 1e-18);
  CHECK(rep.runs[1].track.verdict.monotone);
  CHECK(rep.runs[1].track.verdict.strict);
  CHECK(rep.runs[1].track.samples.back().v < rep.runs[1].track.samples.front().v);
}

TEST_CASE("kraus_lindblad_consistency") {
  CHECK(kraus_lindblad_consistency(0.0, 0.0, 10) == 0.0);
  const double coarse = kraus_lindblad_consistency(0.05, 0.05, 20);
  const double fine = kraus_lindblad_consistency(0.025, 0.025, 20);
  CHECK(coarse < 1e-4);
  CHECK(coarse / fine >= 6.0);
}

TEST_CASE("commutant_dimension") {
  for (int nmax : {3, 8}) {
    const int d = nmax + 1;
    CHECK(commutant_dimension(oscillator_ops(nmax).a) == 1);
    CHECK(commutant_dimension(ComplexMatrix::Identity(d, d)) == d * d);
    CHECK(commutant_dimension(oscillator_ops(nmax).number) == d);
  }
}

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

#include <doctest.h>
#include <Eigen/Eigenvalues>

#include "lyap/dynamics.hpp"
#include "lyap/error.hpp"
#include "lyap/random.hpp"
#include "lyap/states.hpp"
#include "test_util.hpp"

using namespace lyap;
using lyap::test::diag;
using lyap::test::frob;

namespace {

// Lindblad right-hand side written out term by term.
ComplexMatrix literal_rhs(const ComplexMatrix& h, const std::vector<ComplexMatrix>& ls, const ComplexMatrix& rho) {
  const Complex i(0, 1);
  ComplexMatrix out = -i * (h * rho - rho * h);
  for (const ComplexMatrix& l : ls) {
    const ComplexMatrix ldl = l.adjoint() * l;
    out += l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl);
  }
  return out;
}

double expect(const ComplexMatrix& op, const ComplexMatrix& rho) { return (op * rho).trace().real(); }

}  // namespace

TEST_CASE("KrausMap construction and trace defect") {
  CHECK_THROWS_AS(KrausMap({}), Error);
  CHECK(KrausMap({ComplexMatrix::Identity(3, 3)}).trace_defect() < 1e-15);
  Rng rng(2);
  const KrausMap phi(random_kraus_ops(rng, 4, 3));
  CHECK(phi.is_trace_preserving());
  CHECK_FALSE(KrausMap({2.0 * ComplexMatrix::Identity(2, 2)}).is_trace_preserving());
}

TEST_CASE("apply_kraus") {
  Rng rng(3);
  const DensityMatrix rho(random_density(rng, 2));
  CHECK(frob(apply_kraus(KrausMap({ComplexMatrix::Identity(2, 2)}), rho).matrix() - rho.matrix()) < 1e-15);

  ComplexMatrix k0 = ComplexMatrix::Zero(2, 2), k1 = ComplexMatrix::Zero(2, 2);
  k0(0, 0) = 1.0;
  k1(0, 1) = 1.0;
  CHECK(frob(apply_kraus(KrausMap({k0, k1}), rho).matrix() - DensityMatrix::fock(2, 0).matrix()) < 1e-15);

  const DensityMatrix r4(random_density(rng, 4));
  const ComplexMatrix u = haar_unitary(rng, 4);
  const DensityMatrix out = apply_kraus(KrausMap({u}), r4);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> a(r4.matrix()), b(out.matrix());
  CHECK((a.eigenvalues() - b.eigenvalues()).norm() < 1e-12);

  const TangentPerturbation t(random_traceless(rng, 4));
  const KrausMap phi(random_kraus_ops(rng, 4));
  CHECK(std::abs(apply_kraus(phi, t).matrix().trace()) < 1e-12);
}

TEST_CASE("apply_dual") {
  Rng rng(4);
  const KrausMap phi(random_kraus_ops(rng, 5, 3));
  CHECK(frob(apply_dual(phi, ComplexMatrix::Identity(5, 5)) - ComplexMatrix::Identity(5, 5)) < 1e-12);

  const ComplexMatrix u = haar_unitary(rng, 5);
  const ComplexMatrix x = random_hermitian(rng, 5);
  CHECK(frob(apply_dual(KrausMap({u}), x) - u.adjoint() * x * u) < 1e-12);

  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix rho = random_density(rng, 5);
    const ComplexMatrix obs = random_hermitian(rng, 5);
    const Complex lhs = (apply_kraus(phi, rho) * obs).trace();
    const Complex rhs = (rho * apply_dual(phi, obs)).trace();
    CHECK(std::abs(lhs - rhs) < 1e-10);
  }
  ComplexMatrix nh = ComplexMatrix::Zero(5, 5);
  nh(0, 1) = 1.0;
  CHECK_THROWS_AS(apply_dual(phi, nh), Error);
}

TEST_CASE("TangentPerturbation validation") {
  CHECK_THROWS_AS(TangentPerturbation(diag({1.0, 0.0})), Error);
  CHECK(frob(TangentPerturbation::zero(3).matrix()) == 0.0);
  const TangentPerturbation d = TangentPerturbation::difference(DensityMatrix::fock(2, 0), DensityMatrix::fock(2, 1));
  CHECK(frob(d.matrix() - diag({1.0, -1.0})) == 0.0);
}

TEST_CASE("LindbladGenerator") {
  ComplexMatrix nh = ComplexMatrix::Zero(2, 2);
  nh(0, 1) = 1.0;
  CHECK_THROWS_AS(LindbladGenerator(nh, {}), Error);

  const OscillatorOps o = oscillator_ops(4);
  // Commuting rho and H.
  const LindbladGenerator ham(o.number, {});
  CHECK(frob(lindblad_rhs(ham, DensityMatrix::fock(5, 2))) < 1e-15);

  const LindbladGenerator loss = LindbladGenerator::dissipative(5, {o.a});
  CHECK(frob(lindblad_rhs(loss, DensityMatrix::fock(5, 0))) < 1e-15);
  ComplexMatrix expected = ComplexMatrix::Zero(5, 5);
  expected(0, 0) = 1.0;
  expected(1, 1) = -1.0;
  CHECK(frob(lindblad_rhs(loss, DensityMatrix::fock(5, 1)) - expected) < 1e-15);

  Rng rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const LindbladGenerator g = random_generator(rng, 4, 3);
    const ComplexMatrix rho = random_density(rng, 4);
    const ComplexMatrix rhs = lindblad_rhs(g, DensityMatrix(rho));
    CHECK(frob(rhs - literal_rhs(g.hamiltonian(), g.jumps(), rho)) < 1e-12);
    CHECK(std::abs(rhs.trace()) < 1e-12);
    CHECK(hermiticity_defect(rhs) < 1e-14);
  }
}

TEST_CASE("build_superoperator agrees with lindblad_rhs") {
  CHECK(frob(build_superoperator(LindbladGenerator(ComplexMatrix::Zero(3, 3), {}))) == 0.0);

  const OscillatorOps o = oscillator_ops(1);
  const ComplexMatrix s = build_superoperator(LindbladGenerator::dissipative(2, {o.a}));
  CHECK((s * vectorize(diag({0, 1})) - vectorize(diag({1, -1}))).norm() < 1e-15);

  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const LindbladGenerator g = random_generator(rng, 3 + trial % 3, 1 + trial % 3);
    const ComplexMatrix rho = random_density(rng, g.dim());
    const ComplexMatrix lhs = devectorize(build_superoperator(g) * vectorize(rho), g.dim());
    CHECK(frob(lhs - lindblad_rhs(g, DensityMatrix(rho))) < 1e-10);
  }
}

TEST_CASE("integrate: trivial generator is constant") {
  Rng rng(9);
  const DensityMatrix rho(random_density(rng, 3));
  const Trajectory tr = integrate(LindbladGenerator(ComplexMatrix::Zero(3, 3), {}), rho, 1.0, 0.1);
  REQUIRE(tr.states.size() == 11);
  for (const DensityMatrix& s : tr.states) CHECK(frob(s.matrix() - rho.matrix()) == 0.0);
}

TEST_CASE("integrate: photon-loss decay of <N>") {
  const int nmax = 20;
  const OscillatorOps o = oscillator_ops(nmax);
  const DensityMatrix rho0 = DensityMatrix::pure(coherent_state(1.5, nmax).ket);
  const LindbladGenerator g = LindbladGenerator::dissipative(nmax + 1, {o.a});
  const Trajectory tr = integrate(g, rho0, 2.0, 1e-3, std::nullopt, 100);
  const double n0 = expect(o.number, rho0.matrix());
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    CHECK(std::abs(expect(o.number, tr.states[k].matrix()) - n0 * std::exp(-tr.times[k])) < 1e-6);
  }
}

TEST_CASE("integrate: co-propagated tangent stays traceless and tracks the difference") {
  Rng rng(10);
  const LindbladGenerator g = random_generator(rng, 4, 2);
  const DensityMatrix r1(random_density(rng, 4)), r2(random_density(rng, 4));
  const Trajectory tr = integrate(g, r1, 1.0, 1e-2, TangentPerturbation::difference(r1, r2));
  const Trajectory t2 = integrate(g, r2, 1.0, 1e-2);
  REQUIRE(tr.tangents.size() == tr.states.size());
  for (std::size_t k = 0; k < tr.states.size(); ++k) {
    CHECK(std::abs(tr.tangents[k].matrix().trace()) < 1e-10);
    // Linearity: the tangent is exactly the difference of the two runs.
    CHECK(frob(tr.tangents[k].matrix() - (tr.states[k].matrix() - t2.states[k].matrix())) < 1e-10);
  }
}

TEST_CASE("integrate: argument checks and positivity guard") {
  const DensityMatrix rho = DensityMatrix::maximally_mixed(2);
  const LindbladGenerator g(ComplexMatrix::Zero(2, 2), {});
  CHECK_THROWS_AS(integrate(g, rho, 1.0, 0.0), Error);
  CHECK_THROWS_AS(integrate(g, rho, 0.01, 0.1), Error);

  // A very stiff loss with a huge step drives RK4 out of the state space.
  const OscillatorOps o = oscillator_ops(6);
  const LindbladGenerator stiff = LindbladGenerator::dissipative(7, {10.0 * o.a});
  try {
    integrate(stiff, DensityMatrix::fock(7, 6), 1.0, 0.5);
    FAIL("expected PositivityLost");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PositivityLost);
  }
}

TEST_CASE("rk4_step_halving shows fourth order") {
  const int nmax = 10;
  const OscillatorOps o = oscillator_ops(nmax);
  const LindbladGenerator g(0.3 * o.number, {o.a});
  // Full-rank start: RK4 error on a pure state would push its zero eigenvalues negative.
  const ComplexMatrix rho0 = 0.8 * DensityMatrix::pure(coherent_state(1.0, nmax).ket).matrix() +
                             0.2 * DensityMatrix::maximally_mixed(nmax + 1).matrix();
  const StepHalving sh = rk4_step_halving(g, DensityMatrix(rho0), 2.0, 0.1);
  CHECK(sh.ratio > 12.0);
  CHECK(sh.ratio < 20.0);
}

TEST_CASE("steady_state") {
  for (int nmax : {3, 8}) {
    const OscillatorOps o = oscillator_ops(nmax);
    const SteadyState ss = steady_state(LindbladGenerator::dissipative(nmax + 1, {std::sqrt(0.7) * o.a}));
    CHECK(ss.kernel_dimension == 1);
    CHECK(frob(ss.rho.matrix() - DensityMatrix::fock(nmax + 1, 0).matrix()) < 1e-10);
  }
  Rng rng(12);
  for (int trial = 0; trial < 5; ++trial) {
    const LindbladGenerator g = random_generator(rng, 5, 3);
    const SteadyState ss = steady_state(g);
    CHECK(ss.kernel_dimension == 1);
    CHECK(frob(lindblad_rhs(g, ss.rho)) < 1e-10);
    CHECK(ss.residual < 1e-10);
  }
  // Pure Hamiltonian: every diagonal state is stationary.
  const SteadyState deg = steady_state(LindbladGenerator(diag({0.0, 1.0, 3.0}), {}));
  CHECK(deg.kernel_dimension == 3);
}

TEST_CASE("dsf_hermitian_closure") {
  const OscillatorOps o = oscillator_ops(5);
  CHECK_FALSE(dsf_hermitian_closure({o.a}));
  CHECK(dsf_hermitian_closure({o.a, o.a.adjoint()}));
  Rng rng(13);
  CHECK(dsf_hermitian_closure({random_hermitian(rng, 4)}));
}

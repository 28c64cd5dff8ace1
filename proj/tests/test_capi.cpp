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
#include <cstring>
#include <string>
#include <vector>

#include <doctest.h>

#include "lyap/lyap.h"

namespace {

std::vector<double> diag_values(const std::vector<double>& d) {
  const std::size_t n = d.size();
  std::vector<double> v(2 * n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[2 * (i * n + i)] = d[i];
  return v;
}

struct Matrix {
  lyap_matrix* m = nullptr;
  Matrix() = default;
  explicit Matrix(const std::vector<double>& d) {
    const std::vector<double> v = diag_values(d);
    REQUIRE(lyap_matrix_create(static_cast<int64_t>(d.size()), v.data(), &m) == LYAP_OK);
  }
  ~Matrix() { lyap_matrix_destroy(m); }
  Matrix(const Matrix&) = delete;
  Matrix& operator=(const Matrix&) = delete;

  std::vector<double> values() const {
    const int64_t d = lyap_matrix_dim(m);
    std::vector<double> v(2 * d * d);
    REQUIRE(lyap_matrix_get(m, v.data()) == LYAP_OK);
    return v;
  }
};

}  // namespace

TEST_CASE("status strings and version") {
  CHECK(std::string(lyap_version()) == "0.1.0");
  CHECK(std::string(lyap_status_string(LYAP_OK)) == "Ok");
  CHECK(std::string(lyap_status_string(LYAP_ERR_SINGULAR_RHO)) == "SingularRho");
}

TEST_CASE("matrix handles") {
  Matrix m({0.25, 0.75});
  CHECK(lyap_matrix_dim(m.m) == 2);
  const std::vector<double> v = m.values();
  CHECK(v[0] == 0.25);
  CHECK(v[6] == 0.75);

  lyap_matrix* bad = nullptr;
  CHECK(lyap_matrix_create(0, nullptr, &bad) == LYAP_ERR_INVALID_DIMENSION);
  CHECK(bad == nullptr);
  CHECK(std::strlen(lyap_last_error()) > 0);
  CHECK(lyap_matrix_create(2, nullptr, nullptr) == LYAP_ERR_INVALID_ARGUMENT);
  CHECK(lyap_matrix_dim(nullptr) == 0);
  lyap_matrix_destroy(nullptr);
}

TEST_CASE("distances through the C API") {
  Matrix a({1.0, 0.0}), mixed({0.5, 0.5}), p({0.6, 0.4});
  double out = -1.0;
  REQUIRE(lyap_distance("bures", a.m, mixed.m, &out) == LYAP_OK);
  CHECK(out == doctest::Approx(std::sqrt(1.0 - std::sqrt(0.5))));
  REQUIRE(lyap_distance("hilbert", p.m, mixed.m, &out) == LYAP_OK);
  CHECK(out == doctest::Approx(std::log(1.5)));
  CHECK(lyap_distance("relative_entropy", mixed.m, a.m, &out) == LYAP_ERR_SUPPORT_MISMATCH);
  CHECK(lyap_distance("nope", a.m, a.m, &out) == LYAP_ERR_INVALID_ARGUMENT);

  Matrix not_state({0.5, 0.4});
  CHECK(lyap_distance("trace", not_state.m, a.m, &out) == LYAP_ERR_INVALID_STATE);
}

TEST_CASE("photon loss steady state, Lyapunov value and rate") {
  lyap_matrix *a = nullptr, *n = nullptr;
  REQUIRE(lyap_oscillator_ops(4, &a, &n, nullptr) == LYAP_OK);
  lyap_generator* g = nullptr;
  const lyap_matrix* jumps[] = {a};
  REQUIRE(lyap_generator_create(nullptr, jumps, 1, &g) == LYAP_OK);

  lyap_matrix* rho = nullptr;
  int kernel = 0;
  double residual = 1.0;
  REQUIRE(lyap_steady_state(g, &rho, &kernel, &residual) == LYAP_OK);
  CHECK(kernel == 1);
  CHECK(residual < 1e-10);
  std::vector<double> v(2 * 25);
  lyap_matrix_get(rho, v.data());
  CHECK(v[0] == doctest::Approx(1.0));

  // The vacuum is singular: the Bures Lyapunov function is undefined there.
  Matrix uniform({0.2, 0.2, 0.2, 0.2, 0.2}), other({0.4, 0.3, 0.1, 0.1, 0.1});
  double value = 0.0;
  CHECK(lyap_bures_lyapunov(rho, other.m, &value) == LYAP_ERR_SINGULAR_RHO);
  REQUIRE(lyap_bures_lyapunov(uniform.m, other.m, &value) == LYAP_OK);
  double d2 = 0.0;
  for (double x : {0.2, 0.1, -0.1, -0.1, -0.1}) d2 += x * x;
  CHECK(value == doctest::Approx(5.0 / 4.0 * d2));
  double rate = 0.0;
  REQUIRE(lyap_bures_lyapunov_rate(uniform.m, other.m, g, &rate) == LYAP_OK);
  CHECK(rate < 0.0);

  lyap_matrix* rhs = nullptr;
  REQUIRE(lyap_lindblad_rhs(g, rho, &rhs) == LYAP_OK);
  std::vector<double> r(2 * 25);
  lyap_matrix_get(rhs, r.data());
  for (double x : r) CHECK(std::abs(x) < 1e-10);

  int closed = 1;
  REQUIRE(lyap_dsf_hermitian_closure(jumps, 1, &closed) == LYAP_OK);
  CHECK(closed == 0);
  int commutant = 0;
  REQUIRE(lyap_commutant_dimension(a, &commutant) == LYAP_OK);
  CHECK(commutant == 1);

  lyap_matrix_destroy(rhs);
  lyap_matrix_destroy(rho);
  lyap_generator_destroy(g);
  lyap_matrix_destroy(a);
  lyap_matrix_destroy(n);
}

TEST_CASE("generator errors") {
  std::vector<double> v = {0, 0, 1, 0, 0, 0, 0, 0};  // [[0, 1], [0, 0]]
  lyap_matrix* h = nullptr;
  REQUIRE(lyap_matrix_create(2, v.data(), &h) == LYAP_OK);
  lyap_generator* g = nullptr;
  CHECK(lyap_generator_create(h, nullptr, 0, &g) == LYAP_ERR_NOT_HERMITIAN);
  CHECK(lyap_generator_create(nullptr, nullptr, 0, &g) == LYAP_ERR_INVALID_ARGUMENT);
  lyap_matrix_destroy(h);

  REQUIRE(lyap_generator_eq18(1.0, 1.0, 1.0, 6, &g) == LYAP_OK);
  lyap_generator_destroy(g);
}

TEST_CASE("Petz norm and Kraus maps") {
  Matrix rho({0.3, 0.7});
  std::vector<double> dv = diag_values({0.05, -0.05});
  lyap_matrix* delta = nullptr;
  REQUIRE(lyap_matrix_create(2, dv.data(), &delta) == LYAP_OK);
  const double s = 1.0, w = 1.0;
  double norm = 0.0;
  REQUIRE(lyap_petz_norm_sq(rho.m, delta, &s, &w, 1, &norm) == LYAP_OK);
  CHECK(norm == doctest::Approx(0.0025 / 0.6 + 0.0025 / 1.4));
  lyap_matrix_destroy(delta);

  Matrix id({1.0, 1.0});
  const lyap_matrix* ops[] = {id.m};
  lyap_kraus* k = nullptr;
  REQUIRE(lyap_kraus_create(ops, 1, &k) == LYAP_OK);
  double defect = 1.0;
  REQUIRE(lyap_kraus_trace_defect(k, &defect) == LYAP_OK);
  CHECK(defect == 0.0);
  lyap_matrix* out = nullptr;
  REQUIRE(lyap_kraus_apply(k, rho.m, &out) == LYAP_OK);
  std::vector<double> o(8);
  lyap_matrix_get(out, o.data());
  CHECK(o[0] == 0.3);
  lyap_matrix_destroy(out);
  REQUIRE(lyap_kraus_dual(k, id.m, &out) == LYAP_OK);
  lyap_matrix_destroy(out);
  lyap_kraus_destroy(k);
  CHECK(lyap_kraus_create(nullptr, 0, &k) == LYAP_ERR_INVALID_ARGUMENT);
}

TEST_CASE("coherent state") {
  lyap_matrix* rho = nullptr;
  double tail = -1.0;
  REQUIRE(lyap_coherent_state(1.0, 0.0, 20, &rho, &tail) == LYAP_OK);
  std::vector<double> v(2 * 21 * 21);
  lyap_matrix_get(rho, v.data());
  CHECK(v[0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-6));
  CHECK(tail < 1e-15);
  lyap_matrix_destroy(rho);
}

TEST_CASE("run_command") {
  char* report = nullptr;
  int exit_code = -1;
  REQUIRE(lyap_run_command("steady-state", nullptr,
                           R"({"nmax": 5, "output_dir": "capi_out"})", &report, &exit_code) == LYAP_OK);
  REQUIRE(report != nullptr);
  CHECK(std::string(report).find("\"kernel_dimension\": 1") != std::string::npos);
  lyap_string_free(report);

  REQUIRE(lyap_run_command("simulate", nullptr, R"({"h": 0})", &report, &exit_code) == LYAP_OK);
  CHECK(exit_code == 2);
  lyap_string_free(report);

  REQUIRE(lyap_run_command("simulate", nullptr, "{not json", &report, &exit_code) == LYAP_OK);
  CHECK(exit_code == 2);
  lyap_string_free(report);
  CHECK(lyap_run_command(nullptr, nullptr, nullptr, &report, &exit_code) == LYAP_ERR_INVALID_ARGUMENT);
}

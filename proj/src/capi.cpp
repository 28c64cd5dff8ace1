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

#include "lyap/lyap.h"

#include <cstring>
#include <new>
#include <string>

#include "lyap/cat_reservoir.hpp"
#include "lyap/commands.hpp"
#include "lyap/error.hpp"

struct lyap_matrix {
  lyap::ComplexMatrix m;
};
struct lyap_generator {
  lyap::LindbladGenerator g;
};
struct lyap_kraus {
  lyap::KrausMap k;
};

namespace {

thread_local std::string last_error;

struct NullArgument {
  const char* name;
};

template <typename T>
const T& deref(const T* p, const char* name) {
  if (p == nullptr) throw NullArgument{name};
  return *p;
}

const char* cstr(const char* p, const char* name) {
  if (p == nullptr) throw NullArgument{name};
  return p;
}

template <typename T>
void require_out(T* p, const char* name) {
  if (p == nullptr) throw NullArgument{name};
}

template <typename F>
lyap_status guard(F&& body) {
  try {
    body();
    last_error.clear();
    return LYAP_OK;
  } catch (const NullArgument& e) {
    last_error = std::string("null argument: ") + e.name;
    return LYAP_ERR_INVALID_ARGUMENT;
  } catch (const lyap::Error& e) {
    last_error = e.what();
    return static_cast<lyap_status>(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return LYAP_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return LYAP_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown exception";
    return LYAP_ERR_INTERNAL;
  }
}

lyap_matrix* wrap(lyap::ComplexMatrix m) { return new lyap_matrix{std::move(m)}; }

std::vector<lyap::ComplexMatrix> collect(const lyap_matrix* const* ms, std::size_t n, const char* name) {
  if (n > 0 && ms == nullptr) throw NullArgument{name};
  std::vector<lyap::ComplexMatrix> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(deref(ms[i], name).m);
  return out;
}

}  // namespace

extern "C" {

const char* lyap_version(void) { return "0.1.0"; }

const char* lyap_status_string(lyap_status status) {
  if (status == LYAP_OK) return "Ok";
  if (status == LYAP_ERR_INTERNAL) return "Internal";
  return lyap::to_string(static_cast<lyap::ErrorCode>(status));
}

const char* lyap_last_error(void) { return last_error.c_str(); }

lyap_status lyap_matrix_create(int64_t dim, const double* values, lyap_matrix** out) {
  return guard([&] {
    require_out(out, "out");
    if (dim < 1) throw lyap::Error(lyap::ErrorCode::InvalidDimension, "dimension must be >= 1");
    lyap::ComplexMatrix m = lyap::ComplexMatrix::Zero(dim, dim);
    if (values != nullptr) {
      for (int64_t i = 0; i < dim; ++i) {
        for (int64_t j = 0; j < dim; ++j) {
          const double* v = values + 2 * (i * dim + j);
          m(i, j) = lyap::Complex(v[0], v[1]);
        }
      }
    }
    *out = wrap(std::move(m));
  });
}

lyap_status lyap_matrix_copy(const lyap_matrix* m, lyap_matrix** out) {
  return guard([&] {
    require_out(out, "out");
    *out = wrap(deref(m, "m").m);
  });
}

void lyap_matrix_destroy(lyap_matrix* m) { delete m; }

int64_t lyap_matrix_dim(const lyap_matrix* m) { return m == nullptr ? 0 : m->m.rows(); }

lyap_status lyap_matrix_get(const lyap_matrix* m, double* values) {
  return guard([&] {
    const lyap::ComplexMatrix& x = deref(m, "m").m;
    require_out(values, "values");
    const int64_t d = x.rows();
    for (int64_t i = 0; i < d; ++i) {
      for (int64_t j = 0; j < d; ++j) {
        values[2 * (i * d + j)] = x(i, j).real();
        values[2 * (i * d + j) + 1] = x(i, j).imag();
      }
    }
  });
}

lyap_status lyap_oscillator_ops(int nmax, lyap_matrix** a, lyap_matrix** number, lyap_matrix** parity) {
  return guard([&] {
    const lyap::OscillatorOps ops = lyap::oscillator_ops(nmax);
    if (a) *a = wrap(ops.a);
    if (number) *number = wrap(ops.number);
    if (parity) *parity = wrap(ops.parity_rotation);
  });
}

lyap_status lyap_coherent_state(double alpha_re, double alpha_im, int nmax, lyap_matrix** rho,
                                double* tail_mass) {
  return guard([&] {
    require_out(rho, "rho");
    const lyap::TruncatedKet ket = lyap::coherent_state({alpha_re, alpha_im}, nmax);
    if (tail_mass) *tail_mass = ket.tail_mass;
    *rho = wrap(lyap::DensityMatrix::pure(ket.ket).matrix());
  });
}

lyap_status lyap_distance(const char* kind, const lyap_matrix* rho1, const lyap_matrix* rho2, double* out) {
  return guard([&] {
    require_out(out, "out");
    const auto parsed = lyap::parse_distance_kind(cstr(kind, "kind"));
    if (!parsed) throw lyap::Error(lyap::ErrorCode::InvalidArgument, std::string("unknown distance '") + kind + "'");
    *out = lyap::distance(*parsed, lyap::DensityMatrix(deref(rho1, "rho1").m),
                          lyap::DensityMatrix(deref(rho2, "rho2").m));
  });
}

lyap_status lyap_generator_create(const lyap_matrix* hamiltonian, const lyap_matrix* const* jumps,
                                  size_t n_jumps, lyap_generator** out) {
  return guard([&] {
    require_out(out, "out");
    std::vector<lyap::ComplexMatrix> ls = collect(jumps, n_jumps, "jumps");
    if (hamiltonian == nullptr && ls.empty()) {
      throw lyap::Error(lyap::ErrorCode::InvalidArgument, "generator needs a Hamiltonian or jumps");
    }
    const lyap::Index d = hamiltonian ? hamiltonian->m.rows() : ls.front().rows();
    const lyap::ComplexMatrix h = hamiltonian ? hamiltonian->m : lyap::ComplexMatrix::Zero(d, d);
    *out = new lyap_generator{lyap::LindbladGenerator(h, std::move(ls))};
  });
}

lyap_status lyap_generator_eq18(double beta, double kappa, double kappa_c, int nmax, lyap_generator** out) {
  return guard([&] {
    require_out(out, "out");
    *out = new lyap_generator{lyap::generator_eq18(beta, kappa, kappa_c, nmax)};
  });
}

void lyap_generator_destroy(lyap_generator* g) { delete g; }

lyap_status lyap_lindblad_rhs(const lyap_generator* g, const lyap_matrix* x, lyap_matrix** out) {
  return guard([&] {
    require_out(out, "out");
    *out = wrap(deref(g, "g").g.apply(deref(x, "x").m));
  });
}

lyap_status lyap_steady_state(const lyap_generator* g, lyap_matrix** rho, int* kernel_dimension,
                              double* residual) {
  return guard([&] {
    require_out(rho, "rho");
    const lyap::SteadyState ss = lyap::steady_state(deref(g, "g").g);
    if (kernel_dimension) *kernel_dimension = ss.kernel_dimension;
    if (residual) *residual = ss.residual;
    *rho = wrap(ss.rho.matrix());
  });
}

lyap_status lyap_dsf_hermitian_closure(const lyap_matrix* const* jumps, size_t n_jumps, int* closed) {
  return guard([&] {
    require_out(closed, "closed");
    *closed = lyap::dsf_hermitian_closure(collect(jumps, n_jumps, "jumps")) ? 1 : 0;
  });
}

lyap_status lyap_commutant_dimension(const lyap_matrix* a, int* dimension) {
  return guard([&] {
    require_out(dimension, "dimension");
    *dimension = lyap::commutant_dimension(deref(a, "a").m);
  });
}

lyap_status lyap_bures_lyapunov(const lyap_matrix* rho_inf, const lyap_matrix* rho, double* value) {
  return guard([&] {
    require_out(value, "value");
    *value = lyap::bures_lyapunov(lyap::DensityMatrix(deref(rho_inf, "rho_inf").m),
                                  lyap::DensityMatrix(deref(rho, "rho").m))
                 .v;
  });
}

lyap_status lyap_bures_lyapunov_rate(const lyap_matrix* rho_inf, const lyap_matrix* rho,
                                     const lyap_generator* g, double* rate) {
  return guard([&] {
    require_out(rate, "rate");
    *rate = lyap::bures_lyapunov_rate(lyap::DensityMatrix(deref(rho_inf, "rho_inf").m),
                                      lyap::DensityMatrix(deref(rho, "rho").m), deref(g, "g").g);
  });
}

lyap_status lyap_petz_norm_sq(const lyap_matrix* rho, const lyap_matrix* delta, const double* s,
                              const double* w, size_t n_atoms, double* out) {
  return guard([&] {
    require_out(out, "out");
    if (n_atoms > 0 && (s == nullptr || w == nullptr)) throw NullArgument{"s/w"};
    std::vector<lyap::PetzAtom> atoms;
    for (std::size_t i = 0; i < n_atoms; ++i) atoms.push_back({s[i], w[i]});
    *out = lyap::petz_norm_sq(lyap::DensityMatrix(deref(rho, "rho").m),
                              lyap::TangentPerturbation(deref(delta, "delta").m),
                              lyap::PetzMeasure(std::move(atoms)));
  });
}

lyap_status lyap_kraus_create(const lyap_matrix* const* ops, size_t n_ops, lyap_kraus** out) {
  return guard([&] {
    require_out(out, "out");
    *out = new lyap_kraus{lyap::KrausMap(collect(ops, n_ops, "ops"))};
  });
}

void lyap_kraus_destroy(lyap_kraus* k) { delete k; }

lyap_status lyap_kraus_trace_defect(const lyap_kraus* k, double* defect) {
  return guard([&] {
    require_out(defect, "defect");
    *defect = deref(k, "k").k.trace_defect();
  });
}

lyap_status lyap_kraus_apply(const lyap_kraus* k, const lyap_matrix* x, lyap_matrix** out) {
  return guard([&] {
    require_out(out, "out");
    *out = wrap(lyap::apply_kraus(deref(k, "k").k, deref(x, "x").m));
  });
}

lyap_status lyap_kraus_dual(const lyap_kraus* k, const lyap_matrix* x, lyap_matrix** out) {
  return guard([&] {
    require_out(out, "out");
    *out = wrap(lyap::apply_dual(deref(k, "k").k, deref(x, "x").m));
  });
}

lyap_status lyap_run_command(const char* command, const char* config_path, const char* overrides_json,
                             char** report_json, int* exit_code) {
  return guard([&] {
    require_out(report_json, "report_json");
    require_out(exit_code, "exit_code");
    const std::string name = cstr(command, "command");
    lyap::ConfigOverrides overrides;
    lyap::CommandResult result;
    try {
      if (overrides_json != nullptr) {
        overrides = lyap::ConfigOverrides::from_json(nlohmann::json::parse(overrides_json));
      }
      result = lyap::run_command(name, config_path ? std::filesystem::path(config_path) : std::filesystem::path{},
                                 overrides);
    } catch (const std::exception& e) {
      // Malformed overrides: report them like any other configuration error.
      result.report = {{"command", name},
                       {"status", "error"},
                       {"error", {{"code", "ConfigError"}, {"message", e.what()}}}};
      result.exit_code = lyap::kExitConfigError;
    }
    const std::string text = result.report.dump(2) + "\n";
    char* buffer = static_cast<char*>(std::malloc(text.size() + 1));
    if (buffer == nullptr) throw std::bad_alloc();
    std::memcpy(buffer, text.c_str(), text.size() + 1);
    *report_json = buffer;
    *exit_code = result.exit_code;
  });
}

void lyap_string_free(char* s) { std::free(s); }

}  // extern "C"

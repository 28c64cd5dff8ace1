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

/*
 * C interface to the lyap numerical core.
 *
 * All objects are opaque handles owned by the caller and released with the
 * matching *_destroy function. Every fallible call returns a lyap_status;
 * on failure lyap_last_error() describes the problem (thread-local, valid
 * until the next call on the same thread). Matrices cross the boundary as
 * row-major interleaved (re, im) doubles: 2 * dim * dim values.
 */
#ifndef LYAP_LYAP_H
#define LYAP_LYAP_H

#include <stddef.h>
#include <stdint.h>

#if defined(LYAP_BUILDING_LIBRARY)
#define LYAP_API __attribute__((visibility("default")))
#else
#define LYAP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lyap_status {
  LYAP_OK = 0,
  LYAP_ERR_INVALID_ARGUMENT = 1,
  LYAP_ERR_NOT_HERMITIAN = 2,
  LYAP_ERR_NO_CONVERGENCE = 3,
  LYAP_ERR_DOMAIN_VIOLATION = 4,
  LYAP_ERR_SINGULAR_RHO = 5,
  LYAP_ERR_INVALID_DIMENSION = 6,
  LYAP_ERR_DIMENSION_MISMATCH = 7,
  LYAP_ERR_SUPPORT_MISMATCH = 8,
  LYAP_ERR_SINGULAR_STATE = 9,
  LYAP_ERR_POSITIVITY_LOST = 10,
  LYAP_ERR_NON_UNIQUE_KERNEL = 11,
  LYAP_ERR_NO_STEADY_STATE = 12,
  LYAP_ERR_NON_INTEGRABLE = 13,
  LYAP_ERR_INVALID_STATE = 14,
  LYAP_ERR_CONFIG = 15,
  LYAP_ERR_INTERNAL = 99
} lyap_status;

typedef struct lyap_matrix lyap_matrix;
typedef struct lyap_generator lyap_generator;
typedef struct lyap_kraus lyap_kraus;

LYAP_API const char* lyap_version(void);
LYAP_API const char* lyap_status_string(lyap_status status);
LYAP_API const char* lyap_last_error(void);

/* values may be NULL for the zero matrix. */
LYAP_API lyap_status lyap_matrix_create(int64_t dim, const double* values, lyap_matrix** out);
LYAP_API lyap_status lyap_matrix_copy(const lyap_matrix* m, lyap_matrix** out);
LYAP_API void lyap_matrix_destroy(lyap_matrix* m);
LYAP_API int64_t lyap_matrix_dim(const lyap_matrix* m);
/* values receives 2 * dim * dim doubles. */
LYAP_API lyap_status lyap_matrix_get(const lyap_matrix* m, double* values);

/* Truncated a, N and e^{i pi N}; any output pointer may be NULL. */
LYAP_API lyap_status lyap_oscillator_ops(int nmax, lyap_matrix** a, lyap_matrix** number,
                                         lyap_matrix** parity);
/* |alpha><alpha| truncated and renormalized; tail_mass may be NULL. */
LYAP_API lyap_status lyap_coherent_state(double alpha_re, double alpha_im, int nmax,
                                         lyap_matrix** rho, double* tail_mass);
/* kind: trace, bures, chernoff, relative_entropy, chi2, hilbert. */
LYAP_API lyap_status lyap_distance(const char* kind, const lyap_matrix* rho1,
                                   const lyap_matrix* rho2, double* out);

/* hamiltonian may be NULL (H = 0, dimension taken from the jumps). */
LYAP_API lyap_status lyap_generator_create(const lyap_matrix* hamiltonian,
                                           const lyap_matrix* const* jumps, size_t n_jumps,
                                           lyap_generator** out);
LYAP_API lyap_status lyap_generator_eq18(double beta, double kappa, double kappa_c, int nmax,
                                         lyap_generator** out);
LYAP_API void lyap_generator_destroy(lyap_generator* g);
LYAP_API lyap_status lyap_lindblad_rhs(const lyap_generator* g, const lyap_matrix* x,
                                       lyap_matrix** out);
/* kernel_dimension and residual may be NULL. */
LYAP_API lyap_status lyap_steady_state(const lyap_generator* g, lyap_matrix** rho,
                                       int* kernel_dimension, double* residual);
LYAP_API lyap_status lyap_dsf_hermitian_closure(const lyap_matrix* const* jumps, size_t n_jumps,
                                                int* closed);
LYAP_API lyap_status lyap_commutant_dimension(const lyap_matrix* a, int* dimension);

LYAP_API lyap_status lyap_bures_lyapunov(const lyap_matrix* rho_inf, const lyap_matrix* rho,
                                         double* value);
LYAP_API lyap_status lyap_bures_lyapunov_rate(const lyap_matrix* rho_inf, const lyap_matrix* rho,
                                              const lyap_generator* g, double* rate);
/* Measure given as n_atoms positions s[] in [0, 1] and weights w[] > 0. */
LYAP_API lyap_status lyap_petz_norm_sq(const lyap_matrix* rho, const lyap_matrix* delta,
                                       const double* s, const double* w, size_t n_atoms,
                                       double* out);

LYAP_API lyap_status lyap_kraus_create(const lyap_matrix* const* ops, size_t n_ops,
                                       lyap_kraus** out);
LYAP_API void lyap_kraus_destroy(lyap_kraus* k);
LYAP_API lyap_status lyap_kraus_trace_defect(const lyap_kraus* k, double* defect);
LYAP_API lyap_status lyap_kraus_apply(const lyap_kraus* k, const lyap_matrix* x, lyap_matrix** out);
LYAP_API lyap_status lyap_kraus_dual(const lyap_kraus* k, const lyap_matrix* x, lyap_matrix** out);

/*
 * Runs simulate, steady-state, contraction or cat-demo. config_path may be
 * NULL for defaults; overrides_json is a JSON object (keys nmax, beta, kappa,
 * kappa_c, h, t_end, seed, jobs, output_dir) or NULL. The report is returned
 * in *report_json (release with lyap_string_free) and the process exit code
 * in *exit_code. Returns LYAP_OK whenever a report was produced.
 */
LYAP_API lyap_status lyap_run_command(const char* command, const char* config_path,
                                      const char* overrides_json, char** report_json,
                                      int* exit_code);
LYAP_API void lyap_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* LYAP_LYAP_H */

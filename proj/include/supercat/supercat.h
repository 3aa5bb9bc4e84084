// Copyright 2026 The supercat Authors
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
 * C interface to libsupercat.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every fallible call returns an sc_status; on
 * failure sc_last_error() describes the problem. The message is stored per
 * thread and stays valid until the next failing call on that thread.
 *
 * Spin size is passed as two_j = 2j (the number of atoms N).
 * Basis index k = j - m: k = 0 is |j,j>, k = two_j is |j,-j>.
 * Operator element arrays are row-major: element (k1, k2) at k1 * dim + k2.
 */
#ifndef SUPERCAT_H
#define SUPERCAT_H

#include <stddef.h>

#if defined(SUPERCAT_BUILDING_LIBRARY)
#define SUPERCAT_API __attribute__((visibility("default")))
#else
#define SUPERCAT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sc_status {
  SC_OK = 0,
  SC_ERR_INVALID_ARGUMENT = 1, /* null pointer */
  SC_ERR_DOMAIN = 2,
  SC_ERR_DIMENSION = 3, /* mismatched spins, short output buffer */
  SC_ERR_DEGENERATE = 4,
  SC_ERR_CONVERGENCE = 5,
  SC_ERR_FIT = 6,
  SC_ERR_INTERNAL = 7
} sc_status;

typedef enum sc_method {
  SC_METHOD_ADAPTIVE_RK = 0,
  SC_METHOD_FIXED_RK4 = 1,
  SC_METHOD_DENSE_EXPM = 2
} sc_method;

typedef enum sc_norm_kind { SC_NORM_HS = 0, SC_NORM_ABS = 1 } sc_norm_kind;
typedef enum sc_fit_model { SC_FIT_LINEAR = 0, SC_FIT_QUADRATIC = 1 } sc_fit_model;

typedef struct sc_state sc_state;       /* Dicke-basis state vector */
typedef struct sc_operator sc_operator; /* (2j+1) x (2j+1) operator */
typedef struct sc_preparation sc_preparation;

typedef struct sc_physical_params {
  double g;     /* rad/s */
  double kappa; /* rad/s */
  double delta; /* rad/s */
  int n_atoms;
} sc_physical_params;

typedef struct sc_physical_derived {
  double eta;
  double t_class;
  int superradiance_valid;
  int dispersive_valid;
} sc_physical_derived;

typedef struct sc_propagator_config {
  sc_method method;
  double rel_tol;
  double abs_tol;
  double max_step; /* <= 0 selects 0.1 / (j + 1) */
  unsigned threads; /* 0 = hardware concurrency */
} sc_propagator_config;

typedef struct sc_decay_fit {
  double rate;
  double quadratic;
  double intercept;
  double tau_min;
  double tau_max;
  double residual;
} sc_decay_fit;

typedef struct sc_slope_prediction {
  double slow;
  double fast;
  double total;
} sc_slope_prediction;

typedef struct sc_preparation_info {
  double component_phi;  /* phi' of the first step-2 component */
  double pulse_axis_phi; /* axis parameter of the closing rotation */
  double predicted_theta;
  double predicted_phi;
  double step2_fidelity;     /* |<two-component form|step 2>|^2 */
  double symmetric_theta;    /* best symmetric pair found for the output */
  double symmetric_phi;
  double symmetric_captured;
} sc_preparation_info;

typedef struct sc_criterion_result {
  int id;
  const char* name;
  int passed;
  double measured;
  double threshold;
  double runtime_s;
  double runtime_limit_s;
  const char* detail;
} sc_criterion_result;

/* Pointers inside `result` are valid only during the callback. */
typedef void (*sc_criterion_callback)(const sc_criterion_result* result, void* user);
/* Receives regime warnings (e.g. weak detuning); may be NULL to silence. */
typedef void (*sc_warning_callback)(const char* message, void* user);

SUPERCAT_API const char* sc_version(void);
SUPERCAT_API const char* sc_last_error(void);
SUPERCAT_API const char* sc_status_name(sc_status status);

SUPERCAT_API void sc_propagator_config_default(sc_propagator_config* cfg);
SUPERCAT_API sc_status sc_physical_derive(const sc_physical_params* params, sc_physical_derived* out);
SUPERCAT_API sc_status sc_multi_component_time(const sc_physical_params* params, int m, double* out_seconds);

/* states */
SUPERCAT_API sc_status sc_state_coherent(int two_j, double theta, double phi, sc_state** out);
SUPERCAT_API sc_status sc_state_basis(int two_j, size_t k, sc_state** out);
SUPERCAT_API sc_status sc_state_cat(int two_j, double theta1, double phi1, double theta2, double phi2,
                                    double c1_re, double c1_im, double c2_re, double c2_im, sc_state** out);
SUPERCAT_API sc_status sc_state_from_amplitudes(int two_j, const double* re, const double* im, size_t len,
                                                sc_state** out);
SUPERCAT_API sc_status sc_state_dispersive(const sc_state* psi, const sc_physical_params* params,
                                           double t_seconds, sc_warning_callback warn, void* user,
                                           sc_state** out);
SUPERCAT_API sc_status sc_state_rotate(const sc_state* psi, double axis_phi, double angle, sc_state** out);
SUPERCAT_API sc_status sc_state_dim(const sc_state* psi, size_t* out);
SUPERCAT_API sc_status sc_state_amplitudes(const sc_state* psi, double* re, double* im, size_t len);
SUPERCAT_API sc_status sc_state_overlap(const sc_state* a, const sc_state* b, double* re, double* im);
SUPERCAT_API sc_status sc_state_bloch(const sc_state* psi, double out_xyz[3]);
SUPERCAT_API sc_status sc_state_symmetric_decomposition(const sc_state* psi, double* theta, double* phi,
                                                        double* captured);
SUPERCAT_API void sc_state_free(sc_state* psi);

/* three-step preparation; step is 1, 2 or 3 */
SUPERCAT_API sc_status sc_prepare_long_lived_cat(int two_j, double theta, double phi,
                                                 const sc_physical_params* params, sc_warning_callback warn,
                                                 void* user, sc_preparation** out);
SUPERCAT_API sc_status sc_preparation_step(const sc_preparation* prep, int step, sc_state** out);
SUPERCAT_API sc_status sc_preparation_info_get(const sc_preparation* prep, sc_preparation_info* out);
SUPERCAT_API void sc_preparation_free(sc_preparation* prep);

/* operators */
SUPERCAT_API sc_status sc_operator_dyad(const sc_state* a, const sc_state* b, sc_operator** out);
SUPERCAT_API sc_status sc_operator_from_elements(int two_j, const double* re, const double* im, size_t len,
                                                 sc_operator** out);
SUPERCAT_API sc_status sc_operator_dim(const sc_operator* op, size_t* out);
SUPERCAT_API sc_status sc_operator_elements(const sc_operator* op, double* re, double* im, size_t len);
SUPERCAT_API sc_status sc_operator_lindblad(const sc_operator* rho, sc_operator** out);
/* A NULL cfg selects the defaults, here and below. */
SUPERCAT_API sc_status sc_operator_propagate(const sc_operator* rho, double tau, const sc_propagator_config* cfg,
                                             sc_operator** out);
/* States at each of `count` non-decreasing times; out[i] receives a new handle. */
SUPERCAT_API sc_status sc_operator_propagate_samples(const sc_operator* rho, const double* taus, size_t count,
                                                     const sc_propagator_config* cfg, sc_operator** out);
SUPERCAT_API sc_status sc_operator_norm(const sc_operator* op, sc_norm_kind kind, double* out);
SUPERCAT_API sc_status sc_operator_trace(const sc_operator* op, double* re, double* im);
SUPERCAT_API sc_status sc_operator_purity(const sc_operator* op, double* out);
SUPERCAT_API sc_status sc_operator_bloch(const sc_operator* op, double out_xyz[3]);
SUPERCAT_API sc_status sc_operator_initial_slope(const sc_operator* rho, sc_norm_kind kind,
                                                 const sc_propagator_config* cfg, double* slope, double* error);
SUPERCAT_API void sc_operator_free(sc_operator* op);

/* observables without handles */
SUPERCAT_API sc_status sc_fit_decay(const double* taus, const double* values, size_t count, sc_fit_model model,
                                    sc_decay_fit* out);
SUPERCAT_API sc_status sc_eigen_angle(int two_j, double theta, double phi, double* out);

/* closed-form references */
SUPERCAT_API sc_status sc_analytic_cos2_alpha(double theta, double j, double* out);
SUPERCAT_API sc_status sc_analytic_n1_initial_slope(double theta1, double phi1, double theta2, double phi2,
                                                    double j, sc_slope_prediction* out);
SUPERCAT_API sc_status sc_analytic_n2_rate_general(double gamma1, double gamma2, double j, double* out);
SUPERCAT_API sc_status sc_analytic_n2_symmetric(double gamma1, double* linear, double* quadratic);
SUPERCAT_API sc_status sc_analytic_n2_rate_diagonal(double gamma, double* out);
SUPERCAT_API sc_status sc_analytic_polar_cat_norms(double tau, double* n1, double* n2);
SUPERCAT_API sc_status sc_analytic_classical_theta(double theta0, double tau, double* out);

/* acceptance criteria; criterion_id 0 runs all of them */
SUPERCAT_API int sc_verify_criterion_count(void);
SUPERCAT_API sc_status sc_verify_run(int criterion_id, const sc_propagator_config* cfg,
                                     sc_criterion_callback on_result, void* user, int* all_passed);

#ifdef __cplusplus
}
#endif

#endif /* SUPERCAT_H */

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

#include "supercat/supercat.h"

#include <exception>
#include <memory>
#include <new>
#include <string>

#include "supercat/analytics.hpp"
#include "supercat/cats.hpp"
#include "supercat/dynamics.hpp"
#include "supercat/errors.hpp"
#include "supercat/observables.hpp"
#include "supercat/spin_algebra.hpp"
#include "supercat/verification.hpp"

struct sc_state {
  supercat::DickeVector value;
};

struct sc_operator {
  supercat::SpinOperator value;
};

struct sc_preparation {
  supercat::PreparationResult result;
  sc_preparation_info info;
};

namespace {

using namespace supercat;

thread_local std::string g_last_error;

sc_status fail(sc_status code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

// Runs `body`, translating library exceptions into status codes.
template <class F>
sc_status guarded(F&& body) {
  try {
    body();
    return SC_OK;
  } catch (const DomainError& e) {
    return fail(SC_ERR_DOMAIN, e.what());
  } catch (const DimensionError& e) {
    return fail(SC_ERR_DIMENSION, e.what());
  } catch (const DegenerateError& e) {
    return fail(SC_ERR_DEGENERATE, e.what());
  } catch (const ConvergenceError& e) {
    return fail(SC_ERR_CONVERGENCE, std::string(e.what()) + " (reached tau = " + std::to_string(e.reached_tau()) + ")");
  } catch (const FitError& e) {
    return fail(SC_ERR_FIT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SC_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SC_ERR_INTERNAL, "unknown error");
  }
}


template <class... P>
bool any_null(const P*... p) {
  return ((p == nullptr) || ...);
}

sc_status null_arg() { return fail(SC_ERR_INVALID_ARGUMENT, "null pointer argument"); }

PropagatorConfig to_config(const sc_propagator_config* cfg) {
  PropagatorConfig out;
  if (cfg == nullptr) return out;
  switch (cfg->method) {
    case SC_METHOD_ADAPTIVE_RK: out.method = PropagatorMethod::adaptive_rk; break;
    case SC_METHOD_FIXED_RK4: out.method = PropagatorMethod::fixed_rk4; break;
    case SC_METHOD_DENSE_EXPM: out.method = PropagatorMethod::dense_expm_oracle; break;
    default: throw DomainError("unknown propagator method");
  }
  out.rel_tol = cfg->rel_tol;
  out.abs_tol = cfg->abs_tol;
  if (cfg->max_step > 0.0) out.max_step = cfg->max_step;
  out.threads = cfg->threads;
  out.validate();
  return out;
}

PhysicalParams to_params(const sc_physical_params& p) {
  PhysicalParams out;
  out.g = p.g;
  out.kappa = p.kappa;
  out.delta = p.delta;
  out.n_atoms = p.n_atoms;
  out.validate();
  return out;
}

WarningSink to_sink(sc_warning_callback warn, void* user) {
  if (warn == nullptr) return {};
  return [warn, user](std::string_view msg) { warn(std::string(msg).c_str(), user); };
}

ComplexVector read_vector(const double* re, const double* im, std::size_t len) {
  ComplexVector v(static_cast<Eigen::Index>(len));
  for (std::size_t i = 0; i < len; ++i) v(Eigen::Index(i)) = Complex(re[i], im == nullptr ? 0.0 : im[i]);
  return v;
}

void check_length(std::size_t have, std::size_t need) {
  if (have < need) throw DimensionError("buffer holds " + std::to_string(have) + " entries, need " + std::to_string(need));
}

}  // namespace

extern "C" {

const char* sc_version(void) { return "0.1.0"; }

const char* sc_last_error(void) { return g_last_error.c_str(); }

const char* sc_status_name(sc_status status) {
  switch (status) {
    case SC_OK: return "ok";
    case SC_ERR_INVALID_ARGUMENT: return "invalid argument";
    case SC_ERR_DOMAIN: return "domain error";
    case SC_ERR_DIMENSION: return "dimension mismatch";
    case SC_ERR_DEGENERATE: return "degenerate input";
    case SC_ERR_CONVERGENCE: return "convergence failure";
    case SC_ERR_FIT: return "fit failure";
    case SC_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void sc_propagator_config_default(sc_propagator_config* cfg) {
  if (cfg == nullptr) return;
  const PropagatorConfig d;
  cfg->method = SC_METHOD_ADAPTIVE_RK;
  cfg->rel_tol = d.rel_tol;
  cfg->abs_tol = d.abs_tol;
  cfg->max_step = 0.0;
  cfg->threads = 0;
}

sc_status sc_physical_derive(const sc_physical_params* params, sc_physical_derived* out) {
  if (any_null(params, out)) return null_arg();
  return guarded([&] {
    const PhysicalParams p = to_params(*params);
    *out = {p.eta(), p.t_class(), p.superradiance_valid() ? 1 : 0, p.dispersive_valid() ? 1 : 0};
  });
}

sc_status sc_multi_component_time(const sc_physical_params* params, int m, double* out_seconds) {
  if (any_null(params, out_seconds)) return null_arg();
  return guarded([&] { *out_seconds = multi_component_times(to_params(*params), m); });
}

sc_status sc_state_coherent(int two_j, double theta, double phi, sc_state** out) {
  if (out == nullptr) return null_arg();
  return guarded([&] {
    *out = new sc_state{coherent_vector(CoherentSpec::make(theta, phi), SpinSystem(two_j))};
  });
}

sc_status sc_state_basis(int two_j, size_t k, sc_state** out) {
  if (out == nullptr) return null_arg();
  return guarded([&] { *out = new sc_state{DickeVector::basis(SpinSystem(two_j), k)}; });
}

sc_status sc_state_cat(int two_j, double theta1, double phi1, double theta2, double phi2, double c1_re,
                       double c1_im, double c2_re, double c2_im, sc_state** out) {
  if (out == nullptr) return null_arg();
  return guarded([&] {
    CatSpec spec{CoherentSpec::make(theta1, phi1), CoherentSpec::make(theta2, phi2), Complex(c1_re, c1_im),
                 Complex(c2_re, c2_im)};
    *out = new sc_state{build_cat(spec, SpinSystem(two_j))};
  });
}

sc_status sc_state_from_amplitudes(int two_j, const double* re, const double* im, size_t len, sc_state** out) {
  if (any_null(re, out)) return null_arg();
  return guarded([&] { *out = new sc_state{DickeVector(SpinSystem(two_j), read_vector(re, im, len))}; });
}

sc_status sc_state_dispersive(const sc_state* psi, const sc_physical_params* params, double t_seconds,
                              sc_warning_callback warn, void* user, sc_state** out) {
  if (any_null(psi, params, out)) return null_arg();
  return guarded([&] {
    *out = new sc_state{propagate_dispersive(psi->value, to_params(*params), t_seconds, to_sink(warn, user))};
  });
}

sc_status sc_state_rotate(const sc_state* psi, double axis_phi, double angle, sc_state** out) {
  if (any_null(psi, out)) return null_arg();
  return guarded([&] { *out = new sc_state{apply(rotation_matrix(psi->value.sys, axis_phi, angle), psi->value)}; });
}

sc_status sc_state_dim(const sc_state* psi, size_t* out) {
  if (any_null(psi, out)) return null_arg();
  *out = psi->value.sys.dim();
  return SC_OK;
}

sc_status sc_state_amplitudes(const sc_state* psi, double* re, double* im, size_t len) {
  if (any_null(psi, re, im)) return null_arg();
  return guarded([&] {
    const auto& a = psi->value.amp;
    check_length(len, std::size_t(a.size()));
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      re[i] = a(i).real();
      im[i] = a(i).imag();
    }
  });
}

sc_status sc_state_overlap(const sc_state* a, const sc_state* b, double* re, double* im) {
  if (any_null(a, b, re, im)) return null_arg();
  return guarded([&] {
    const Complex v = overlap(a->value, b->value);
    *re = v.real();
    *im = v.imag();
  });
}

sc_status sc_state_bloch(const sc_state* psi, double out_xyz[3]) {
  if (any_null(psi, out_xyz)) return null_arg();
  return guarded([&] {
    const BlochVector b = bloch_vector(dyad(psi->value, psi->value));
    out_xyz[0] = b.x;
    out_xyz[1] = b.y;
    out_xyz[2] = b.z;
  });
}

sc_status sc_state_symmetric_decomposition(const sc_state* psi, double* theta, double* phi, double* captured) {
  if (any_null(psi, theta, phi, captured)) return null_arg();
  return guarded([&] {
    const auto d = symmetric_decomposition(psi->value);
    *theta = d.theta;
    *phi = d.phi;
    *captured = d.captured;
  });
}

void sc_state_free(sc_state* psi) { delete psi; }

sc_status sc_prepare_long_lived_cat(int two_j, double theta, double phi, const sc_physical_params* params,
                                    sc_warning_callback warn, void* user, sc_preparation** out) {
  if (any_null(params, out)) return null_arg();
  return guarded([&] {
    const SpinSystem sys(two_j);
    auto r = prepare_long_lived_cat_steps(theta, phi, to_params(*params), sys, to_sink(warn, user));
    const auto expected = two_component_superposition(CoherentSpec::make(theta, phi).theta,
                                                      CoherentSpec::make(theta, phi).phi, sys);
    const auto dec = symmetric_decomposition(r.final_state);
    sc_preparation_info info{r.component_phi,
                             r.pulse_axis_phi,
                             r.predicted_first.theta,
                             r.predicted_first.phi,
                             std::norm(overlap(expected, r.after_dispersive)),
                             dec.theta,
                             dec.phi,
                             dec.captured};
    *out = new sc_preparation{std::move(r), info};
  });
}

sc_status sc_preparation_step(const sc_preparation* prep, int step, sc_state** out) {
  if (any_null(prep, out)) return null_arg();
  return guarded([&] {
    switch (step) {
      case 1: *out = new sc_state{prep->result.after_pulse}; break;
      case 2: *out = new sc_state{prep->result.after_dispersive}; break;
      case 3: *out = new sc_state{prep->result.final_state}; break;
      default: throw DomainError("preparation step must be 1, 2 or 3");
    }
  });
}

sc_status sc_preparation_info_get(const sc_preparation* prep, sc_preparation_info* out) {
  if (any_null(prep, out)) return null_arg();
  *out = prep->info;
  return SC_OK;
}

void sc_preparation_free(sc_preparation* prep) { delete prep; }

sc_status sc_operator_dyad(const sc_state* a, const sc_state* b, sc_operator** out) {
  if (any_null(a, b, out)) return null_arg();
  return guarded([&] { *out = new sc_operator{dyad(a->value, b->value)}; });
}

sc_status sc_operator_from_elements(int two_j, const double* re, const double* im, size_t len, sc_operator** out) {
  if (any_null(re, out)) return null_arg();
  return guarded([&] {
    const SpinSystem sys(two_j);
    const std::size_t d = sys.dim();
    if (len != d * d) throw DimensionError("operator needs " + std::to_string(d * d) + " elements");
    ComplexMatrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c)
        m(Eigen::Index(r), Eigen::Index(c)) = Complex(re[r * d + c], im == nullptr ? 0.0 : im[r * d + c]);
    *out = new sc_operator{SpinOperator(sys, std::move(m))};
  });
}

sc_status sc_operator_dim(const sc_operator* op, size_t* out) {
  if (any_null(op, out)) return null_arg();
  *out = op->value.sys.dim();
  return SC_OK;
}

sc_status sc_operator_elements(const sc_operator* op, double* re, double* im, size_t len) {
  if (any_null(op, re, im)) return null_arg();
  return guarded([&] {
    const std::size_t d = op->value.sys.dim();
    check_length(len, d * d);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) {
        const Complex v = op->value.mat(Eigen::Index(r), Eigen::Index(c));
        re[r * d + c] = v.real();
        im[r * d + c] = v.imag();
      }
  });
}

sc_status sc_operator_lindblad(const sc_operator* rho, sc_operator** out) {
  if (any_null(rho, out)) return null_arg();
  return guarded([&] { *out = new sc_operator{lindblad_apply(rho->value)}; });
}

sc_status sc_operator_propagate(const sc_operator* rho, double tau, const sc_propagator_config* cfg,
                                sc_operator** out) {
  if (any_null(rho, out)) return null_arg();
  return guarded([&] { *out = new sc_operator{propagate(rho->value, tau, to_config(cfg))}; });
}

sc_status sc_operator_propagate_samples(const sc_operator* rho, const double* taus, size_t count,
                                        const sc_propagator_config* cfg, sc_operator** out) {
  if (any_null(rho, taus, out)) return null_arg();
  return guarded([&] {
    const BandPropagator prop(rho->value.sys, to_config(cfg));
    auto states = prop.sample(rho->value, std::span<const double>(taus, count));
    for (std::size_t i = 0; i < count; ++i) out[i] = new sc_operator{std::move(states[i])};
  });
}

sc_status sc_operator_norm(const sc_operator* op, sc_norm_kind kind, double* out) {
  if (any_null(op, out)) return null_arg();
  return guarded([&] { *out = coherence_norm(op->value, kind == SC_NORM_ABS ? NormKind::abs : NormKind::hs); });
}

sc_status sc_operator_trace(const sc_operator* op, double* re, double* im) {
  if (any_null(op, re, im)) return null_arg();
  const Complex t = op->value.trace();
  *re = t.real();
  *im = t.imag();
  return SC_OK;
}

sc_status sc_operator_purity(const sc_operator* op, double* out) {
  if (any_null(op, out)) return null_arg();
  return guarded([&] { *out = purity(op->value); });
}

sc_status sc_operator_bloch(const sc_operator* op, double out_xyz[3]) {
  if (any_null(op, out_xyz)) return null_arg();
  return guarded([&] {
    const BlochVector b = bloch_vector(op->value);
    out_xyz[0] = b.x;
    out_xyz[1] = b.y;
    out_xyz[2] = b.z;
  });
}

sc_status sc_operator_initial_slope(const sc_operator* rho, sc_norm_kind kind, const sc_propagator_config* cfg,
                                    double* slope, double* error) {
  if (any_null(rho, slope, error)) return null_arg();
  return guarded([&] {
    const auto est = initial_slope(rho->value, kind == SC_NORM_ABS ? NormKind::abs : NormKind::hs, to_config(cfg));
    *slope = est.slope;
    *error = est.error;
  });
}

void sc_operator_free(sc_operator* op) { delete op; }

sc_status sc_fit_decay(const double* taus, const double* values, size_t count, sc_fit_model model,
                       sc_decay_fit* out) {
  if (any_null(taus, values, out)) return null_arg();
  return guarded([&] {
    std::vector<DecaySample> samples(count);
    for (std::size_t i = 0; i < count; ++i) samples[i] = {taus[i], values[i]};
    const auto fit = fit_decay(samples, model == SC_FIT_QUADRATIC ? DecayModel::quadratic : DecayModel::linear);
    *out = {fit.rate, fit.quadratic, fit.intercept, fit.window.first, fit.window.second, fit.residual};
  });
}

sc_status sc_eigen_angle(int two_j, double theta, double phi, double* out) {
  if (out == nullptr) return null_arg();
  return guarded([&] { *out = eigen_angle(CoherentSpec::make(theta, phi), SpinSystem(two_j)); });
}

sc_status sc_analytic_cos2_alpha(double theta, double j, double* out) {
  if (out == nullptr) return null_arg();
  return guarded([&] { *out = cos2_alpha(theta, j); });
}

sc_status sc_analytic_n1_initial_slope(double theta1, double phi1, double theta2, double phi2, double j,
                                       sc_slope_prediction* out) {
  if (out == nullptr) return null_arg();
  return guarded([&] {
    const auto p = n1_initial_slope(theta1, phi1, theta2, phi2, j);
    *out = {p.slow, p.fast, p.total};
  });
}

sc_status sc_analytic_n2_rate_general(double gamma1, double gamma2, double j, double* out) {
  if (out == nullptr) return null_arg();
  return guarded([&] { *out = n2_rate_general(gamma1, gamma2, j); });
}

sc_status sc_analytic_n2_symmetric(double gamma1, double* linear, double* quadratic) {
  if (any_null(linear, quadratic)) return null_arg();
  return guarded([&] {
    const auto c = n2_symmetric_coefficients(gamma1);
    *linear = c.linear;
    *quadratic = c.quadratic;
  });
}

sc_status sc_analytic_n2_rate_diagonal(double gamma, double* out) {
  if (out == nullptr) return null_arg();
  return guarded([&] { *out = n2_rate_diagonal(gamma); });
}

sc_status sc_analytic_polar_cat_norms(double tau, double* n1, double* n2) {
  if (any_null(n1, n2)) return null_arg();
  return guarded([&] {
    const auto [a, b] = polar_cat_norms(tau);
    *n1 = a;
    *n2 = b;
  });
}

sc_status sc_analytic_classical_theta(double theta0, double tau, double* out) {
  if (out == nullptr) return null_arg();
  return guarded([&] { *out = classical_theta(theta0, tau); });
}

int sc_verify_criterion_count(void) { return verification::kCriterionCount; }

sc_status sc_verify_run(int criterion_id, const sc_propagator_config* cfg, sc_criterion_callback on_result,
                        void* user, int* all_passed) {
  if (all_passed == nullptr) return null_arg();
  return guarded([&] {
    const PropagatorConfig config = to_config(cfg);
    auto report = [&](const verification::CriterionResult& r) {
      if (on_result == nullptr) return;
      const sc_criterion_result c{r.id,        r.name.c_str(), r.passed ? 1 : 0, r.measured, r.threshold,
                                  r.runtime_s, r.runtime_limit_s, r.detail.c_str()};
      on_result(&c, user);
    };
    bool ok = true;
    if (criterion_id == 0) {
      for (const auto& r : verification::run_all(config, report)) ok = ok && r.passed;
    } else {
      const auto r = verification::run_criterion(criterion_id, config);
      report(r);
      ok = r.passed;
    }
    *all_passed = ok ? 1 : 0;
  });
}

}  // extern "C"

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

// Exercises the shared library through its C interface only.
#include <cmath>
#include <complex>
#include <cstring>
#include <string>
#include <thread>
#include <vector>

#include "doctest.h"
#include "supercat/supercat.h"

namespace {

constexpr double kPi = 3.14159265358979323846;

sc_propagator_config defaults() {
  sc_propagator_config c;
  sc_propagator_config_default(&c);
  return c;
}

struct Collected {
  std::vector<int> ids;
  std::vector<int> passed;
};

void collect(const sc_criterion_result* r, void* user) {
  auto* c = static_cast<Collected*>(user);
  c->ids.push_back(r->id);
  c->passed.push_back(r->passed);
}

void count_warning(const char*, void* user) { ++*static_cast<int*>(user); }

}  // namespace

TEST_CASE("library metadata") {
  CHECK(std::string(sc_version()) == "0.1.0");
  CHECK(std::string(sc_status_name(SC_OK)) == "ok");
  CHECK(std::string(sc_status_name(SC_ERR_DEGENERATE)) == "degenerate input");
  CHECK(sc_verify_criterion_count() == 9);
  const sc_propagator_config c = defaults();
  CHECK(c.method == SC_METHOD_ADAPTIVE_RK);
  CHECK(c.rel_tol == 1e-10);
  CHECK(c.max_step == 0.0);
}

TEST_CASE("null arguments are rejected") {
  CHECK(sc_state_coherent(4, 1.0, 0.0, nullptr) == SC_ERR_INVALID_ARGUMENT);
  CHECK(std::strlen(sc_last_error()) > 0);
  size_t dim = 0;
  CHECK(sc_state_dim(nullptr, &dim) == SC_ERR_INVALID_ARGUMENT);
  sc_state_free(nullptr);
  sc_operator_free(nullptr);
  sc_preparation_free(nullptr);
}

TEST_CASE("coherent states through the C API") {
  sc_state* s = nullptr;
  REQUIRE(sc_state_coherent(1, 1.1, 0.4, &s) == SC_OK);
  size_t dim = 0;
  CHECK(sc_state_dim(s, &dim) == SC_OK);
  CHECK(dim == 2);
  double re[2], im[2];
  REQUIRE(sc_state_amplitudes(s, re, im, 2) == SC_OK);
  CHECK(re[0] == doctest::Approx(std::cos(0.55)));
  CHECK(im[0] == doctest::Approx(0.0));
  CHECK(re[1] == doctest::Approx(std::sin(0.55) * std::cos(0.4)));
  CHECK(im[1] == doctest::Approx(std::sin(0.55) * std::sin(0.4)));
  CHECK(sc_state_amplitudes(s, re, im, 1) == SC_ERR_DIMENSION);

  double xyz[3];
  REQUIRE(sc_state_bloch(s, xyz) == SC_OK);
  CHECK(xyz[2] == doctest::Approx(0.5 * std::cos(1.1)));
  sc_state_free(s);

  CHECK(sc_state_coherent(4, 4.0, 0.0, &s) == SC_ERR_DOMAIN);
  CHECK(std::string(sc_last_error()).find("theta") != std::string::npos);
  CHECK(sc_state_coherent(-3, 1.0, 0.0, &s) == SC_ERR_DOMAIN);
}

TEST_CASE("states from amplitudes, rotations and overlaps") {
  const double re[3] = {1.0, 0.0, 0.0};
  sc_state* up = nullptr;
  REQUIRE(sc_state_from_amplitudes(2, re, nullptr, 3, &up) == SC_OK);
  sc_state* bad = nullptr;
  CHECK(sc_state_from_amplitudes(2, re, nullptr, 2, &bad) == SC_ERR_DIMENSION);

  sc_state* turned = nullptr;
  REQUIRE(sc_state_rotate(up, 0.3, 0.8, &turned) == SC_OK);
  sc_state* target = nullptr;
  REQUIRE(sc_state_coherent(2, 0.8, 0.3 + kPi, &target) == SC_OK);
  double ore = 0.0, oim = 0.0;
  REQUIRE(sc_state_overlap(target, turned, &ore, &oim) == SC_OK);
  CHECK(std::hypot(ore, oim) == doctest::Approx(1.0).epsilon(1e-12));

  sc_state* other = nullptr;
  REQUIRE(sc_state_coherent(3, 0.8, 0.0, &other) == SC_OK);
  CHECK(sc_state_overlap(up, other, &ore, &oim) == SC_ERR_DIMENSION);
  for (sc_state* s : {up, turned, target, other}) sc_state_free(s);
}

TEST_CASE("cat states through the C API") {
  sc_state* cat = nullptr;
  REQUIRE(sc_state_cat(10, 0.0, 0.0, kPi, 0.0, 1.0, 0.0, 1.0, 0.0, &cat) == SC_OK);
  std::vector<double> re(11), im(11);
  REQUIRE(sc_state_amplitudes(cat, re.data(), im.data(), 11) == SC_OK);
  CHECK(re[0] == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(re[10] == doctest::Approx(1.0 / std::sqrt(2.0)));
  sc_state_free(cat);
  CHECK(sc_state_cat(10, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0, -1.0, 0.0, &cat) == SC_ERR_DEGENERATE);
  CHECK(sc_state_cat(10, 1.0, 0.0, 2.0, 0.0, 0.0, 0.0, 0.0, 0.0, &cat) == SC_ERR_DOMAIN);
}

TEST_CASE("operators, damping and norms") {
  sc_state *n = nullptr, *s = nullptr;
  REQUIRE(sc_state_coherent(12, 0.0, 0.0, &n) == SC_OK);
  REQUIRE(sc_state_coherent(12, kPi, 0.0, &s) == SC_OK);
  sc_operator* polar = nullptr;
  REQUIRE(sc_operator_dyad(n, s, &polar) == SC_OK);

  const sc_propagator_config cfg = defaults();
  sc_operator* later = nullptr;
  REQUIRE(sc_operator_propagate(polar, 1.5, &cfg, &later) == SC_OK);
  double n1 = 0.0, n2 = 0.0;
  REQUIRE(sc_operator_norm(later, SC_NORM_HS, &n1) == SC_OK);
  REQUIRE(sc_operator_norm(later, SC_NORM_ABS, &n2) == SC_OK);
  CHECK(n1 == doctest::Approx(std::exp(-3.0)).epsilon(1e-10));
  CHECK(n2 == doctest::Approx(std::exp(-1.5)).epsilon(1e-10));

  sc_operator* nope = nullptr;
  CHECK(sc_operator_propagate(polar, -1.0, &cfg, &nope) == SC_ERR_DOMAIN);
  sc_operator_free(later);
  // A null configuration selects the defaults.
  REQUIRE(sc_operator_propagate(polar, 1.0, nullptr, &later) == SC_OK);
  REQUIRE(sc_operator_norm(later, SC_NORM_ABS, &n2) == SC_OK);
  CHECK(n2 == doctest::Approx(std::exp(-1.0)).epsilon(1e-10));
  sc_operator_free(later);

  const double taus[3] = {0.0, 0.5, 1.0};
  sc_operator* samples[3] = {};
  REQUIRE(sc_operator_propagate_samples(polar, taus, 3, &cfg, samples) == SC_OK);
  for (int i = 0; i < 3; ++i) {
    REQUIRE(sc_operator_norm(samples[i], SC_NORM_ABS, &n2) == SC_OK);
    CHECK(n2 == doctest::Approx(std::exp(-taus[i])).epsilon(1e-10));
    sc_operator_free(samples[i]);
  }

  double slope = 0.0, err = 0.0;
  REQUIRE(sc_operator_initial_slope(polar, SC_NORM_HS, &cfg, &slope, &err) == SC_OK);
  CHECK(slope == doctest::Approx(-2.0).epsilon(1e-6));

  double tr_re = 1.0, tr_im = 1.0;
  REQUIRE(sc_operator_trace(polar, &tr_re, &tr_im) == SC_OK);
  CHECK(tr_re == 0.0);
  double xyz[3];
  CHECK(sc_operator_bloch(polar, xyz) == SC_ERR_DOMAIN);

  sc_operator* gen = nullptr;
  REQUIRE(sc_operator_lindblad(polar, &gen) == SC_OK);
  std::vector<double> re(169), im(169);
  REQUIRE(sc_operator_elements(gen, re.data(), im.data(), re.size()) == SC_OK);
  CHECK(re[12] == doctest::Approx(-1.0).epsilon(1e-14));  // row 0, column 12
  CHECK(sc_operator_elements(gen, re.data(), im.data(), 10) == SC_ERR_DIMENSION);
  sc_operator_free(gen);
  sc_operator_free(polar);
  sc_state_free(n);
  sc_state_free(s);
}

TEST_CASE("operators from row-major elements") {
  const double re[4] = {0.75, 0.0, 0.0, 0.25};
  sc_operator* rho = nullptr;
  REQUIRE(sc_operator_from_elements(1, re, nullptr, 4, &rho) == SC_OK);
  double p = 0.0;
  REQUIRE(sc_operator_purity(rho, &p) == SC_OK);
  CHECK(p == doctest::Approx(0.625));
  double xyz[3];
  REQUIRE(sc_operator_bloch(rho, xyz) == SC_OK);
  CHECK(xyz[2] == doctest::Approx(0.25));
  sc_operator_free(rho);

  const double asym[4] = {0.0, 1.0, 0.0, 0.0};
  REQUIRE(sc_operator_from_elements(1, asym, nullptr, 4, &rho) == SC_OK);
  double out_re[4], out_im[4];
  REQUIRE(sc_operator_elements(rho, out_re, out_im, 4) == SC_OK);
  CHECK(out_re[1] == 1.0);
  CHECK(out_re[2] == 0.0);
  sc_operator_free(rho);
  CHECK(sc_operator_from_elements(1, re, nullptr, 3, &rho) == SC_ERR_DIMENSION);
}

TEST_CASE("propagator configuration errors") {
  sc_state* n = nullptr;
  REQUIRE(sc_state_coherent(4, 1.0, 0.0, &n) == SC_OK);
  sc_operator* rho = nullptr;
  REQUIRE(sc_operator_dyad(n, n, &rho) == SC_OK);
  sc_operator* out = nullptr;

  sc_propagator_config cfg = defaults();
  cfg.rel_tol = 0.0;
  CHECK(sc_operator_propagate(rho, 1.0, &cfg, &out) == SC_ERR_DOMAIN);
  cfg = defaults();
  cfg.method = static_cast<sc_method>(42);
  CHECK(sc_operator_propagate(rho, 1.0, &cfg, &out) == SC_ERR_DOMAIN);
  cfg = defaults();
  cfg.rel_tol = 1e-300;
  cfg.abs_tol = 0.0;
  CHECK(sc_operator_propagate(rho, 1.0, &cfg, &out) == SC_ERR_CONVERGENCE);
  CHECK(std::string(sc_last_error()).find("reached tau") != std::string::npos);
  cfg = defaults();
  cfg.method = SC_METHOD_DENSE_EXPM;
  REQUIRE(sc_operator_propagate(rho, 0.2, &cfg, &out) == SC_OK);
  sc_operator_free(out);
  sc_operator_free(rho);
  sc_state_free(n);
}

TEST_CASE("errors are reported per thread") {
  sc_state* s = nullptr;
  REQUIRE(sc_state_coherent(4, 9.0, 0.0, &s) == SC_ERR_DOMAIN);
  const std::string mine = sc_last_error();
  std::thread([] {
    sc_operator* out = nullptr;
    (void)sc_operator_propagate(nullptr, 1.0, nullptr, &out);
  }).join();
  CHECK(std::string(sc_last_error()) == mine);
}

TEST_CASE("fits and analytic laws") {
  std::vector<double> taus, values;
  for (int i = 0; i < 10; ++i) {
    taus.push_back(0.1 * i);
    values.push_back(std::exp(-0.7 * taus.back()));
  }
  sc_decay_fit fit{};
  REQUIRE(sc_fit_decay(taus.data(), values.data(), taus.size(), SC_FIT_LINEAR, &fit) == SC_OK);
  CHECK(fit.rate == doctest::Approx(0.7));
  CHECK(fit.tau_max == doctest::Approx(0.9));
  const double same[3] = {0.2, 0.2, 0.2};
  CHECK(sc_fit_decay(same, values.data(), 3, SC_FIT_LINEAR, &fit) == SC_ERR_FIT);
  values[3] = -1.0;
  CHECK(sc_fit_decay(taus.data(), values.data(), taus.size(), SC_FIT_LINEAR, &fit) == SC_ERR_DOMAIN);

  double v = 0.0, w = 0.0;
  REQUIRE(sc_analytic_cos2_alpha(kPi / 2, 10.0, &v) == SC_OK);
  CHECK(v == doctest::Approx(20.0 / 21.0));
  REQUIRE(sc_eigen_angle(20, kPi / 2, 0.0, &w) == SC_OK);
  CHECK(w == doctest::Approx(v));
  sc_slope_prediction sp{};
  REQUIRE(sc_analytic_n1_initial_slope(kPi / 2, 0.0, kPi / 2, kPi, 10.0, &sp) == SC_OK);
  CHECK(sp.total == doctest::Approx(-41.0));
  REQUIRE(sc_analytic_n2_rate_general(1.0, 0.0, 50.0, &v) == SC_OK);
  CHECK(v == doctest::Approx(25.0));
  REQUIRE(sc_analytic_n2_symmetric(1.0, &v, &w) == SC_OK);
  CHECK(v == doctest::Approx(0.0));
  CHECK(w == doctest::Approx(0.125));
  CHECK(sc_analytic_n2_symmetric(0.0, &v, &w) == SC_ERR_DOMAIN);
  REQUIRE(sc_analytic_n2_rate_diagonal(std::sqrt(3.0), &v) == SC_OK);
  CHECK(v == doctest::Approx(2.25));
  REQUIRE(sc_analytic_polar_cat_norms(1.0, &v, &w) == SC_OK);
  CHECK(v == doctest::Approx(std::exp(-2.0)));
  REQUIRE(sc_analytic_classical_theta(kPi / 2, std::log(2.0), &v) == SC_OK);
  CHECK(v == doctest::Approx(2.0 * std::atan(2.0)));
}

TEST_CASE("physical parameters through the C API") {
  const sc_physical_params p{1.0, 100.0, 2000.0, 16};
  sc_physical_derived d{};
  REQUIRE(sc_physical_derive(&p, &d) == SC_OK);
  CHECK(d.eta == doctest::Approx(2000.0 / (10000.0 + 4e6)));
  CHECK(d.t_class == doctest::Approx(100.0 / 16.0));
  CHECK(d.superradiance_valid == 1);
  CHECK(d.dispersive_valid == 1);
  double t = 0.0;
  REQUIRE(sc_multi_component_time(&p, 2, &t) == SC_OK);
  CHECK(t == doctest::Approx(kPi / (2.0 * d.eta)));
  CHECK(sc_multi_component_time(&p, 3, &t) == SC_ERR_DOMAIN);
  const sc_physical_params bad{-1.0, 1.0, 1.0, 4};
  CHECK(sc_physical_derive(&bad, &d) == SC_ERR_DOMAIN);
}

TEST_CASE("dispersive evolution and preparation") {
  const sc_physical_params weak{1.0, 1.0, 2.0, 10};
  sc_state* psi = nullptr;
  REQUIRE(sc_state_coherent(10, kPi / 2, 0.0, &psi) == SC_OK);
  int warnings = 0;
  sc_state* out = nullptr;
  REQUIRE(sc_state_dispersive(psi, &weak, 1.0, count_warning, &warnings, &out) == SC_OK);
  CHECK(warnings == 1);
  sc_state_free(out);

  const sc_physical_params p{1.0, 1.0, 100.0, 20};
  sc_preparation* prep = nullptr;
  REQUIRE(sc_prepare_long_lived_cat(20, kPi / 3, 0.4, &p, nullptr, nullptr, &prep) == SC_OK);
  sc_preparation_info info{};
  REQUIRE(sc_preparation_info_get(prep, &info) == SC_OK);
  CHECK(info.predicted_theta == doctest::Approx(kPi / 6));
  CHECK(info.step2_fidelity == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(info.symmetric_captured >= 1.0 - 1e-8);
  CHECK(info.symmetric_theta == doctest::Approx(kPi / 6).epsilon(1e-5));
  for (int step = 1; step <= 3; ++step) {
    REQUIRE(sc_preparation_step(prep, step, &out) == SC_OK);
    sc_state_free(out);
  }
  CHECK(sc_preparation_step(prep, 4, &out) == SC_ERR_DOMAIN);
  sc_preparation_free(prep);

  const sc_physical_params wrong_n{1.0, 1.0, 100.0, 21};
  CHECK(sc_prepare_long_lived_cat(20, 1.0, 0.0, &wrong_n, nullptr, nullptr, &prep) == SC_ERR_DOMAIN);
  sc_state_free(psi);
}

TEST_CASE("verification entry point") {
  const sc_propagator_config cfg = defaults();
  Collected got;
  int all = 0;
  REQUIRE(sc_verify_run(1, &cfg, collect, &got, &all) == SC_OK);
  CHECK(all == 1);
  REQUIRE(got.ids.size() == 1);
  CHECK(got.ids[0] == 1);
  CHECK(got.passed[0] == 1);
  CHECK(sc_verify_run(1, &cfg, nullptr, nullptr, nullptr) == SC_ERR_INVALID_ARGUMENT);
  sc_propagator_config bad = cfg;
  bad.rel_tol = -1.0;
  CHECK(sc_verify_run(1, &bad, collect, &got, &all) == SC_ERR_DOMAIN);
  CHECK(sc_verify_run(99, &cfg, collect, &got, &all) != SC_OK);
}

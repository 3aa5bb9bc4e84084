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

#include <cmath>
#include <vector>

#include "doctest.h"
#include "supercat/analytics.hpp"
#include "supercat/dynamics.hpp"
#include "supercat/errors.hpp"
#include "supercat/observables.hpp"
#include "test_support.hpp"

using namespace supercat;

namespace {

SpinOperator coherent_dyad(const SpinSystem& s, double t1, double p1, double t2, double p2) {
  return dyad(coherent_vector(CoherentSpec::make(t1, p1), s), coherent_vector(CoherentSpec::make(t2, p2), s));
}

std::vector<DecaySample> sampled(double (*f)(double), double tau_max, int n) {
  std::vector<DecaySample> out;
  for (int i = 0; i < n; ++i) {
    const double t = tau_max * i / (n - 1);
    out.push_back({t, f(t)});
  }
  return out;
}

}  // namespace

TEST_CASE("coherence norms of simple operators") {
  const SpinSystem s(8);
  CHECK(norm_hs(coherent_dyad(s, 0.4, 0.1, 2.2, 1.9)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(norm_hs(SpinOperator::zero(s)) == 0.0);
  CHECK(norm_abs(SpinOperator::zero(s)) == 0.0);

  const SpinSystem half(1);
  CHECK(norm_abs(SpinOperator(half, SpinOperator::identity(half).mat / 2.0)) == doctest::Approx(1.0));

  SpinOperator single = SpinOperator::zero(s);
  single.mat(2, 5) = std::polar(0.3, 1.0);
  CHECK(norm_abs(single) == doctest::Approx(0.3));
  CHECK(coherence_norm(single, NormKind::hs) == doctest::Approx(0.09));
}

TEST_CASE("polar dyad norms under damping") {
  const SpinSystem s(14);
  const SpinOperator polar = coherent_dyad(s, 0.0, 0.0, kPi, 0.0);
  for (double tau : {0.25, 1.0, 2.5}) {
    const SpinOperator rho = propagate(polar, tau);
    CHECK(norm_hs(rho) == doctest::Approx(std::exp(-2.0 * tau)).epsilon(1e-10));
    CHECK(norm_abs(rho) == doctest::Approx(std::exp(-tau)).epsilon(1e-10));
  }
}

TEST_CASE("initial slopes by finite differences") {
  const SpinSystem s(20);
  const auto polar = initial_slope(coherent_dyad(s, 0.0, 0.0, kPi, 0.0), NormKind::hs);
  CHECK(std::abs(polar.slope + 2.0) < 1e-6);
  CHECK(polar.error < 1e-6);
  CHECK(polar.step > 0.0);

  const auto top = initial_slope(coherent_dyad(s, 0.0, 0.0, 0.0, 0.0), NormKind::hs);
  CHECK(std::abs(top.slope + 4.0) < 1e-6);

  const auto phi_cat = initial_slope(coherent_dyad(s, kPi / 2, 0.0, kPi / 2, kPi), NormKind::hs);
  CHECK(phi_cat.slope == doctest::Approx(-41.0).epsilon(1e-6));

  const auto n2 = initial_slope(coherent_dyad(s, 0.0, 0.0, kPi, 0.0), NormKind::abs);
  CHECK(std::abs(n2.slope + 1.0) < 1e-6);
}

TEST_CASE("decay fits") {
  const auto exact = sampled([](double t) { return std::exp(-2.0 * t); }, 1.0, 11);
  const DecayFit lin = fit_decay(exact, DecayModel::linear);
  CHECK(lin.rate == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(lin.residual < 1e-12);
  CHECK(lin.intercept == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(lin.window.first == 0.0);
  CHECK(lin.window.second == 1.0);

  const auto quad_samples = sampled([](double t) { return 3.0 * std::exp(-t - t * t / 8.0); }, 2.0, 15);
  const DecayFit quad = fit_decay(quad_samples, DecayModel::quadratic);
  CHECK(quad.rate == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(quad.quadratic == doctest::Approx(0.125).epsilon(1e-10));
  CHECK(quad.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-12));

  const auto flat = sampled([](double) { return 0.7; }, 1.0, 5);
  CHECK(std::abs(fit_decay(flat, DecayModel::linear).rate) < 1e-14);
  CHECK(fit_decay(flat, DecayModel::linear).quadratic == 0.0);

  // Tiny windows, as used for the fast rates, stay well conditioned.
  const auto narrow = sampled([](double t) { return std::exp(-37.0 * t); }, 1e-3, 20);
  CHECK(fit_decay(narrow, DecayModel::quadratic).rate == doctest::Approx(37.0).epsilon(1e-8));
}

TEST_CASE("decay fit errors") {
  std::vector<DecaySample> few = {{0.0, 1.0}, {1.0, 0.5}};
  CHECK_THROWS_AS(fit_decay(few, DecayModel::linear), DomainError);
  std::vector<DecaySample> negative = {{0.0, 1.0}, {0.5, -0.1}, {1.0, 0.5}};
  CHECK_THROWS_AS(fit_decay(negative, DecayModel::linear), DomainError);
  std::vector<DecaySample> zero = {{0.0, 1.0}, {0.5, 0.0}, {1.0, 0.5}};
  CHECK_THROWS_AS(fit_decay(zero, DecayModel::linear), DomainError);
  std::vector<DecaySample> same_time = {{0.3, 1.0}, {0.3, 0.9}, {0.3, 0.8}};
  CHECK_THROWS_AS(fit_decay(same_time, DecayModel::linear), FitError);
  std::vector<DecaySample> two_times = {{0.0, 1.0}, {0.5, 0.9}, {0.5, 0.8}, {0.0, 0.95}};
  CHECK_THROWS_AS(fit_decay(two_times, DecayModel::quadratic), FitError);
  CHECK_NOTHROW(fit_decay(two_times, DecayModel::linear));
}

TEST_CASE("sample grids and norm series") {
  const auto g = uniform_grid(2.0, 5);
  CHECK(g == std::vector<double>{0.0, 0.5, 1.0, 1.5, 2.0});
  CHECK_THROWS_AS(uniform_grid(1.0, 1), DomainError);

  const SpinSystem s(6);
  const auto series = norm_series(coherent_dyad(s, 0.0, 0.0, kPi, 0.0), NormKind::abs, g);
  REQUIRE(series.size() == 5);
  for (const auto& p : series) CHECK(p.value == doctest::Approx(std::exp(-p.tau)).epsilon(1e-11));
}

TEST_CASE("Bloch vectors") {
  for (int two_j : {3, 10}) {
    const SpinSystem s(two_j);
    const double j = s.j(), th = 1.2, ph = 2.3;
    const BlochVector b = bloch_vector(coherent_dyad(s, th, ph, th, ph));
    CHECK(b.x == doctest::Approx(j * std::sin(th) * std::cos(ph)));
    CHECK(b.y == doctest::Approx(j * std::sin(th) * std::sin(ph)));
    CHECK(b.z == doctest::Approx(j * std::cos(th)));

    const BlochVector down = bloch_vector(coherent_dyad(s, kPi, 0.0, kPi, 0.0));
    CHECK(down.z == doctest::Approx(-j));
    CHECK(std::abs(down.x) + std::abs(down.y) < 1e-15);

    const BlochVector mixed = bloch_vector(SpinOperator::identity(s));
    CHECK(std::abs(mixed.x) + std::abs(mixed.y) + std::abs(mixed.z) < 1e-14);
  }
  CHECK_THROWS_AS(bloch_vector(coherent_dyad(SpinSystem(4), 0.0, 0.0, kPi, 0.0)), DomainError);
}

TEST_CASE("purity") {
  const SpinSystem s(5);
  CHECK(purity(coherent_dyad(s, 1.0, 0.5, 1.0, 0.5)) == doctest::Approx(1.0));
  CHECK(purity(SpinOperator::identity(s)) == doctest::Approx(1.0 / 6.0));
  CHECK_THROWS_AS(purity(SpinOperator::zero(s)), DomainError);
}

TEST_CASE("approximate eigenstate angle") {
  CHECK(eigen_angle(CoherentSpec::make(0.0), SpinSystem(20)) == doctest::Approx(0.0));
  CHECK(eigen_angle(CoherentSpec::make(kPi / 2), SpinSystem(20)) == doctest::Approx(20.0 / 21.0).epsilon(1e-13));
  for (int two_j : {5, 12, 40}) {
    const SpinSystem s(two_j);
    for (double th : {0.3, 1.0, 2.0, 2.8})
      CHECK(eigen_angle(CoherentSpec::make(th, 0.4), s) == doctest::Approx(cos2_alpha(th, s.j())).epsilon(1e-12));
  }

  // 1 - 1/(2 j gamma^2) + O(1/j^2) for gamma = 1.5
  const double gamma = 1.5;
  double previous = 0.0;
  for (int two_j : {40, 80, 160}) {
    const double j = 0.5 * two_j;
    const double exact = eigen_angle(CoherentSpec::from_gamma(gamma), SpinSystem(two_j));
    const double scaled = std::abs(exact - (1.0 - 1.0 / (2.0 * j * gamma * gamma))) * j * j;
    CHECK(scaled < 1.0);
    if (previous > 0.0) CHECK(scaled == doctest::Approx(previous).epsilon(0.1));
    previous = scaled;
  }
}

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
#include <string>
#include <vector>

#include "doctest.h"
#include "supercat/cats.hpp"
#include "supercat/dynamics.hpp"
#include "supercat/errors.hpp"
#include "test_support.hpp"

using namespace supercat;
using supercat::testing::max_abs_diff;

namespace {

SpinOperator polar_dyad(const SpinSystem& s) {
  return dyad(DickeVector::basis(s, 0), DickeVector::basis(s, s.dim() - 1));
}

SpinOperator ground(const SpinSystem& s) {
  return dyad(DickeVector::basis(s, s.dim() - 1), DickeVector::basis(s, s.dim() - 1));
}

PhysicalParams detuned(int n) { return PhysicalParams{1.0, 1.0, 100.0, n}; }

}  // namespace

TEST_CASE("physical parameters") {
  const PhysicalParams p{2.0, 30.0, 400.0, 9};
  CHECK(p.eta() == doctest::Approx(4.0 * 400.0 / (900.0 + 160000.0)));
  CHECK(p.t_class() == doctest::Approx(30.0 / 36.0));
  CHECK(p.tau_from_seconds(p.seconds_from_tau(1.7)) == doctest::Approx(1.7));
  CHECK(p.superradiance_valid() == false);  // 30 < 10 * 2 * 3
  CHECK(p.dispersive_valid());
  CHECK(p.regime_warnings().size() == 1);
  CHECK(PhysicalParams{1.0, 100.0, 2000.0, 16}.regime_warnings().empty());
  CHECK(PhysicalParams{1.0, 100.0, 20.0, 16}.regime_warnings().size() == 1);

  CHECK_THROWS_AS((PhysicalParams{0.0, 1.0, 1.0, 4}.validate()), DomainError);
  CHECK_THROWS_AS((PhysicalParams{1.0, -1.0, 1.0, 4}.validate()), DomainError);
  CHECK_THROWS_AS((PhysicalParams{1.0, 1.0, 1.0, 0}.validate()), DomainError);
  CHECK_THROWS_AS((PhysicalParams{1.0, 1.0, INFINITY, 2}.validate()), DomainError);
  CHECK_NOTHROW((PhysicalParams{1.0, 1.0, -3.0, 2}.validate()));
}

TEST_CASE("generator on special operators") {
  const SpinSystem s(8);
  CHECK(lindblad_apply(ground(s)).mat.cwiseAbs().maxCoeff() == 0.0);
  const SpinOperator polar = polar_dyad(s);
  CHECK(max_abs_diff(lindblad_apply(polar).mat, -polar.mat) < 1e-15);
}

TEST_CASE("generator matches the dense operator form") {
  testing::Random rng(11);
  for (int two_j : {1, 2, 3, 6, 9, 14}) {
    const SpinSystem s(two_j);
    const ComplexMatrix rho = rng.matrix(Eigen::Index(s.dim()));
    const ComplexMatrix got = lindblad_apply(SpinOperator(s, rho)).mat;
    CHECK(max_abs_diff(got, testing::oracle_lindblad(s.j(), rho)) < 1e-12 * (1.0 + s.j()));
  }
  const SpinSystem s3(6);
  for (int i = 0; i < 5; ++i) {
    const SpinOperator h(s3, rng.hermitian(7));
    CHECK(std::abs(lindblad_apply(h).trace()) < 1e-12);
  }
}

TEST_CASE("superoperator matrix acts like the generator") {
  testing::Random rng(12);
  for (int two_j : {1, 4, 5}) {
    const SpinSystem s(two_j);
    const auto d = Eigen::Index(s.dim());
    const ComplexMatrix rho = rng.matrix(d);
    const ComplexVector vec = dense_superoperator(s) * Eigen::Map<const ComplexVector>(rho.data(), d * d);
    const ComplexMatrix back = Eigen::Map<const ComplexMatrix>(vec.data(), d, d);
    CHECK(max_abs_diff(back, lindblad_apply(SpinOperator(s, rho)).mat) < 1e-12);
  }
}

TEST_CASE("propagation basics") {
  const SpinSystem s(10);
  const SpinOperator polar = polar_dyad(s);
  CHECK(max_abs_diff(propagate(polar, 0.0).mat, polar.mat) == 0.0);
  CHECK(max_abs_diff(propagate(polar, 1.0).mat, std::exp(-1.0) * polar.mat) < 1e-12);
  CHECK_THROWS_AS(propagate(polar, -0.1), DomainError);
  CHECK(max_abs_diff(propagate(ground(s), 3.0).mat, ground(s).mat) == 0.0);
  CHECK_THROWS_AS(BandPropagator(SpinSystem(0)), DomainError);
}

TEST_CASE("propagation agrees with independent integrators") {
  testing::Random rng(13);
  PropagatorConfig dense;
  dense.method = PropagatorMethod::dense_expm_oracle;
  PropagatorConfig rk4;
  rk4.method = PropagatorMethod::fixed_rk4;
  rk4.max_step = 1e-3;
  for (int two_j : {2, 3, 4}) {
    const SpinSystem s(two_j);
    const SpinOperator rho(s, rng.matrix(Eigen::Index(s.dim())));
    const ComplexMatrix ref = testing::oracle_propagate(s.j(), rho.mat, 0.3, 4000);
    CHECK(max_abs_diff(propagate(rho, 0.3).mat, ref) < 1e-9);
    CHECK(max_abs_diff(propagate(rho, 0.3, dense).mat, ref) < 1e-9);
    CHECK(max_abs_diff(propagate(rho, 0.3, rk4).mat, ref) < 1e-9);
  }
  CHECK_THROWS_AS(propagate(ground(SpinSystem(40)), 0.1, dense), DomainError);
}

TEST_CASE("backward integration undoes forward integration") {
  testing::Random rng(14);
  const SpinSystem s(7);
  const SpinOperator rho(s, rng.density(8));
  const BandPropagator prop(s);
  const SpinOperator there = prop.advance(rho, 0.05);
  CHECK(max_abs_diff(prop.advance(there, -0.05).mat, rho.mat) < 1e-9);
}

TEST_CASE("thread count does not change results") {
  testing::Random rng(15);
  const SpinSystem s(24);
  const SpinOperator rho(s, rng.matrix(25));
  PropagatorConfig one, many;
  one.threads = 1;
  many.threads = 5;
  CHECK(max_abs_diff(propagate(rho, 0.7, one).mat, propagate(rho, 0.7, many).mat) == 0.0);
}

TEST_CASE("sampling") {
  const SpinSystem s(6);
  const BandPropagator prop(s);
  const std::vector<double> taus = {0.0, 0.5, 0.5, 1.25};
  const auto states = prop.sample(polar_dyad(s), taus);
  REQUIRE(states.size() == 4);
  for (std::size_t i = 0; i < taus.size(); ++i)
    CHECK(states[i].mat(0, 6).real() == doctest::Approx(std::exp(-taus[i])).epsilon(1e-11));
  const std::vector<double> bad = {0.5, 0.2};
  CHECK_THROWS_AS(prop.sample(polar_dyad(s), bad), DomainError);
  const std::vector<double> negative = {-0.1};
  CHECK_THROWS_AS(prop.sample(polar_dyad(s), negative), DomainError);
}

TEST_CASE("impossible tolerances report where integration stopped") {
  const SpinSystem s(4);
  PropagatorConfig cfg;
  cfg.rel_tol = 1e-300;
  cfg.abs_tol = 0.0;
  testing::Random rng(16);
  try {
    (void)propagate(SpinOperator(s, rng.density(5)), 1.0, cfg);
    FAIL("expected a convergence error");
  } catch (const ConvergenceError& e) {
    CHECK(e.reached_tau() >= 0.0);
    CHECK(e.reached_tau() < 1.0);
  }
  PropagatorConfig bad;
  bad.rel_tol = 0.0;
  CHECK_THROWS_AS(BandPropagator(s, bad), DomainError);
  bad = {};
  bad.max_step = -1.0;
  CHECK_THROWS_AS(BandPropagator(s, bad), DomainError);
}

TEST_CASE("dispersive phases") {
  for (int two_j : {6, 9}) {
    const SpinSystem s(two_j);
    const PhysicalParams p = detuned(two_j);
    const ComplexVector zero = dispersive_phases(s, p, 0.0);
    CHECK(max_abs_diff(zero, ComplexVector::Ones(zero.size())) == 0.0);
    const ComplexVector later = dispersive_phases(s, p, 3.7);
    CHECK(later(Eigen::Index(s.dim() - 1)) == Complex(1.0));
    const ComplexVector period = dispersive_phases(s, p, 2.0 * kPi / p.eta());
    CHECK(max_abs_diff(period, ComplexVector::Ones(period.size())) < 1e-12);
  }
}

TEST_CASE("dispersive evolution") {
  const SpinSystem s(10);
  const PhysicalParams p = detuned(10);
  const DickeVector psi = coherent_vector(CoherentSpec::make(kPi / 2, 0.0), s);
  CHECK(max_abs_diff(propagate_dispersive(psi, p, 0.0, {}).amp, psi.amp) == 0.0);
  const DickeVector later = propagate_dispersive(psi, p, 12.3, {});
  CHECK(later.norm() == doctest::Approx(1.0).epsilon(1e-14));

  const DickeVector two = propagate_dispersive(psi, p, multi_component_times(p, 2), {});
  CHECK(std::norm(overlap(two_component_superposition(kPi / 2, 0.0, s), two)) ==
        doctest::Approx(1.0).epsilon(1e-12));

  const DickeVector four = propagate_dispersive(psi, p, multi_component_times(p, 4), {});
  std::vector<DickeVector> comps;
  for (const auto& c : multi_component_specs(kPi / 2, 0.0, 10, 4)) comps.push_back(coherent_vector(c, s));
  CHECK(span_capture(four, comps) == doctest::Approx(1.0).epsilon(1e-10));

  // For larger j the four components are orthogonal to ~2^-j, so plain
  // squared overlaps already add up to one.
  const SpinSystem big(80);
  const PhysicalParams pb = detuned(80);
  const DickeVector four_big = propagate_dispersive(coherent_vector(CoherentSpec::make(kPi / 2, 0.3), big), pb,
                                                    multi_component_times(pb, 4), {});
  double total = 0.0;
  for (const auto& c : multi_component_specs(kPi / 2, 0.3, 80, 4))
    total += std::norm(overlap(coherent_vector(c, big), four_big));
  CHECK(std::abs(total - 1.0) < 1e-10);

  std::vector<std::string> warnings;
  const PhysicalParams weak{1.0, 1.0, 5.0, 10};
  (void)propagate_dispersive(psi, weak, 1.0, [&](std::string_view w) { warnings.emplace_back(w); });
  CHECK(warnings.size() == 1);
  warnings.clear();
  (void)propagate_dispersive(psi, p, 1.0, [&](std::string_view w) { warnings.emplace_back(w); });
  CHECK(warnings.empty());
}

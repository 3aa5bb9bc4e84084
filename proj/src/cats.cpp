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

#include "supercat/cats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "supercat/errors.hpp"

namespace supercat {

namespace {

double wrap_angle(double a) {
  a = std::fmod(a, 2.0 * kPi);
  return a < 0.0 ? a + 2.0 * kPi : a;
}

// Smallest |a - b| modulo 2 pi.
double angle_distance(double a, double b) {
  const double d = wrap_angle(a - b);
  return std::min(d, 2.0 * kPi - d);
}

constexpr double kGolden = 0.6180339887498949;

// Maximizes f on [lo, hi] assuming unimodality near the bracket.
template <class F>
double golden_max(F&& f, double lo, double hi, double tol) {
  double x1 = hi - kGolden * (hi - lo), x2 = lo + kGolden * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  while (hi - lo > tol) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kGolden * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kGolden * (hi - lo);
      f1 = f(x1);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

bool CatSpec::is_symmetric(double tol) const {
  if (std::abs(b.theta - (kPi - a.theta)) > tol) return false;
  const bool polar = a.is_north_pole() || a.is_south_pole();
  return polar || angle_distance(a.phi, b.phi) <= tol;
}

DickeVector build_cat(const CatSpec& spec, const SpinSystem& sys) {
  if (spec.c1 == Complex(0.0) && spec.c2 == Complex(0.0)) {
    throw DomainError("build_cat: both coefficients are zero");
  }
  const DickeVector va = coherent_vector(spec.a, sys);
  const DickeVector vb = coherent_vector(spec.b, sys);
  ComplexVector amp = spec.c1 * va.amp + spec.c2 * vb.amp;
  const double expected_sq = std::norm(spec.c1) + std::norm(spec.c2) +
                             2.0 * std::real(std::conj(spec.c1) * spec.c2 * overlap(va, vb));
  // The cross-term estimate loses all precision under exact cancellation, so
  // the assembled vector is checked directly as well.
  if (expected_sq < 1e-28 || amp.norm() < 1e-14) {
    throw DegenerateError("build_cat: the two components cancel (normalization below 1e-14)");
  }
  // The cross-term formula fixes the scale; renormalizing the assembled
  // vector removes rounding left over from it.
  amp /= std::sqrt(expected_sq);
  amp /= amp.norm();
  return DickeVector(sys, std::move(amp));
}

double multi_component_times(const PhysicalParams& params, int m) {
  if (m < 2 || m % 2 != 0) throw DomainError("multi_component_times: m must be an even integer >= 2");
  const double eta = params.eta();
  if (eta == 0.0) throw DomainError("multi_component_times: eta = 0 (no detuning)");
  return kPi / (m * eta);
}

std::vector<CoherentSpec> multi_component_specs(double theta, double phi, int n_atoms, int m) {
  if (m < 1) throw DomainError("multi_component_specs: m must be positive");
  std::vector<CoherentSpec> out;
  out.reserve(std::size_t(m));
  for (int q = 0; q < m; ++q) {
    out.push_back(CoherentSpec::make(theta, phi + kPi * double(2 * q - n_atoms + 1) / m));
  }
  return out;
}

DickeVector two_component_superposition(double theta, double phi, const SpinSystem& sys) {
  const int n = sys.two_j();
  const auto first = coherent_vector(CoherentSpec::make(theta, phi - kPi * (n - 1) / 2.0), sys);
  const auto second = coherent_vector(CoherentSpec::make(theta, phi - kPi * (n - 3) / 2.0), sys);
  const Complex global = std::polar(1.0 / std::sqrt(2.0), -(n - 0.5) * kPi / 2.0);
  return DickeVector(sys, global * (first.amp - Complex(0.0, 1.0) * second.amp));
}

double span_capture(const DickeVector& psi, std::span<const DickeVector> components) {
  const double total = psi.amp.squaredNorm();
  if (total == 0.0) throw DomainError("span_capture: zero vector");
  std::vector<ComplexVector> basis;
  for (const auto& c : components) {
    if (c.sys != psi.sys) throw DimensionError("span_capture: component built for a different j");
    ComplexVector w = c.amp;
    const double scale = w.norm();
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& u : basis) w -= u.dot(w) * u;
    const double rest = w.norm();
    if (rest > 1e-8 * scale) basis.push_back(w / rest);
  }
  double captured = 0.0;
  for (const auto& u : basis) captured += std::norm(u.dot(psi.amp));
  return captured / total;
}

double symmetric_capture(const DickeVector& psi, double theta, double phi) {
  const DickeVector pair[2] = {coherent_vector(CoherentSpec::make(theta, phi), psi.sys),
                               coherent_vector(CoherentSpec::make(kPi - theta, phi), psi.sys)};
  return span_capture(psi, pair);
}

SymmetricDecomposition symmetric_decomposition(const DickeVector& psi) {
  const double j = std::max(psi.sys.j(), 0.5);
  const double res = std::min(kPi / 64.0, 0.25 / std::sqrt(j));
  const int n_theta = int(std::ceil(0.5 * kPi / res));
  const int n_phi = int(std::ceil(2.0 * kPi / res));

  SymmetricDecomposition best;
  best.captured = -1.0;
  for (int it = 0; it <= n_theta; ++it) {
    const double th = 0.5 * kPi * it / n_theta;
    for (int ip = 0; ip < n_phi; ++ip) {
      const double ph = 2.0 * kPi * ip / n_phi;
      const double c = symmetric_capture(psi, th, ph);
      if (c > best.captured) best = {th, ph, c};
      if (th == 0.0) break;  // poles: azimuth is irrelevant
    }
  }

  double step = res;
  for (int sweep = 0; sweep < 60 && step > 1e-12; ++sweep) {
    const double before = best.captured;
    const double lo = std::max(0.0, best.theta - step), hi = std::min(0.5 * kPi, best.theta + step);
    best.theta = golden_max([&](double t) { return symmetric_capture(psi, t, best.phi); }, lo, hi, 1e-13);
    best.phi = wrap_angle(golden_max([&](double p) { return symmetric_capture(psi, best.theta, p); },
                                     best.phi - step, best.phi + step, 1e-13));
    best.captured = symmetric_capture(psi, best.theta, best.phi);
    step *= 0.5;
    if (sweep > 4 && std::abs(best.captured - before) < 1e-15) break;
  }
  if (best.theta == 0.0) best.phi = 0.0;
  return best;
}

PreparationResult prepare_long_lived_cat_steps(double theta, double phi, const PhysicalParams& params,
                                               const SpinSystem& sys, const WarningSink& warn) {
  params.validate();
  if (params.n_atoms != sys.two_j()) {
    throw DomainError("prepare_long_lived_cat: n_atoms = " + std::to_string(params.n_atoms) +
                      " does not match 2j = " + std::to_string(sys.two_j()));
  }
  const CoherentSpec start = CoherentSpec::make(theta, phi);
  const DickeVector up = DickeVector::basis(sys, 0);

  // Step 1: the pulse maps |j,j> onto |theta, axis + pi>.
  DickeVector pulsed = apply(rotation_matrix(sys, start.phi + kPi, start.theta), up);

  // Step 2
  DickeVector split = propagate_dispersive(pulsed, params, multi_component_times(params, 2), warn);

  // Step 3: rotate by pi/2 about the axis perpendicular to the meridian plane
  // at phi'. With this axis parameter the first component heads north.
  const double phi1 = wrap_angle(start.phi - kPi * (sys.two_j() - 1) / 2.0);
  DickeVector final_state = apply(rotation_matrix(sys, phi1, 0.5 * kPi), split);

  const double tilt = std::abs(0.5 * kPi - start.theta);
  const double az = start.theta <= 0.5 * kPi ? phi1 + kPi : phi1;
  PreparationResult r{std::move(pulsed), std::move(split), std::move(final_state), phi1, phi1,
                      CoherentSpec::make(tilt, az), CoherentSpec::make(kPi - tilt, az)};
  return r;
}

DickeVector prepare_long_lived_cat(double theta, double phi, const PhysicalParams& params, const SpinSystem& sys,
                                   const WarningSink& warn) {
  return prepare_long_lived_cat_steps(theta, phi, params, sys, warn).final_state;
}

}  // namespace supercat

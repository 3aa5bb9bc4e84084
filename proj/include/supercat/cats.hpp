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

#pragma once

// Two-component cat states and the dispersive preparation of the
// long-lived, equator-symmetric cats.

#include <span>
#include <vector>

#include "supercat/dynamics.hpp"
#include "supercat/spin_algebra.hpp"

namespace supercat {

struct CatSpec {
  CoherentSpec a;
  CoherentSpec b;
  Complex c1{1.0};
  Complex c2{0.0};

  // theta_b = pi - theta_a and phi_a = phi_b, i.e. gamma_a conj(gamma_b) = 1
  // (poles included).
  bool is_symmetric(double tol = 1e-12) const;
};

// c1|a> + c2|b>, normalized including the <a|b> cross term.
DickeVector build_cat(const CatSpec& spec, const SpinSystem& sys);

// pi / (m eta); m must be even and >= 2.
double multi_component_times(const PhysicalParams& params, int m);

// |theta, phi + pi (2q - N + 1) / m>, q = 0..m-1: the coherent components of
// a coherent state after dispersive evolution for pi / (m eta).
std::vector<CoherentSpec> multi_component_specs(double theta, double phi, int n_atoms, int m);

// The two-component state reached at t = pi / (2 eta), including the global
// phase e^{-i (N - 1/2) pi / 2}.
DickeVector two_component_superposition(double theta, double phi, const SpinSystem& sys);

// Fraction of |psi|^2 inside span{components}.
double span_capture(const DickeVector& psi, std::span<const DickeVector> components);

struct SymmetricDecomposition {
  double theta = 0.0;  // theta' in [0, pi/2]; the partner sits at pi - theta'
  double phi = 0.0;    // common azimuth
  double captured = 0.0;
};

// Best symmetric pair {(theta', phi), (pi - theta', phi)} for psi, found by a
// grid scan followed by coordinate refinement.
SymmetricDecomposition symmetric_decomposition(const DickeVector& psi);
double symmetric_capture(const DickeVector& psi, double theta, double phi);

struct PreparationResult {
  DickeVector after_pulse;       // step 1: coherent state (theta, phi)
  DickeVector after_dispersive;  // step 2: two components at phi' and phi' + pi
  DickeVector final_state;       // step 3: symmetric cat
  double component_phi = 0.0;    // phi' = phi - pi (N - 1) / 2
  double pulse_axis_phi = 0.0;   // axis parameter of the closing pi/2 rotation
  CoherentSpec predicted_first;  // image of |theta, phi'>
  CoherentSpec predicted_second; // image of |theta, phi' + pi>
};

// Laser pulse from |j,j>, free evolution in the detuned cavity for
// pi / (2 eta), then a pi/2 pulse about the axis perpendicular to the plane of
// the two components. Damping is neglected throughout.
PreparationResult prepare_long_lived_cat_steps(double theta, double phi, const PhysicalParams& params,
                                               const SpinSystem& sys,
                                               const WarningSink& warn = default_warning_sink);

DickeVector prepare_long_lived_cat(double theta, double phi, const PhysicalParams& params, const SpinSystem& sys,
                                   const WarningSink& warn = default_warning_sink);

}  // namespace supercat

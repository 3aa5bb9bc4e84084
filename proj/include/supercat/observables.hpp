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

// Measured quantities: coherence norms, Bloch vector, the numerical
// eigenstate angle of J-, and decay-rate extraction.
//
// N2 is basis dependent; it is always taken in the Dicke basis.

#include <span>
#include <utility>
#include <vector>

#include "supercat/dynamics.hpp"
#include "supercat/spin_algebra.hpp"

namespace supercat {

enum class NormKind { hs, abs };

// N1 = tr(rho rho^dagger)
double norm_hs(const SpinOperator& rho);
// N2 = sum over m1, m2 of |<j,m1| rho |j,m2>|
double norm_abs(const SpinOperator& rho);
double coherence_norm(const SpinOperator& rho, NormKind kind);

struct SlopeEstimate {
  double slope = 0.0;
  double error = 0.0;  // |last two Richardson levels|
  double step = 0.0;   // base finite-difference step
};

// dN/dtau at tau = 0 from centered differences at h, h/2, h/4 with
// h = 1e-3 / (j + 1), Richardson-extrapolated to O(h^6).
SlopeEstimate initial_slope(const SpinOperator& rho0, NormKind kind, const PropagatorConfig& cfg = {});

enum class DecayModel { linear, quadratic };

struct DecaySample {
  double tau = 0.0;
  double value = 0.0;
};

struct DecayFit {
  double rate = 0.0;       // ln N ~ intercept - rate tau - quadratic tau^2
  double quadratic = 0.0;  // zero for the linear model
  double intercept = 0.0;
  std::pair<double, double> window{0.0, 0.0};
  double residual = 0.0;  // max |model - ln N| over the samples
};

DecayFit fit_decay(std::span<const DecaySample> samples, DecayModel model);

// n points from 0 to tau_max inclusive.
std::vector<double> uniform_grid(double tau_max, std::size_t n);

// Norm of e^{Lambda tau} rho0 at each time in `taus`.
std::vector<DecaySample> norm_series(const SpinOperator& rho0, NormKind kind, std::span<const double> taus,
                                     const PropagatorConfig& cfg = {});

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

// Re tr(rho J) / tr(rho). Throws DomainError for a traceless operator.
BlochVector bloch_vector(const SpinOperator& rho);

// tr(rho rho^dagger) / |tr rho|^2
double purity(const SpinOperator& rho);

// cos^2 alpha = |<J->|^2 / (<psi|psi> <J+J->) from exact matrix elements.
// 0 at the north pole; 1 at the south pole, where J- annihilates the state.
double eigen_angle(const CoherentSpec& spec, const SpinSystem& sys);

}  // namespace supercat

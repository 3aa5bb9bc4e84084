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

// Closed-form predictions for superradiant decoherence of coherent-state
// dyads. These serve as independent references for the propagator; none of
// them touches the numerical machinery.
//
// The N2 laws below hold for real gamma (phi1 = phi2 = 0) and short times
// 0 <= j tau << 1.

#include <utility>

namespace supercat {

// sin^2(theta) / (sin^2(theta) + (2/j) cos^4(theta/2)). At theta = pi both
// terms vanish and 1 is returned by convention.
double cos2_alpha(double theta, double j);

struct SlopePrediction {
  double slow = 0.0;  // classical-time-scale part
  double fast = 0.0;  // part proportional to j
  double total = 0.0;
};

// Initial dN1/dtau of e^{Lambda tau} |gamma1><gamma2|.
SlopePrediction n1_initial_slope(double theta1, double phi1, double theta2, double phi2, double j);

// Rate of the fast N2 decay of a generic pair:
// 2j (g1 - g2)^2 (1 - g1 g2)^2 / ((1 + g1^2)(1 + g2^2))^2
double n2_rate_general(double gamma1, double gamma2, double j);
double n2_ratio_general(double gamma1, double gamma2, double j, double tau);

struct SymmetricCoefficients {
  double linear = 0.0;
  double quadratic = 0.0;
};

// Pair (gamma1, 1/gamma1). Throws DomainError for gamma1 = 0.
SymmetricCoefficients n2_symmetric_coefficients(double gamma1);
double n2_ratio_symmetric(double gamma1, double tau);

// Single coherent state: gamma^4 ((gamma^2 - 1)/(gamma^2 + 1))^2.
double n2_rate_diagonal(double gamma);
double n2_ratio_diagonal(double gamma, double tau);

// (N1, N2) = (e^{-2 tau}, e^{-tau}) for the polar dyad |j,j><j,-j|.
std::pair<double, double> polar_cat_norms(double tau);

// Overdamped-pendulum solution of d theta/d tau = sin theta.
double classical_theta(double theta0, double tau);

double theta_from_gamma(double gamma);
double gamma_from_theta(double theta);

}  // namespace supercat

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

#include "supercat/analytics.hpp"

#include <cmath>

#include "supercat/errors.hpp"

namespace supercat {

namespace {
constexpr double kPiLocal = 3.14159265358979323846;
}

double cos2_alpha(double theta, double j) {
  if (!(j > 0.0)) throw DomainError("cos2_alpha: j must be positive");
  const double s = std::sin(theta);
  const double c = std::cos(0.5 * theta);
  const double num = s * s;
  const double den = num + (2.0 / j) * c * c * c * c;
  if (den == 0.0) return 1.0;
  return num / den;
}

SlopePrediction n1_initial_slope(double theta1, double phi1, double theta2, double phi2, double j) {
  if (!(j > 0.0)) throw DomainError("n1_initial_slope: j must be positive");
  const double a = 1.0 + std::cos(theta1), b = 1.0 + std::cos(theta2);
  const double s1 = std::sin(theta1), s2 = std::sin(theta2);
  SlopePrediction p;
  p.slow = -0.5 * (a * a + b * b);
  p.fast = -j * (s1 * s1 + s2 * s2 - 2.0 * std::cos(phi2 - phi1) * s1 * s2);
  p.total = p.slow + p.fast;
  return p;
}

double n2_rate_general(double gamma1, double gamma2, double j) {
  const double diff = gamma1 - gamma2;
  const double anti = 1.0 - gamma1 * gamma2;
  const double den = (1.0 + gamma1 * gamma1) * (1.0 + gamma2 * gamma2);
  return 2.0 * j * diff * diff * anti * anti / (den * den);
}

double n2_ratio_general(double gamma1, double gamma2, double j, double tau) {
  return std::exp(-n2_rate_general(gamma1, gamma2, j) * tau);
}

SymmetricCoefficients n2_symmetric_coefficients(double gamma1) {
  if (gamma1 == 0.0) throw DomainError("n2_ratio_symmetric: gamma1 = 0 has no partner 1/gamma1");
  const double g2 = gamma1 * gamma1;
  const double g4 = g2 * g2, g6 = g4 * g2, g8 = g4 * g4;
  const double r = (g2 - 1.0) / (g2 + 1.0);
  const double p = g2 + 1.0;
  return {r * r, (3.0 * g8 - 3.0 * g6 + 4.0 * g4 - 3.0 * g2 + 3.0) / (2.0 * p * p * p * p)};
}

double n2_ratio_symmetric(double gamma1, double tau) {
  const auto c = n2_symmetric_coefficients(gamma1);
  return std::exp(-c.linear * tau - c.quadratic * tau * tau);
}

double n2_rate_diagonal(double gamma) {
  const double g2 = gamma * gamma;
  const double r = (g2 - 1.0) / (g2 + 1.0);
  return g2 * g2 * r * r;
}

double n2_ratio_diagonal(double gamma, double tau) { return std::exp(-n2_rate_diagonal(gamma) * tau); }

std::pair<double, double> polar_cat_norms(double tau) {
  if (!(tau >= 0.0)) throw DomainError("polar_cat_norms: tau must be non-negative");
  return {std::exp(-2.0 * tau), std::exp(-tau)};
}

double classical_theta(double theta0, double tau) {
  if (!(theta0 >= 0.0 && theta0 <= kPiLocal)) throw DomainError("classical_theta: theta0 must lie in [0, pi]");
  if (theta0 == 0.0 || theta0 == kPiLocal) return theta0;
  return 2.0 * std::atan(std::tan(0.5 * theta0) * std::exp(tau));
}

double theta_from_gamma(double gamma) {
  if (gamma < 0.0) throw DomainError("theta_from_gamma: real gamma must be non-negative");
  return 2.0 * std::atan(gamma);
}

double gamma_from_theta(double theta) { return std::tan(0.5 * theta); }

}  // namespace supercat

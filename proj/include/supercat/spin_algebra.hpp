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

// Angular-momentum algebra of a single spin-j irrep in the Dicke basis.
//
// Basis convention used throughout the library: the amplitude of |j,m> lives
// at array index k = j - m, so k = 0 is "all up" (m = j) and k = 2j is the
// ground state (m = -j). J- therefore maps index k to k + 1.

#include <complex>
#include <cstddef>
#include <optional>

#include <Eigen/Dense>

namespace supercat {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kPi = 3.14159265358979323846;

// Spin quantum number j, stored as 2j so half-integer j is exact.
class SpinSystem {
 public:
  explicit SpinSystem(int two_j);
  static SpinSystem from_atoms(int n_atoms) { return SpinSystem(n_atoms); }

  int two_j() const noexcept { return two_j_; }
  double j() const noexcept { return 0.5 * two_j_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(two_j_) + 1; }

  // m = j - k
  double m_at(std::size_t k) const noexcept { return j() - static_cast<double>(k); }
  // Throws DomainError unless m is one of -j, ..., j.
  std::size_t index_of(double m) const;

  friend bool operator==(const SpinSystem&, const SpinSystem&) = default;

 private:
  int two_j_;
};

// Orientation (theta, phi) of a spin coherent state; gamma = tan(theta/2) e^{i phi}.
struct CoherentSpec {
  double theta = 0.0;
  double phi = 0.0;

  // Canonical form: theta in [0, pi], phi in [0, 2pi), phi = 0 at the poles.
  static CoherentSpec make(double theta, double phi = 0.0);
  // gamma = infinity (south pole) is not representable here; use make(pi).
  static CoherentSpec from_gamma(Complex gamma);

  bool is_north_pole() const noexcept { return theta == 0.0; }
  bool is_south_pole() const noexcept { return theta == kPi; }
  // Empty at the south pole.
  std::optional<Complex> gamma() const;
};

struct DickeVector {
  DickeVector(SpinSystem s, ComplexVector a);
  static DickeVector basis(SpinSystem s, std::size_t k);

  SpinSystem sys;
  ComplexVector amp;

  double norm() const { return amp.norm(); }
};

// Operator on the (2j+1)-dimensional space; element (k1, k2) = <j,m1| rho |j,m2>.
// No Hermiticity is assumed: dyads |a><b| are first-class values.
struct SpinOperator {
  SpinOperator(SpinSystem s, ComplexMatrix m);
  static SpinOperator zero(SpinSystem s);
  static SpinOperator identity(SpinSystem s);

  SpinSystem sys;
  ComplexMatrix mat;

  Complex trace() const { return mat.trace(); }
  SpinOperator adjoint() const { return SpinOperator(sys, mat.adjoint()); }
};

// sqrt((j+m)(j-m+1)) = <j,m-1|J-|j,m>.
double ladder_coeff(const SpinSystem& sys, double m);
// Same coefficient addressed by basis index: <k+1|J-|k> = sqrt((2j-k)(k+1)).
double lowering_coeff_at(const SpinSystem& sys, std::size_t k);

SpinOperator lowering_matrix(const SpinSystem& sys);
SpinOperator raising_matrix(const SpinSystem& sys);
SpinOperator jz_matrix(const SpinSystem& sys);
SpinOperator jx_matrix(const SpinSystem& sys);
SpinOperator jy_matrix(const SpinSystem& sys);

DickeVector coherent_vector(const CoherentSpec& spec, const SpinSystem& sys);

// exp(-i angle (Jx sin(axis_phi) - Jy cos(axis_phi))). Applied to |j,j> it
// yields the coherent state (angle, axis_phi + pi) exactly, with no extra
// phase; applied to |j,-j> it yields (pi - angle, axis_phi) times e^{-2ij axis_phi}.
SpinOperator rotation_matrix(const SpinSystem& sys, double axis_phi, double angle);

Complex overlap(const DickeVector& a, const DickeVector& b);
SpinOperator dyad(const DickeVector& a, const DickeVector& b);
DickeVector apply(const SpinOperator& op, const DickeVector& v);

}  // namespace supercat

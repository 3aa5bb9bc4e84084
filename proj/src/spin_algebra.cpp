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

#include "supercat/spin_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "supercat/errors.hpp"

namespace supercat {

namespace {

constexpr double kTwoPi = 2.0 * kPi;

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

void require_same_system(const SpinSystem& a, const SpinSystem& b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": operands have 2j = " + std::to_string(a.two_j()) +
                         " and 2j = " + std::to_string(b.two_j()));
  }
}

}  // namespace

SpinSystem::SpinSystem(int two_j) : two_j_(two_j) {
  if (two_j < 0) throw DomainError("SpinSystem: 2j must be non-negative, got " + std::to_string(two_j));
}

std::size_t SpinSystem::index_of(double m) const {
  const double k = j() - m;
  const double rounded = std::round(k);
  if (std::abs(k - rounded) > 1e-9 || rounded < 0.0 || rounded > two_j_) {
    throw DomainError("m = " + std::to_string(m) + " is not a magnetic quantum number of j = " +
                      std::to_string(j()));
  }
  return static_cast<std::size_t>(rounded);
}

CoherentSpec CoherentSpec::make(double theta, double phi) {
  if (!std::isfinite(theta) || !std::isfinite(phi)) throw DomainError("CoherentSpec: non-finite angle");
  if (theta < -1e-12 || theta > kPi + 1e-12) {
    throw DomainError("CoherentSpec: theta must lie in [0, pi], got " + std::to_string(theta));
  }
  CoherentSpec s;
  s.theta = std::clamp(theta, 0.0, kPi);
  if (s.theta == 0.0 || s.theta == kPi) {
    s.phi = 0.0;
    return s;
  }
  s.phi = std::fmod(phi, kTwoPi);
  if (s.phi < 0.0) s.phi += kTwoPi;
  if (s.phi >= kTwoPi) s.phi = 0.0;
  return s;
}

CoherentSpec CoherentSpec::from_gamma(Complex gamma) {
  const double r = std::abs(gamma);
  if (!std::isfinite(r)) throw DomainError("CoherentSpec::from_gamma: gamma must be finite");
  return make(2.0 * std::atan(r), r == 0.0 ? 0.0 : std::arg(gamma));
}

std::optional<Complex> CoherentSpec::gamma() const {
  if (is_south_pole()) return std::nullopt;
  return std::polar(std::tan(0.5 * theta), phi);
}

DickeVector::DickeVector(SpinSystem s, ComplexVector a) : sys(s), amp(std::move(a)) {
  if (static_cast<std::size_t>(amp.size()) != sys.dim()) {
    throw DimensionError("DickeVector: amplitude length " + std::to_string(amp.size()) +
                         " does not match dim " + std::to_string(sys.dim()));
  }
}

DickeVector DickeVector::basis(SpinSystem s, std::size_t k) {
  if (k >= s.dim()) throw DomainError("DickeVector::basis: index out of range");
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(s.dim()));
  v(static_cast<Eigen::Index>(k)) = 1.0;
  return DickeVector(s, std::move(v));
}

SpinOperator::SpinOperator(SpinSystem s, ComplexMatrix m) : sys(s), mat(std::move(m)) {
  const auto d = static_cast<Eigen::Index>(sys.dim());
  if (mat.rows() != d || mat.cols() != d) {
    throw DimensionError("SpinOperator: matrix shape does not match dim " + std::to_string(d));
  }
}

SpinOperator SpinOperator::zero(SpinSystem s) {
  const auto d = static_cast<Eigen::Index>(s.dim());
  return SpinOperator(s, ComplexMatrix::Zero(d, d));
}

SpinOperator SpinOperator::identity(SpinSystem s) {
  const auto d = static_cast<Eigen::Index>(s.dim());
  return SpinOperator(s, ComplexMatrix::Identity(d, d));
}

double ladder_coeff(const SpinSystem& sys, double m) {
  return lowering_coeff_at(sys, sys.index_of(m));
}

double lowering_coeff_at(const SpinSystem& sys, std::size_t k) {
  if (k >= sys.dim()) throw DomainError("lowering_coeff_at: index out of range");
  const double two_j = sys.two_j();
  const double kk = static_cast<double>(k);
  return std::sqrt((two_j - kk) * (kk + 1.0));
}

SpinOperator lowering_matrix(const SpinSystem& sys) {
  SpinOperator op = SpinOperator::zero(sys);
  for (std::size_t k = 0; k + 1 < sys.dim(); ++k) {
    op.mat(static_cast<Eigen::Index>(k + 1), static_cast<Eigen::Index>(k)) = lowering_coeff_at(sys, k);
  }
  return op;
}

SpinOperator raising_matrix(const SpinSystem& sys) { return lowering_matrix(sys).adjoint(); }

SpinOperator jz_matrix(const SpinSystem& sys) {
  SpinOperator op = SpinOperator::zero(sys);
  for (std::size_t k = 0; k < sys.dim(); ++k) {
    op.mat(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = sys.m_at(k);
  }
  return op;
}

SpinOperator jx_matrix(const SpinSystem& sys) {
  const ComplexMatrix lower = lowering_matrix(sys).mat;
  return SpinOperator(sys, 0.5 * (lower + lower.adjoint()));
}

SpinOperator jy_matrix(const SpinSystem& sys) {
  const ComplexMatrix lower = lowering_matrix(sys).mat;
  return SpinOperator(sys, Complex(0.0, -0.5) * (lower.adjoint() - lower));
}

DickeVector coherent_vector(const CoherentSpec& spec, const SpinSystem& sys) {
  const int n = sys.two_j();
  if (spec.is_north_pole()) return DickeVector::basis(sys, 0);
  if (spec.is_south_pole()) return DickeVector::basis(sys, sys.dim() - 1);

  // Log domain: amplitudes stay finite for large j and theta close to pi.
  const double log_cos = std::log(std::cos(0.5 * spec.theta));
  const double log_sin = std::log(std::sin(0.5 * spec.theta));
  ComplexVector amp(static_cast<Eigen::Index>(sys.dim()));
  for (int k = 0; k <= n; ++k) {
    const double log_mod = 0.5 * log_binomial(n, k) + (n - k) * log_cos + k * log_sin;
    amp(k) = std::polar(std::exp(log_mod), k * spec.phi);
  }
  amp /= amp.norm();
  return DickeVector(sys, std::move(amp));
}

SpinOperator rotation_matrix(const SpinSystem& sys, double axis_phi, double angle) {
  const auto d = static_cast<Eigen::Index>(sys.dim());
  if (sys.two_j() == 0) return SpinOperator::identity(sys);

  // Jx is real symmetric tridiagonal with the exactly known spectrum -j..j.
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(d);
  Eigen::VectorXd sub(d - 1);
  for (Eigen::Index k = 0; k + 1 < d; ++k) sub(k) = 0.5 * lowering_coeff_at(sys, static_cast<std::size_t>(k));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
  eig.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (eig.info() != Eigen::Success) throw Error("rotation_matrix: eigensolver failed");
  const Eigen::MatrixXd& w = eig.eigenvectors();

  ComplexVector phases(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double mu = -sys.j() + static_cast<double>(i);  // eigenvalues come back ascending
    phases(i) = std::polar(1.0, -angle * mu);
  }
  ComplexMatrix rot_x = w.cast<Complex>() * phases.asDiagonal() * w.transpose().cast<Complex>();

  // Conjugate by exp(-i psi Jz), psi = axis_phi - pi/2, turning Jx into
  // Jx sin(axis_phi) - Jy cos(axis_phi).
  const double psi = axis_phi - 0.5 * kPi;
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index c = 0; c < d; ++c) {
      rot_x(r, c) *= std::polar(1.0, -psi * (sys.m_at(static_cast<std::size_t>(r)) -
                                             sys.m_at(static_cast<std::size_t>(c))));
    }
  }
  return SpinOperator(sys, std::move(rot_x));
}

Complex overlap(const DickeVector& a, const DickeVector& b) {
  require_same_system(a.sys, b.sys, "overlap");
  return a.amp.dot(b.amp);  // Eigen's dot conjugates the left operand
}

SpinOperator dyad(const DickeVector& a, const DickeVector& b) {
  require_same_system(a.sys, b.sys, "dyad");
  return SpinOperator(a.sys, a.amp * b.amp.adjoint());
}

DickeVector apply(const SpinOperator& op, const DickeVector& v) {
  require_same_system(op.sys, v.sys, "apply");
  return DickeVector(v.sys, op.mat * v.amp);
}

}  // namespace supercat

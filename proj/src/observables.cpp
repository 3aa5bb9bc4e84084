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

#include "supercat/observables.hpp"

#include <algorithm>
#include <cmath>

#include "supercat/errors.hpp"

namespace supercat {

double norm_hs(const SpinOperator& rho) { return rho.mat.squaredNorm(); }

double norm_abs(const SpinOperator& rho) { return rho.mat.cwiseAbs().sum(); }

double coherence_norm(const SpinOperator& rho, NormKind kind) {
  return kind == NormKind::hs ? norm_hs(rho) : norm_abs(rho);
}

SlopeEstimate initial_slope(const SpinOperator& rho0, NormKind kind, const PropagatorConfig& cfg) {
  const BandPropagator prop(rho0.sys, cfg);
  const double h = 1e-3 / (rho0.sys.j() + 1.0);
  auto centered = [&](double step) {
    const double ahead = coherence_norm(prop.advance(rho0, step), kind);
    const double behind = coherence_norm(prop.advance(rho0, -step), kind);
    return (ahead - behind) / (2.0 * step);
  };
  const double d1 = centered(h), d2 = centered(0.5 * h), d3 = centered(0.25 * h);
  const double r1 = (4.0 * d2 - d1) / 3.0;
  const double r2 = (4.0 * d3 - d2) / 3.0;
  const double best = (16.0 * r2 - r1) / 15.0;
  return {best, std::abs(best - r2), h};
}

DecayFit fit_decay(std::span<const DecaySample> samples, DecayModel model) {
  if (samples.size() < 3) throw DomainError("fit_decay: need at least 3 samples");
  const Eigen::Index n = Eigen::Index(samples.size());
  const Eigen::Index cols = model == DecayModel::quadratic ? 3 : 2;
  Eigen::MatrixXd design(n, cols);
  Eigen::VectorXd logs(n);
  double lo = samples.front().tau, hi = samples.front().tau;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& s = samples[std::size_t(i)];
    if (!(s.value > 0.0)) throw DomainError("fit_decay: samples must be positive");
    design(i, 0) = 1.0;
    design(i, 1) = -s.tau;
    if (cols == 3) design(i, 2) = -s.tau * s.tau;
    logs(i) = std::log(s.value);
    lo = std::min(lo, s.tau);
    hi = std::max(hi, s.tau);
  }
  // Scale columns so the rank test is not fooled by tiny windows.
  Eigen::VectorXd scale = design.colwise().norm().transpose();
  for (Eigen::Index c = 0; c < cols; ++c) {
    if (scale(c) == 0.0) throw FitError("fit_decay: rank-deficient design (all tau equal to 0)");
    design.col(c) /= scale(c);
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  qr.setThreshold(1e-12);
  if (qr.rank() < cols) throw FitError("fit_decay: rank-deficient design (too few distinct times)");
  Eigen::VectorXd coef = qr.solve(logs);
  Eigen::VectorXd unscaled = coef.cwiseQuotient(scale);

  DecayFit fit;
  fit.intercept = unscaled(0);
  fit.rate = unscaled(1);
  fit.quadratic = cols == 3 ? unscaled(2) : 0.0;
  fit.window = {lo, hi};
  for (const auto& s : samples) {
    const double model_value = fit.intercept - fit.rate * s.tau - fit.quadratic * s.tau * s.tau;
    fit.residual = std::max(fit.residual, std::abs(model_value - std::log(s.value)));
  }
  return fit;
}

std::vector<double> uniform_grid(double tau_max, std::size_t n) {
  if (n < 2) throw DomainError("uniform_grid: need at least 2 points");
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = tau_max * double(i) / double(n - 1);
  return out;
}

std::vector<DecaySample> norm_series(const SpinOperator& rho0, NormKind kind, std::span<const double> taus,
                                     const PropagatorConfig& cfg) {
  const BandPropagator prop(rho0.sys, cfg);
  const auto states = prop.sample(rho0, taus);
  std::vector<DecaySample> out;
  out.reserve(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) out.push_back({taus[i], coherence_norm(states[i], kind)});
  return out;
}

BlochVector bloch_vector(const SpinOperator& rho) {
  const Complex tr = rho.trace();
  if (std::abs(tr) == 0.0) throw DomainError("bloch_vector: operator has zero trace");
  const SpinSystem& sys = rho.sys;
  // <J-> = sum_k rho(k, k+1) c_k, <Jz> = sum_k m_k rho(k, k)
  Complex lower = 0.0, jz = 0.0;
  for (std::size_t k = 0; k < sys.dim(); ++k) {
    const auto kk = Eigen::Index(k);
    jz += sys.m_at(k) * rho.mat(kk, kk);
    if (k + 1 < sys.dim()) lower += lowering_coeff_at(sys, k) * rho.mat(kk, kk + 1);
  }
  Complex raise = 0.0;
  for (std::size_t k = 0; k + 1 < sys.dim(); ++k) {
    const auto kk = Eigen::Index(k);
    raise += lowering_coeff_at(sys, k) * rho.mat(kk + 1, kk);
  }
  // Jx = (J+ + J-)/2, Jy = (J+ - J-)/2i
  const Complex jx = 0.5 * (raise + lower);
  const Complex jy = Complex(0.0, -0.5) * (raise - lower);
  return {std::real(jx / tr), std::real(jy / tr), std::real(jz / tr)};
}

double purity(const SpinOperator& rho) {
  const double tr2 = std::norm(rho.trace());
  if (tr2 == 0.0) throw DomainError("purity: operator has zero trace");
  return norm_hs(rho) / tr2;
}

double eigen_angle(const CoherentSpec& spec, const SpinSystem& sys) {
  const DickeVector psi = coherent_vector(spec, sys);
  const ComplexVector lowered = lowering_matrix(sys).mat * psi.amp;
  const double pm = lowered.squaredNorm();  // <J+J->
  if (pm == 0.0) return 1.0;
  const Complex expect = psi.amp.dot(lowered);
  return std::norm(expect) / (psi.amp.squaredNorm() * pm);
}

}  // namespace supercat

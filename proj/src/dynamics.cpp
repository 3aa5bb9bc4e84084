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

#include "supercat/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <iostream>
#include <sstream>
#include <thread>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "supercat/errors.hpp"

namespace supercat {

namespace {

void require_dissipative(const SpinSystem& sys) {
  if (sys.two_j() == 0) throw DomainError("superradiance generator is undefined for j = 0");
}

// Dormand-Prince 5(4) tableau.
constexpr std::array<double, 7> kC = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
// Fifth-order weights minus embedded fourth-order weights.
constexpr std::array<double, 7> kE = {71.0 / 57600,     0.0,          -71.0 / 16695, 71.0 / 1920,
                                      -17253.0 / 339200, 22.0 / 525, -1.0 / 40};

// f(y)_i = -rate_i y_i + feed_i y_{i-1}
inline void band_rhs(const std::vector<double>& rate, const std::vector<double>& feed, const Complex* y,
                     Complex* dy, std::size_t n) {
  dy[0] = -rate[0] * y[0];
  for (std::size_t i = 1; i < n; ++i) dy[i] = -rate[i] * y[i] + feed[i] * y[i - 1];
}

}  // namespace

void PhysicalParams::validate() const {
  if (!(std::isfinite(g) && std::isfinite(kappa) && std::isfinite(delta))) {
    throw DomainError("PhysicalParams: non-finite parameter");
  }
  if (g <= 0.0) throw DomainError("PhysicalParams: g must be positive");
  if (kappa <= 0.0) throw DomainError("PhysicalParams: kappa must be positive");
  if (n_atoms <= 0) throw DomainError("PhysicalParams: n_atoms must be positive");
}

double PhysicalParams::eta() const { return g * g * delta / (kappa * kappa + delta * delta); }

double PhysicalParams::t_class() const { return kappa / (n_atoms * g * g); }

bool PhysicalParams::superradiance_valid() const { return kappa > 10.0 * g * std::sqrt(double(n_atoms)); }

bool PhysicalParams::dispersive_valid() const { return std::abs(delta) > 10.0 * kappa; }

std::vector<std::string> PhysicalParams::regime_warnings() const {
  std::vector<std::string> out;
  if (!superradiance_valid()) {
    std::ostringstream os;
    os << "kappa = " << kappa << " is not >> g sqrt(N) = " << g * std::sqrt(double(n_atoms))
       << "; the overdamped superradiance model may not apply";
    out.push_back(os.str());
  }
  if (!dispersive_valid()) {
    std::ostringstream os;
    os << "|delta| = " << std::abs(delta) << " is not >> kappa = " << kappa
       << "; cavity damping during the dispersive step is not negligible";
    out.push_back(os.str());
  }
  return out;
}

double PropagatorConfig::step_cap(const SpinSystem& sys) const {
  return max_step.value_or(0.1 / (sys.j() + 1.0));
}

void PropagatorConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol >= 0.0)) throw DomainError("PropagatorConfig: tolerances must be positive");
  if (max_step && !(*max_step > 0.0)) throw DomainError("PropagatorConfig: max_step must be positive");
}

SpinOperator lindblad_apply(const SpinOperator& rho) {
  const SpinSystem& sys = rho.sys;
  require_dissipative(sys);
  const auto d = static_cast<Eigen::Index>(sys.dim());
  const double inv_two_j = 1.0 / sys.two_j();
  std::vector<double> c2(sys.dim()), c(sys.dim());
  for (std::size_t k = 0; k < sys.dim(); ++k) {
    c[k] = lowering_coeff_at(sys, k);
    c2[k] = c[k] * c[k];
  }
  SpinOperator out = SpinOperator::zero(sys);
  for (Eigen::Index k2 = 0; k2 < d; ++k2) {
    for (Eigen::Index k1 = 0; k1 < d; ++k1) {
      Complex v = -(c2[k1] + c2[k2]) * rho.mat(k1, k2);
      if (k1 > 0 && k2 > 0) v += 2.0 * c[k1 - 1] * c[k2 - 1] * rho.mat(k1 - 1, k2 - 1);
      out.mat(k1, k2) = inv_two_j * v;
    }
  }
  return out;
}

ComplexMatrix dense_superoperator(const SpinSystem& sys) {
  require_dissipative(sys);
  const ComplexMatrix lower = lowering_matrix(sys).mat;
  const ComplexMatrix raise = lower.adjoint();
  const ComplexMatrix pm = raise * lower;
  const auto d = static_cast<Eigen::Index>(sys.dim());
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  // vec(A X B) = (B^T kron A) vec(X) for column-major vec.
  ComplexMatrix sup = 2.0 * Eigen::kroneckerProduct(raise.transpose(), lower).eval();
  sup -= Eigen::kroneckerProduct(id, pm).eval();
  sup -= Eigen::kroneckerProduct(pm.transpose(), id).eval();
  return sup / double(sys.two_j());
}

BandPropagator::BandPropagator(SpinSystem sys, PropagatorConfig cfg) : sys_(sys), cfg_(cfg) {
  require_dissipative(sys_);
  cfg_.validate();
  const std::size_t dim = sys_.dim();
  std::vector<double> c(dim);
  for (std::size_t k = 0; k < dim; ++k) c[k] = lowering_coeff_at(sys_, k);
  const double inv_two_j = 1.0 / sys_.two_j();

  bands_.reserve(2 * dim - 1);
  for (std::ptrdiff_t off = -std::ptrdiff_t(dim - 1); off < std::ptrdiff_t(dim); ++off) {
    Band b;
    b.row0 = off > 0 ? std::size_t(off) : 0;
    b.col0 = off < 0 ? std::size_t(-off) : 0;
    const std::size_t n = dim - std::size_t(off < 0 ? -off : off);
    b.rate.resize(n);
    b.feed.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t k1 = b.row0 + i, k2 = b.col0 + i;
      b.rate[i] = (c[k1] * c[k1] + c[k2] * c[k2]) * inv_two_j;
      if (i > 0) b.feed[i] = 2.0 * c[k1 - 1] * c[k2 - 1] * inv_two_j;
    }
    bands_.push_back(std::move(b));
  }
}

void BandPropagator::advance_band(const Band& band, const ComplexMatrix& in, ComplexMatrix& out,
                                  double dtau) const {
  const std::size_t full = band.rate.size();
  // Leading zeros stay exactly zero: feed only flows toward larger indices.
  std::size_t first = 0;
  while (first < full && in(Eigen::Index(band.row0 + first), Eigen::Index(band.col0 + first)) == Complex(0.0))
    ++first;
  if (first == full) return;  // out already zero on this band

  const std::size_t n = full - first;
  std::vector<double> rate(band.rate.begin() + first, band.rate.end());
  std::vector<double> feed(band.feed.begin() + first, band.feed.end());
  feed[0] = 0.0;
  std::vector<Complex> y(n);
  for (std::size_t i = 0; i < n; ++i)
    y[i] = in(Eigen::Index(band.row0 + first + i), Eigen::Index(band.col0 + first + i));

  const double cap = cfg_.step_cap(sys_);
  const double dir = dtau < 0.0 ? -1.0 : 1.0;
  const double span = std::abs(dtau);

  if (cfg_.method == PropagatorMethod::fixed_rk4) {
    const auto steps = static_cast<std::size_t>(std::ceil(span / cap));
    const double h = dir * span / double(steps);
    std::vector<Complex> k1(n), k2(n), k3(n), k4(n), tmp(n);
    for (std::size_t s = 0; s < steps; ++s) {
      band_rhs(rate, feed, y.data(), k1.data(), n);
      for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
      band_rhs(rate, feed, tmp.data(), k2.data(), n);
      for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
      band_rhs(rate, feed, tmp.data(), k3.data(), n);
      for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * k3[i];
      band_rhs(rate, feed, tmp.data(), k4.data(), n);
      for (std::size_t i = 0; i < n; ++i) y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
  } else {
    std::array<std::vector<Complex>, 7> k;
    for (auto& v : k) v.resize(n);
    std::vector<Complex> tmp(n), y_new(n);
    double done = 0.0;
    double h = std::min(cap, span);
    band_rhs(rate, feed, y.data(), k[0].data(), n);
    std::size_t guard = 0;
    while (done < span) {
      if (++guard > 50'000'000) throw ConvergenceError("propagate: step budget exhausted", dir * done);
      const bool last = span - done <= h * (1.0 + 1e-10);
      if (last) h = span - done;
      const double hs = dir * h;
      for (int s = 1; s < 7; ++s) {
        for (std::size_t i = 0; i < n; ++i) {
          Complex acc = 0.0;
          for (int r = 0; r < s; ++r) acc += kA[s][r] * k[r][i];
          tmp[i] = y[i] + hs * acc;
        }
        band_rhs(rate, feed, tmp.data(), k[s].data(), n);
      }
      // Stage 7 is evaluated at the fifth-order solution (FSAL).
      y_new = tmp;
      double err = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        Complex e = 0.0;
        for (int s = 0; s < 7; ++s) e += kE[s] * k[s][i];
        const double scale = cfg_.abs_tol + cfg_.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
        err = std::max(err, std::abs(hs * e) / scale);
      }
      if (!std::isfinite(err)) throw ConvergenceError("propagate: non-finite error estimate", dir * done);
      if (err <= 1.0) {
        done = last ? span : done + h;
        y.swap(y_new);
        k[0].swap(k[6]);
      }
      const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      h = std::min(cap, h * (err <= 1.0 ? factor : std::min(1.0, factor)));
      if (err > 1.0 && h < 1e-15 * std::max(1.0, span)) {
        throw ConvergenceError("propagate: step size underflow", dir * done);
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    out(Eigen::Index(band.row0 + first + i), Eigen::Index(band.col0 + first + i)) = y[i];
}

SpinOperator BandPropagator::advance(const SpinOperator& rho, double dtau) const {
  if (rho.sys != sys_) throw DimensionError("BandPropagator::advance: operator built for a different j");
  if (!std::isfinite(dtau)) throw DomainError("propagate: non-finite time");
  if (dtau == 0.0) return rho;

  if (cfg_.method == PropagatorMethod::dense_expm_oracle) {
    if (sys_.dim() > 32) throw DomainError("dense_expm_oracle is limited to 2j + 1 <= 32");
    const auto d = static_cast<Eigen::Index>(sys_.dim());
    const ComplexMatrix gen = dense_superoperator(sys_) * dtau;
    const ComplexMatrix prop = gen.exp();
    const Eigen::Map<const ComplexVector> vin(rho.mat.data(), d * d);
    ComplexVector vout = prop * vin;
    return SpinOperator(sys_, Eigen::Map<ComplexMatrix>(vout.data(), d, d));
  }

  SpinOperator out = SpinOperator::zero(sys_);
  unsigned workers = cfg_.threads != 0 ? cfg_.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(bands_.size()));
  if (workers <= 1 || sys_.dim() < 16) {
    for (const Band& b : bands_) advance_band(b, rho.mat, out.mat, dtau);
    return out;
  }

  // Bands touch disjoint elements, so the result does not depend on scheduling.
  std::vector<std::exception_ptr> failures(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t b = w; b < bands_.size(); b += workers) advance_band(bands_[b], rho.mat, out.mat, dtau);
        } catch (...) {
          failures[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);
  return out;
}

std::vector<SpinOperator> BandPropagator::sample(const SpinOperator& rho0, std::span<const double> taus) const {
  std::vector<SpinOperator> out;
  out.reserve(taus.size());
  double now = 0.0;
  SpinOperator cur = rho0;
  for (double t : taus) {
    if (!(t >= now)) throw DomainError("BandPropagator::sample: times must be non-negative and non-decreasing");
    cur = advance(cur, t - now);
    now = t;
    out.push_back(cur);
  }
  return out;
}

SpinOperator propagate(const SpinOperator& rho0, double tau, const PropagatorConfig& cfg) {
  if (!(tau >= 0.0)) throw DomainError("propagate: tau must be non-negative");
  if (tau == 0.0) return rho0;
  return BandPropagator(rho0.sys, cfg).advance(rho0, tau);
}

void default_warning_sink(std::string_view message) { std::clog << "supercat: warning: " << message << '\n'; }

ComplexVector dispersive_phases(const SpinSystem& sys, const PhysicalParams& params, double t_seconds) {
  const double angle = params.eta() * t_seconds;
  ComplexVector out(static_cast<Eigen::Index>(sys.dim()));
  for (std::size_t k = 0; k < sys.dim(); ++k) {
    // (j+m)(j-m+1) = (2j-k)(k+1), an integer
    const long long level = static_cast<long long>(sys.two_j() - int(k)) * static_cast<long long>(k + 1);
    out(Eigen::Index(k)) = level == 0 ? Complex(1.0) : std::polar(1.0, -angle * double(level));
  }
  return out;
}

DickeVector propagate_dispersive(const DickeVector& psi, const PhysicalParams& params, double t_seconds,
                                 const WarningSink& warn) {
  if (!params.dispersive_valid() && warn) {
    for (const auto& w : params.regime_warnings())
      if (w.find("delta") != std::string::npos) warn(w);
  }
  return DickeVector(psi.sys, psi.amp.cwiseProduct(dispersive_phases(psi.sys, params, t_seconds)));
}

}  // namespace supercat

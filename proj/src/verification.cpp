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

#include "supercat/verification.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include "supercat/analytics.hpp"
#include "supercat/cats.hpp"
#include "supercat/errors.hpp"
#include "supercat/observables.hpp"
#include "supercat/spin_algebra.hpp"

namespace supercat::verification {

namespace {

using Clock = std::chrono::steady_clock;

struct Tally {
  double worst = 0.0;
  bool ok = true;
  int failures = 0;
  std::ostringstream log;

  void record(double value, bool pass, const std::string& line) {
    worst = std::max(worst, value);
    ok = ok && pass;
    failures += pass ? 0 : 1;
    log << (pass ? "  ok   " : "  FAIL ") << line << '\n';
  }
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// Relative deviation; exactly-zero predictions are compared absolutely.
double deviation(double fitted, double predicted) {
  return predicted == 0.0 ? std::abs(fitted) : std::abs(fitted - predicted) / std::abs(predicted);
}

SpinOperator coherent_dyad(const SpinSystem& sys, double theta1, double phi1, double theta2, double phi2) {
  return dyad(coherent_vector(CoherentSpec::make(theta1, phi1), sys),
              coherent_vector(CoherentSpec::make(theta2, phi2), sys));
}

SpinOperator real_gamma_dyad(const SpinSystem& sys, double gamma1, double gamma2) {
  return coherent_dyad(sys, theta_from_gamma(gamma1), 0.0, theta_from_gamma(gamma2), 0.0);
}

DecayFit fit_norm(const SpinOperator& rho0, double tau_max, std::size_t samples, DecayModel model,
                  const PropagatorConfig& cfg) {
  const auto grid = uniform_grid(tau_max, samples);
  const auto series = norm_series(rho0, NormKind::abs, grid, cfg);
  return fit_decay(series, model);
}

ComplexMatrix random_matrix(std::mt19937_64& rng, Eigen::Index d) {
  std::normal_distribution<double> normal;
  ComplexMatrix m(d, d);
  for (Eigen::Index c = 0; c < d; ++c)
    for (Eigen::Index r = 0; r < d; ++r) m(r, c) = Complex(normal(rng), normal(rng));
  return m;
}

ComplexMatrix random_density(std::mt19937_64& rng, Eigen::Index d) {
  const ComplexMatrix a = random_matrix(rng, d);
  ComplexMatrix rho = a * a.adjoint();
  return rho / rho.trace();
}

PhysicalParams dispersive_params(int n_atoms) {
  PhysicalParams p;
  p.g = 1.0;
  p.kappa = 1.0;
  p.delta = 100.0;
  p.n_atoms = n_atoms;
  return p;
}

void polar_exactness(Tally& t, const PropagatorConfig& cfg) {
  const auto grid = uniform_grid(3.0, 31);
  for (int two_j : {10, 20, 50}) {
    const SpinSystem sys(two_j);
    const SpinOperator rho0 = dyad(DickeVector::basis(sys, 0), DickeVector::basis(sys, sys.dim() - 1));
    const auto states = BandPropagator(sys, cfg).sample(rho0, grid);
    double err = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto [n1, n2] = polar_cat_norms(grid[i]);
      err = std::max({err, std::abs(norm_hs(states[i]) - n1), std::abs(norm_abs(states[i]) - n2)});
    }
    t.record(err, err <= 1e-8, "j=" + fmt(sys.j()) + " max |N - exact| = " + fmt(err));
  }
}

void slope_formula(Tally& t, const PropagatorConfig& cfg) {
  const double thetas[5] = {0.3, 0.9, 0.5 * kPi, kPi - 0.9, kPi - 0.3};
  const double dphis[5] = {0.0, 0.25 * kPi, 0.5 * kPi, kPi, 1.5 * kPi};
  for (int two_j : {20, 80}) {
    const SpinSystem sys(two_j);
    double worst = 0.0;
    std::string where;
    for (int a = 0; a < 5; ++a) {
      for (int b = 0; b < 5; ++b) {
        const double th1 = thetas[a], th2 = thetas[b], dphi = dphis[(a + 2 * b) % 5];
        const auto est = initial_slope(coherent_dyad(sys, th1, 0.0, th2, dphi), NormKind::hs, cfg);
        const double pred = n1_initial_slope(th1, 0.0, th2, dphi, sys.j()).total;
        const double rel = std::abs(est.slope - pred) / std::abs(pred);
        if (rel >= worst) {
          worst = rel;
          where = "(" + fmt(th1) + ", " + fmt(th2) + ", " + fmt(dphi) + ") fd " + fmt(est.slope) + " vs " +
                  fmt(pred);
        }
      }
    }
    t.record(worst, worst <= 1e-4, "j=" + fmt(sys.j()) + " 25 triples, worst rel " + fmt(worst) + " at " + where);
  }
}

void fast_decoherence(Tally& t, const PropagatorConfig& cfg) {
  for (int two_j : {100, 200}) {
    const SpinSystem sys(two_j);
    const double j = sys.j();
    for (const auto& p : fast_decoherence_pairs()) {
      const auto fit = fit_norm(real_gamma_dyad(sys, p.gamma1, p.gamma2), 0.1 / j, 20, DecayModel::linear, cfg);
      const double pred = n2_rate_general(p.gamma1, p.gamma2, j);
      const double scaled = deviation(fit.rate, pred) * j;  // pass iff rel <= 5/j
      t.record(scaled, scaled <= 5.0,
               "j=" + fmt(j) + " (" + fmt(p.gamma1) + ", " + fmt(p.gamma2) + ") rate " + fmt(fit.rate) +
                   " vs " + fmt(pred) + ", j*rel = " + fmt(scaled));
    }
  }
}

void symmetric_longevity(Tally& t, const PropagatorConfig& cfg) {
  for (double g : {1.0, 1.5, 2.0, 3.0}) {
    const auto pred = n2_symmetric_coefficients(g);
    double rates[2] = {0.0, 0.0};
    int idx = 0;
    for (int two_j : {100, 200}) {
      const SpinSystem sys(two_j);
      const double j = sys.j();
      const auto fit = fit_norm(real_gamma_dyad(sys, g, 1.0 / g), 0.5, 21, DecayModel::quadratic, cfg);
      rates[idx++] = fit.rate;
      const double s_lin = deviation(fit.rate, pred.linear) * j;
      const double s_quad = deviation(fit.quadratic, pred.quadratic) * j;
      // Short-window linear rate, for the record only.
      const auto short_fit = fit_norm(real_gamma_dyad(sys, g, 1.0 / g), 0.1 / j, 20, DecayModel::linear, cfg);
      t.record(std::max(s_lin, s_quad), s_lin <= 10.0 && s_quad <= 10.0,
               "j=" + fmt(j) + " gamma1=" + fmt(g) + " fit (" + fmt(fit.rate) + ", " + fmt(fit.quadratic) +
                   ") vs (" + fmt(pred.linear) + ", " + fmt(pred.quadratic) + "), j*rel = (" + fmt(s_lin) + ", " +
                   fmt(s_quad) + "); short-window rate " + fmt(short_fit.rate));
    }
    const double scale = std::max(std::abs(rates[0]), std::abs(rates[1]));
    const double variation = scale == 0.0 ? 0.0 : std::abs(rates[1] - rates[0]) / scale;
    // Reported on the same "j*rel" scale as above would be misleading; keep
    // it out of `worst` and gate on the 25 % bound directly.
    t.ok = t.ok && variation < 0.25;
    t.log << (variation < 0.25 ? "  ok   " : "  FAIL ") << "gamma1=" << fmt(g) << " rate(j=50) " << fmt(rates[0])
          << ", rate(j=100) " << fmt(rates[1]) << ", variation " << fmt(variation) << " (< 0.25)\n";
  }
}

void diagonal_states(Tally& t, const PropagatorConfig& cfg) {
  const SpinSystem sys(200);
  const double j = sys.j();
  for (double g : {0.5, 1.0, 2.0}) {
    const auto fit = fit_norm(real_gamma_dyad(sys, g, g), 0.1 / j, 20, DecayModel::linear, cfg);
    const double pred = n2_rate_diagonal(g);
    const double scaled = deviation(fit.rate, pred) * j;
    const double r = (g * g - 1.0) / (g * g + 1.0);
    t.record(scaled, scaled <= 10.0,
             "gamma=" + fmt(g) + " rate " + fmt(fit.rate) + " vs " + fmt(pred) + ", j*rel = " + fmt(scaled) +
                 " (cos^2 theta = " + fmt(r * r) + ")");
  }
}

void dispersive_generation(Tally& t) {
  // Integer j as required, plus odd N.
  for (int two_j : {10, 20, 5, 11}) {
    const SpinSystem sys(two_j);
    const PhysicalParams params = dispersive_params(two_j);
    for (double theta : {0.5 * kPi, kPi / 3.0}) {
      const double phi = 0.3;
      const DickeVector start = coherent_vector(CoherentSpec::make(theta, phi), sys);
      const DickeVector two = propagate_dispersive(start, params, multi_component_times(params, 2), {});
      const DickeVector expected = two_component_superposition(theta, phi, sys);
      const Complex ov = overlap(expected, two);
      const double infid = 1.0 - std::norm(ov);
      t.record(infid, infid <= 1e-10,
               "N=" + std::to_string(two_j) + " theta=" + fmt(theta) + " m=2 infidelity " + fmt(infid) +
                   ", residual phase " + fmt(std::arg(ov)));

      const DickeVector four = propagate_dispersive(start, params, multi_component_times(params, 4), {});
      std::vector<DickeVector> comps;
      for (const auto& s : multi_component_specs(theta, phi, two_j, 4)) comps.push_back(coherent_vector(s, sys));
      const double lost = 1.0 - span_capture(four, comps);
      t.record(lost, lost <= 1e-10,
               "N=" + std::to_string(two_j) + " theta=" + fmt(theta) + " m=4 uncaptured " + fmt(lost));
    }
  }
}

void preparation(Tally& t) {
  const SpinSystem sys(20);
  const PhysicalParams params = dispersive_params(20);
  for (double theta : {kPi / 6.0, kPi / 3.0, 0.5 * kPi}) {
    const DickeVector out = prepare_long_lived_cat(theta, 0.4, params, sys, {});
    const auto dec = symmetric_decomposition(out);
    const double lost = 1.0 - dec.captured;
    t.record(lost, lost <= 1e-8,
             "theta=" + fmt(theta) + " pair theta'=" + fmt(dec.theta) + " phi=" + fmt(dec.phi) + " uncaptured " +
                 fmt(lost));
  }
}

void oracle_equivalence(Tally& t, const PropagatorConfig& cfg) {
  std::mt19937_64 rng(20260315);
  PropagatorConfig dense;
  dense.method = PropagatorMethod::dense_expm_oracle;
  for (int two_j : {1, 2, 3, 4, 6, 10}) {
    const SpinSystem sys(two_j);
    const auto d = static_cast<Eigen::Index>(sys.dim());
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      const SpinOperator rho0(sys, i % 2 == 0 ? random_density(rng, d) : random_matrix(rng, d));
      for (double tau : {0.1, 1.0}) {
        const ComplexMatrix diff = propagate(rho0, tau, cfg).mat - propagate(rho0, tau, dense).mat;
        worst = std::max(worst, diff.cwiseAbs().maxCoeff());
      }
    }
    t.record(worst, worst <= 1e-9, "j=" + fmt(sys.j()) + " 10 operators x 2 times, max entry diff " + fmt(worst));
  }
}

void property_suite(Tally& t, const PropagatorConfig& cfg) {
  std::mt19937_64 rng(77);
  // Solver-level properties on random operators.
  for (int two_j : {1, 4, 7, 12, 20}) {
    const SpinSystem sys(two_j);
    const auto d = static_cast<Eigen::Index>(sys.dim());
    const BandPropagator prop(sys, cfg);
    double trace_err = 0.0, herm_err = 0.0, min_eig = 1e300, lin_err = 0.0;
    for (int i = 0; i < 3; ++i) {
      const SpinOperator rho(sys, random_density(rng, d));
      const SpinOperator x(sys, random_matrix(rng, d));
      const SpinOperator y(sys, random_matrix(rng, d));
      for (double tau : {0.2, 1.0, 5.0}) {
        const SpinOperator out = prop.advance(rho, tau);
        trace_err = std::max(trace_err, std::abs(out.trace() - rho.trace()));
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(0.5 * (out.mat + out.mat.adjoint()), Eigen::EigenvaluesOnly);
        min_eig = std::min(min_eig, eig.eigenvalues().minCoeff());
        herm_err = std::max(herm_err, (prop.advance(x.adjoint(), tau).mat - prop.advance(x, tau).mat.adjoint())
                                          .cwiseAbs()
                                          .maxCoeff());
        const Complex alpha(0.7, -0.2), beta(-1.3, 0.4);
        const SpinOperator combo(sys, alpha * x.mat + beta * y.mat);
        const ComplexMatrix lhs = prop.advance(combo, tau).mat;
        const ComplexMatrix rhs = alpha * prop.advance(x, tau).mat + beta * prop.advance(y, tau).mat;
        lin_err = std::max(lin_err, (lhs - rhs).cwiseAbs().maxCoeff() / std::max(1.0, rhs.cwiseAbs().maxCoeff()));
      }
    }
    const std::string tag = "j=" + fmt(sys.j());
    t.record(0.0, trace_err < 1e-10, tag + " trace drift " + fmt(trace_err));
    t.record(0.0, herm_err < 1e-10, tag + " hermiticity " + fmt(herm_err));
    t.record(0.0, min_eig >= -1e-9, tag + " min eigenvalue " + fmt(min_eig));
    t.record(0.0, lin_err < 1e-8, tag + " linearity " + fmt(lin_err));

    // Band invariance and ground-state stationarity are exact.
    bool band_ok = true;
    for (std::ptrdiff_t off : {std::ptrdiff_t(0), std::ptrdiff_t(1), -std::ptrdiff_t(d / 2)}) {
      SpinOperator banded = SpinOperator::zero(sys);
      for (Eigen::Index k = 0; k < d; ++k) {
        const Eigen::Index c = k - off;
        if (c >= 0 && c < d) banded.mat(k, c) = Complex(1.0 + 0.1 * double(k), 0.5);
      }
      const SpinOperator out = prop.advance(banded, 0.7);
      for (Eigen::Index r = 0; r < d; ++r)
        for (Eigen::Index c = 0; c < d; ++c)
          if (r - c != off && out.mat(r, c) != Complex(0.0)) band_ok = false;
    }
    t.record(0.0, band_ok, tag + " band invariance (exact zeros off band)");
    const SpinOperator ground =
        dyad(DickeVector::basis(sys, sys.dim() - 1), DickeVector::basis(sys, sys.dim() - 1));
    t.record(0.0, prop.advance(ground, 3.0).mat == ground.mat, tag + " ground state stationary");
  }

  // su(2) algebra and rotations.
  double alg_err = 0.0, unit_err = 0.0, comp_err = 0.0;
  for (int two_j = 0; two_j <= 20; ++two_j) {
    const SpinSystem sys(two_j);
    const ComplexMatrix jp = raising_matrix(sys).mat, jm = lowering_matrix(sys).mat, jz = jz_matrix(sys).mat;
    const ComplexMatrix jx = jx_matrix(sys).mat, jy = jy_matrix(sys).mat;
    const auto d = jz.rows();
    alg_err = std::max(alg_err, (jp * jm - jm * jp - 2.0 * jz).cwiseAbs().maxCoeff());
    alg_err = std::max(alg_err, (jz * jp - jp * jz - jp).cwiseAbs().maxCoeff());
    alg_err = std::max(alg_err, (jz * jm - jm * jz + jm).cwiseAbs().maxCoeff());
    const ComplexMatrix casimir = jx * jx + jy * jy + jz * jz - sys.j() * (sys.j() + 1.0) * ComplexMatrix::Identity(d, d);
    alg_err = std::max(alg_err, casimir.cwiseAbs().maxCoeff());
    const ComplexMatrix r1 = rotation_matrix(sys, 0.7, 0.4).mat;
    const ComplexMatrix r2 = rotation_matrix(sys, 0.7, 1.1).mat;
    unit_err = std::max(unit_err, (r1 * r1.adjoint() - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff());
    comp_err = std::max(comp_err, (r1 * r2 - rotation_matrix(sys, 0.7, 1.5).mat).cwiseAbs().maxCoeff());
  }
  t.record(0.0, alg_err < 1e-12, "su(2) commutators and Casimir, j <= 10: " + fmt(alg_err));
  t.record(0.0, unit_err < 1e-12, "rotation unitarity, j <= 10: " + fmt(unit_err));
  t.record(0.0, comp_err < 1e-10, "rotation composition, j <= 10: " + fmt(comp_err));

  // Classical limit at j = 100.
  const SpinSystem big(200);
  const auto grid = uniform_grid(2.0, 11);
  for (double theta0 : {0.9, 0.5 * kPi, 2.2}) {
    const DickeVector psi = coherent_vector(CoherentSpec::make(theta0, 0.0), big);
    const auto states = BandPropagator(big, cfg).sample(dyad(psi, psi), grid);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double jz_rel = std::clamp(bloch_vector(states[i]).z / big.j(), -1.0, 1.0);
      worst = std::max(worst, std::abs(std::acos(jz_rel) - classical_theta(theta0, grid[i])));
    }
    const double bound = 5.0 / std::sqrt(big.j());
    t.record(0.0, worst <= bound, "classical trajectory theta0=" + fmt(theta0) + " max dev " + fmt(worst) +
                                      " (bound " + fmt(bound) + ")");
  }
  // Measured value for this criterion is the number of failed sub-checks.
  t.worst = t.failures;
}

}  // namespace

const std::vector<GammaPair>& fast_decoherence_pairs() {
  static const std::vector<GammaPair> pairs = {{0.25, 0.5}, {0.25, 1.0}, {0.25, 2.0}, {0.5, 1.0}, {1.0, 4.0}};
  return pairs;
}

std::string criterion_name(int id) {
  switch (id) {
    case 1: return "polar antipodal cat decays exactly";
    case 2: return "initial N1 slope formula";
    case 3: return "fast decoherence of generic pairs";
    case 4: return "longevity of symmetric pairs";
    case 5: return "N2 decay of single coherent states";
    case 6: return "dispersive cat generation";
    case 7: return "long-lived cat preparation";
    case 8: return "banded propagator vs dense exponential";
    case 9: return "property suites";
    default: throw DomainError("unknown criterion id " + std::to_string(id));
  }
}

CriterionResult run_criterion(int id, const PropagatorConfig& cfg) {
  CriterionResult r;
  r.id = id;
  r.name = criterion_name(id);
  Tally t;
  const auto start = Clock::now();
  try {
    switch (id) {
      case 1: r.threshold = 1e-8; r.runtime_limit_s = 5; polar_exactness(t, cfg); break;
      case 2: r.threshold = 1e-4; r.runtime_limit_s = 30; slope_formula(t, cfg); break;
      case 3: r.threshold = 5.0; r.runtime_limit_s = 60; fast_decoherence(t, cfg); break;
      case 4: r.threshold = 10.0; r.runtime_limit_s = 60; symmetric_longevity(t, cfg); break;
      case 5: r.threshold = 10.0; r.runtime_limit_s = 30; diagonal_states(t, cfg); break;
      case 6: r.threshold = 1e-10; r.runtime_limit_s = 5; dispersive_generation(t); break;
      case 7: r.threshold = 1e-8; r.runtime_limit_s = 5; preparation(t); break;
      case 8: r.threshold = 1e-9; r.runtime_limit_s = 10; oracle_equivalence(t, cfg); break;
      case 9: r.threshold = 0.0; r.runtime_limit_s = 60; property_suite(t, cfg); break;
      default: break;
    }
  } catch (const std::exception& e) {
    t.ok = false;
    t.log << "  FAIL exception: " << e.what() << '\n';
  }
  r.runtime_s = std::chrono::duration<double>(Clock::now() - start).count();
  const bool in_time = r.runtime_s <= r.runtime_limit_s;
  if (!in_time) t.log << "  FAIL runtime " << fmt(r.runtime_s) << " s exceeds " << fmt(r.runtime_limit_s) << " s\n";
  r.passed = t.ok && in_time;
  r.measured = t.worst;
  r.detail = t.log.str();
  return r;
}

std::vector<CriterionResult> run_all(const PropagatorConfig& cfg,
                                     const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) {
    out.push_back(run_criterion(id, cfg));
    if (on_result) on_result(out.back());
  }
  return out;
}

}  // namespace supercat::verification

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

#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <functional>
#include <iostream>
#include <optional>
#include <thread>

#include "capi.hpp"

namespace supercat_cli {

namespace {

constexpr double kPi = 3.14159265358979323846;

State coherent(int two_j, double theta, double phi) {
  sc_state* s = nullptr;
  check(sc_state_coherent(two_j, theta, phi, &s), kExitConfig, "coherent state");
  return State(s);
}

Operator dyad(const sc_state* a, const sc_state* b) {
  sc_operator* op = nullptr;
  check(sc_operator_dyad(a, b, &op), kExitNumerical, "dyad");
  return Operator(op);
}

Operator advance(const sc_operator* rho, double dtau, const sc_propagator_config& pc) {
  sc_operator* out = nullptr;
  check(sc_operator_propagate(rho, dtau, &pc, &out), kExitNumerical, "propagation");
  return Operator(out);
}

double norm_of(const sc_operator* op, sc_norm_kind kind) {
  double v = 0.0;
  check(sc_operator_norm(op, kind, &v), kExitNumerical, "norm");
  return v;
}

std::complex<double> overlap(const sc_state* a, const sc_state* b) {
  double re = 0.0, im = 0.0;
  check(sc_state_overlap(a, b, &re, &im), kExitNumerical, "overlap");
  return {re, im};
}

// Relative deviation; exactly-zero predictions are compared absolutely.
double deviation(double fitted, double predicted) {
  return predicted == 0.0 ? std::abs(fitted) : std::abs(fitted - predicted) / std::abs(predicted);
}

bool same_azimuth(double a, double b) {
  const double d = std::remainder(a - b, 2.0 * kPi);
  return std::abs(d) < 1e-12;
}

// N2(tau)/N2(0) for a pair of coherent states with real gammas, when known.
std::function<double(double)> n2_ratio_for(double gamma1, double gamma2, double j) {
  if (std::abs(gamma1 * gamma2 - 1.0) <= 1e-12) {
    double lin = 0.0, quad = 0.0;
    check(sc_analytic_n2_symmetric(gamma1, &lin, &quad), kExitNumerical, "symmetric coefficients");
    return [lin, quad](double tau) { return std::exp(-lin * tau - quad * tau * tau); };
  }
  double rate = 0.0;
  if (gamma1 == gamma2)
    check(sc_analytic_n2_rate_diagonal(gamma1, &rate), kExitNumerical, "diagonal rate");
  else
    check(sc_analytic_n2_rate_general(gamma1, gamma2, j, &rate), kExitNumerical, "general rate");
  return [rate](double tau) { return std::exp(-rate * tau); };
}

std::function<double(double)> polar_n2() {
  return [](double tau) { return std::exp(-tau); };
}

sc_physical_params require_physical(const RunConfig& cfg, int two_j) {
  if (!cfg.physical) throw config_error("missing physical parameters: set g, kappa and delta");
  sc_physical_params p = *cfg.physical;
  p.n_atoms = two_j;
  return p;
}

struct WarningLog {
  Report* report;
  int count = 0;
};

void on_warning(const char* message, void* user) {
  auto* log = static_cast<WarningLog*>(user);
  std::cerr << "warning: " << message << '\n';
  log->report->meta.emplace_back("warning." + std::to_string(++log->count), std::string(message));
}

Preparation prepare(const RunConfig& cfg, int two_j, Report& report, WarningLog& log) {
  log.report = &report;
  const sc_physical_params p = require_physical(cfg, two_j);
  sc_preparation* prep = nullptr;
  const sc_status st = sc_prepare_long_lived_cat(two_j, cfg.theta, cfg.phi, &p, on_warning, &log, &prep);
  check(st, st == SC_ERR_CONVERGENCE ? kExitNumerical : kExitConfig, "preparation");
  return Preparation(prep);
}

State preparation_step(const sc_preparation* prep, int step) {
  sc_state* s = nullptr;
  check(sc_preparation_step(prep, step, &s), kExitNumerical, "preparation step");
  return State(s);
}

// What evolve tracks: the full state (for <Jz> and purity) and the coherence
// operator whose norms are reported.
struct EvolveSetup {
  State full;
  Operator coherence;  // null: use the full density matrix
  std::optional<double> jz_theta0;  // classical reference for <Jz>/j
  std::function<double(double)> n2_ratio;
  bool polar = false;
};

EvolveSetup setup_evolve(const RunConfig& cfg, int two_j, Report& report, WarningLog& log) {
  if (!cfg.state) throw config_error("missing field 'state' (coherent, cat, polar_cat or prepared)");
  EvolveSetup s;
  const double j = 0.5 * two_j;
  switch (*cfg.state) {
    case InitialState::coherent:
      s.full = coherent(two_j, cfg.theta, cfg.phi);
      if (cfg.theta >= 0.0 && cfg.theta <= kPi) s.jz_theta0 = cfg.theta;
      break;
    case InitialState::polar_cat: {
      sc_state* cat = nullptr;
      check(sc_state_cat(two_j, 0.0, 0.0, kPi, 0.0, 1.0, 0.0, 1.0, 0.0, &cat), kExitConfig, "polar cat");
      s.full.reset(cat);
      s.coherence = dyad(coherent(two_j, 0.0, 0.0).get(), coherent(two_j, kPi, 0.0).get());
      s.polar = true;
      break;
    }
    case InitialState::cat: {
      sc_state* cat = nullptr;
      check(sc_state_cat(two_j, cfg.theta1, cfg.phi1, cfg.theta2, cfg.phi2, cfg.c1_re, cfg.c1_im, cfg.c2_re,
                         cfg.c2_im, &cat),
            kExitConfig, "cat state");
      s.full.reset(cat);
      s.coherence = dyad(coherent(two_j, cfg.theta1, cfg.phi1).get(), coherent(two_j, cfg.theta2, cfg.phi2).get());
      const bool in_range = cfg.theta1 >= 0.0 && cfg.theta1 < kPi && cfg.theta2 >= 0.0 && cfg.theta2 < kPi;
      if (in_range && same_azimuth(cfg.phi1, cfg.phi2) && !(cfg.theta1 == 0.0 && cfg.theta2 == 0.0))
        s.n2_ratio = n2_ratio_for(std::tan(0.5 * cfg.theta1), std::tan(0.5 * cfg.theta2), j);
      break;
    }
    case InitialState::prepared: {
      const Preparation prep = prepare(cfg, two_j, report, log);
      s.full = preparation_step(prep.get(), 3);
      sc_preparation_info info{};
      check(sc_preparation_info_get(prep.get(), &info), kExitNumerical, "preparation info");
      const double t = info.symmetric_theta;
      s.coherence = dyad(coherent(two_j, t, info.symmetric_phi).get(), coherent(two_j, kPi - t, info.symmetric_phi).get());
      if (t < 1e-12) {
        s.polar = true;
      } else {
        s.n2_ratio = n2_ratio_for(std::tan(0.5 * t), 1.0 / std::tan(0.5 * t), j);
      }
      report.meta.emplace_back("symmetric_theta", t);
      report.meta.emplace_back("symmetric_phi", info.symmetric_phi);
      report.meta.emplace_back("symmetric_captured", info.symmetric_captured);
      break;
    }
  }
  if (s.polar) s.n2_ratio = polar_n2();
  return s;
}

}  // namespace

void cmd_evolve(const RunConfig& cfg, Report& report) {
  report.command = "evolve";
  const int two_j = require_two_j(cfg);
  const double j = 0.5 * two_j;
  WarningLog log{&report};
  EvolveSetup s = setup_evolve(cfg, two_j, report, log);

  std::vector<std::string> cols = {"tau", "n1", "n2"};
  if (s.polar) cols.push_back("n1_ref");
  if (s.n2_ratio) cols.push_back("n2_ref");
  cols.push_back("jz_over_j");
  if (s.jz_theta0) cols.push_back("jz_classical");
  cols.push_back("purity");
  Table& table = report.table("evolve", cols);

  Operator rho = dyad(s.full.get(), s.full.get());
  Operator coh = s.coherence ? std::move(s.coherence) : Operator();
  const double n2_0 = norm_of(coh ? coh.get() : rho.get(), SC_NORM_ABS);

  const auto taus = sample_grid(cfg);
  double prev = 0.0;
  for (const double tau : taus) {
    try {
      if (tau != prev) {
        rho = advance(rho.get(), tau - prev, cfg.propagator);
        if (coh) coh = advance(coh.get(), tau - prev, cfg.propagator);
        prev = tau;
      }
    } catch (const CliError& e) {
      report.complete = false;
      report.error = "at tau = " + format_number(tau) + ": " + e.what();
      throw;
    }
    const sc_operator* tracked = coh ? coh.get() : rho.get();
    std::vector<Cell> row = {tau, norm_of(tracked, SC_NORM_HS), norm_of(tracked, SC_NORM_ABS)};
    if (s.polar) row.emplace_back(std::exp(-2.0 * tau));
    if (s.n2_ratio) row.emplace_back(n2_0 * s.n2_ratio(tau));
    double bloch[3] = {0.0, 0.0, 0.0};
    check(sc_operator_bloch(rho.get(), bloch), kExitNumerical, "Bloch vector");
    row.emplace_back(bloch[2] / j);
    if (s.jz_theta0) {
      double th = 0.0;
      check(sc_analytic_classical_theta(*s.jz_theta0, tau, &th), kExitNumerical, "classical trajectory");
      row.emplace_back(std::cos(th));
    }
    double p = 0.0;
    check(sc_operator_purity(rho.get(), &p), kExitNumerical, "purity");
    row.emplace_back(p);
    table.add_row(std::move(row));
  }
}

namespace {

struct SweepPoint {
  int two_j = 0;
  GammaPair pair;
};

struct SweepRow {
  std::vector<Cell> cells;
  std::string error;  // nonempty when the point failed
  int code = kExitOk;
};

SweepRow run_sweep_point(const RunConfig& cfg, const SweepPoint& pt, const sc_propagator_config& pc) {
  const double j = 0.5 * pt.two_j;
  const double g1 = pt.pair.gamma1, g2 = pt.pair.gamma2;
  const bool symmetric = std::abs(g1 * g2 - 1.0) <= 1e-12;
  const bool diagonal = !symmetric && g1 == g2;
  const char* regime = symmetric ? "symmetric" : diagonal ? "diagonal" : "general";

  bool quadratic = symmetric;
  if (cfg.fit_model == FitChoice::linear) quadratic = false;
  if (cfg.fit_model == FitChoice::quadratic) quadratic = true;
  const double window = cfg.fit_tau_max.value_or(symmetric ? 0.5 : 0.1 / j);

  double pred_rate = 0.0, pred_quad = 0.0;
  if (symmetric) {
    check(sc_analytic_n2_symmetric(g1, &pred_rate, &pred_quad), kExitNumerical, "symmetric coefficients");
  } else if (diagonal) {
    check(sc_analytic_n2_rate_diagonal(g1, &pred_rate), kExitNumerical, "diagonal rate");
  } else {
    check(sc_analytic_n2_rate_general(g1, g2, j, &pred_rate), kExitNumerical, "general rate");
  }

  const State a = coherent(pt.two_j, 2.0 * std::atan(g1), 0.0);
  const State b = coherent(pt.two_j, 2.0 * std::atan(g2), 0.0);
  const Operator rho = dyad(a.get(), b.get());

  const std::size_t n = static_cast<std::size_t>(cfg.sample_count);
  std::vector<double> taus(n), values(n);
  for (std::size_t i = 0; i < n; ++i) taus[i] = window * double(i) / double(n - 1);
  std::vector<sc_operator*> states(n, nullptr);
  check(sc_operator_propagate_samples(rho.get(), taus.data(), n, &pc, states.data()), kExitNumerical,
        "propagation");
  std::vector<Operator> owned;
  for (auto* s : states) owned.emplace_back(s);
  for (std::size_t i = 0; i < n; ++i) values[i] = norm_of(owned[i].get(), SC_NORM_ABS);

  sc_decay_fit fit{};
  check(sc_fit_decay(taus.data(), values.data(), n, quadratic ? SC_FIT_QUADRATIC : SC_FIT_LINEAR, &fit),
        kExitNumerical, "decay fit");

  SweepRow row;
  row.cells = {j,
               g1,
               g2,
               std::string(regime),
               std::string(quadratic ? "quadratic" : "linear"),
               window,
               static_cast<long long>(n),
               fit.rate,
               quadratic ? Cell(fit.quadratic) : Cell(),
               pred_rate,
               quadratic ? Cell(pred_quad) : Cell(),
               deviation(fit.rate, pred_rate),
               quadratic ? Cell(deviation(fit.quadratic, pred_quad)) : Cell()};
  return row;
}

}  // namespace

void cmd_sweep(const RunConfig& cfg, Report& report) {
  report.command = "sweep";
  std::vector<int> js = cfg.sweep_two_j;
  if (js.empty() && cfg.two_j) js.push_back(*cfg.two_j);
  if (js.empty()) throw config_error("empty sweep grid: set 'sweep.j' (or 'j')");
  if (cfg.sweep_pairs.empty()) throw config_error("empty sweep grid: set 'sweep.pairs' as gamma1:gamma2 list");

  std::vector<SweepPoint> points;
  for (int two_j : js)
    for (const auto& p : cfg.sweep_pairs) points.push_back({two_j, p});

  // Points run concurrently; rows are assembled in grid order afterwards.
  sc_propagator_config pc = cfg.propagator;
  if (pc.threads == 0 && points.size() > 1) pc.threads = 1;
  std::vector<SweepRow> rows(points.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < points.size();) {
      try {
        rows[i] = run_sweep_point(cfg, points[i], pc);
      } catch (const CliError& e) {
        rows[i].error = e.what();
        rows[i].code = e.code();
      } catch (const std::exception& e) {
        rows[i].error = e.what();
        rows[i].code = kExitNumerical;
      }
    }
  };
  const std::size_t workers =
      points.size() == 1 ? 1 : std::min<std::size_t>(points.size(), std::max(1u, std::thread::hardware_concurrency()));
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
  }

  Table& table = report.table("sweep", {"j", "gamma1", "gamma2", "regime", "model", "fit_tau_max", "samples",
                                        "fitted_rate", "fitted_quadratic", "predicted_rate", "predicted_quadratic",
                                        "rel_dev_rate", "rel_dev_quadratic"});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].error.empty()) {
      report.complete = false;
      report.error = "at j = " + format_number(0.5 * points[i].two_j) + ", pair " +
                     format_number(points[i].pair.gamma1) + ":" + format_number(points[i].pair.gamma2) + ": " +
                     rows[i].error;
      throw CliError(rows[i].code, report.error);
    }
    table.add_row(std::move(rows[i].cells));
  }
}

void cmd_prepare(const RunConfig& cfg, Report& report) {
  report.command = "prepare";
  const int two_j = require_two_j(cfg);
  if (cfg.state && *cfg.state != InitialState::prepared)
    throw config_error("prepare needs state = prepared (or no state at all)");
  WarningLog log{&report};
  const Preparation prep = prepare(cfg, two_j, report, log);
  sc_preparation_info info{};
  check(sc_preparation_info_get(prep.get(), &info), kExitNumerical, "preparation info");

  State steps[3] = {preparation_step(prep.get(), 1), preparation_step(prep.get(), 2), preparation_step(prep.get(), 3)};

  // Capture of the final state by the predicted pair, via a two-state
  // Gram-Schmidt on overlaps.
  const double tilt = std::abs(0.5 * kPi - cfg.theta);
  const State pa = coherent(two_j, info.predicted_theta, info.predicted_phi);
  const State pb = coherent(two_j, kPi - info.predicted_theta, info.predicted_phi);
  const std::complex<double> s = overlap(pa.get(), pb.get());
  const std::complex<double> A = overlap(pa.get(), steps[2].get());
  const std::complex<double> B = overlap(pb.get(), steps[2].get());
  double predicted_capture = std::norm(A);
  if (1.0 - std::norm(s) > 1e-12) predicted_capture += std::norm(B - std::conj(s) * A) / (1.0 - std::norm(s));

  const State target = coherent(two_j, cfg.theta, cfg.phi);
  const double fid1 = std::norm(overlap(target.get(), steps[0].get()));

  Table& t = report.table("steps", {"step", "description", "bloch_x", "bloch_y", "bloch_z", "reference", "fidelity"});
  const char* desc[3] = {"resonant pulse", "dispersive evolution", "closing rotation"};
  const char* ref[3] = {"coherent(theta,phi)", "two-component form", "best symmetric pair"};
  const double fid[3] = {fid1, info.step2_fidelity, info.symmetric_captured};
  for (int i = 0; i < 3; ++i) {
    double b[3];
    check(sc_state_bloch(steps[i].get(), b), kExitNumerical, "Bloch vector");
    t.add_row({static_cast<long long>(i + 1), std::string(desc[i]), b[0], b[1], b[2], std::string(ref[i]), fid[i]});
  }

  Table& amps = report.table("amplitudes", {"step", "k", "m", "re", "im"});
  size_t dim = 0;
  check(sc_state_dim(steps[0].get(), &dim), kExitNumerical, "dimension");
  std::vector<double> re(dim), im(dim);
  for (int i = 0; i < 3; ++i) {
    check(sc_state_amplitudes(steps[i].get(), re.data(), im.data(), dim), kExitNumerical, "amplitudes");
    for (size_t k = 0; k < dim; ++k)
      amps.add_row({static_cast<long long>(i + 1), static_cast<long long>(k), 0.5 * two_j - double(k), re[k], im[k]});
  }

  report.meta.emplace_back("component_phi", info.component_phi);
  report.meta.emplace_back("pulse_axis_phi", info.pulse_axis_phi);
  report.meta.emplace_back("predicted_theta", info.predicted_theta);
  report.meta.emplace_back("predicted_partner_theta", kPi - info.predicted_theta);
  report.meta.emplace_back("predicted_phi", info.predicted_phi);
  report.meta.emplace_back("predicted_tilt", tilt);
  report.meta.emplace_back("predicted_pair_capture", predicted_capture);
  report.meta.emplace_back("symmetric_theta", info.symmetric_theta);
  report.meta.emplace_back("symmetric_phi", info.symmetric_phi);
  report.meta.emplace_back("final_fidelity", info.symmetric_captured);
}

namespace {

struct VerifyState {
  Table* table;
  std::ostream* progress;
  int passed = 0;
  int total = 0;
};

void on_criterion(const sc_criterion_result* r, void* user) {
  auto* v = static_cast<VerifyState*>(user);
  ++v->total;
  if (r->passed) ++v->passed;
  auto& out = *v->progress;
  out << (r->passed ? "PASS" : "FAIL") << "  criterion " << r->id << " (" << r->name << "): measured "
      << format_number(r->measured) << ", threshold " << format_number(r->threshold) << ", runtime "
      << format_number(std::round(r->runtime_s * 1000.0) / 1000.0) << " s (limit "
      << format_number(r->runtime_limit_s) << " s)\n";
  if (r->detail && *r->detail) {
    std::string detail(r->detail);
    std::size_t pos = 0;
    while (pos < detail.size()) {
      const auto nl = detail.find('\n', pos);
      const auto line = detail.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
      if (!line.empty()) out << "      " << line << '\n';
      if (nl == std::string::npos) break;
      pos = nl + 1;
    }
  }
  out.flush();
  v->table->add_row({static_cast<long long>(r->id), std::string(r->name), std::string(r->passed ? "pass" : "fail"),
                     r->measured, r->threshold, r->runtime_s, r->runtime_limit_s});
}

}  // namespace

bool cmd_verify(const RunConfig& cfg, Report& report, std::ostream& progress) {
  report.command = "verify";
  Table& table =
      report.table("summary", {"criterion", "name", "status", "measured", "threshold", "runtime_s", "runtime_limit_s"});
  VerifyState state{&table, &progress};
  int all = 0;
  check(sc_verify_run(cfg.verify_criterion, &cfg.propagator, on_criterion, &state, &all), kExitNumerical,
        "verification");
  report.meta.emplace_back("passed", static_cast<long long>(state.passed));
  report.meta.emplace_back("total", static_cast<long long>(state.total));
  report.meta.emplace_back("all_passed", std::string(all ? "true" : "false"));
  return all != 0;
}

}  // namespace supercat_cli

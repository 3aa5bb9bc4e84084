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

// Superradiant damping and dispersive (detuned-cavity) evolution.
//
// Dissipative dynamics uses the dimensionless time tau = t / T_class. Only
// the dispersive unitary takes laboratory seconds, paired with
// PhysicalParams.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "supercat/spin_algebra.hpp"

namespace supercat {

struct PhysicalParams {
  double g = 0.0;      // single-atom vacuum Rabi frequency, rad/s
  double kappa = 0.0;  // mode amplitude damping rate, rad/s
  double delta = 0.0;  // cavity-atom detuning, rad/s
  int n_atoms = 0;

  // Throws DomainError for non-positive g, kappa, n_atoms or non-finite values.
  void validate() const;

  // eta = g^2 delta / (kappa^2 + delta^2), the J+J- coupling of the detuned cavity.
  double eta() const;
  // T_class = kappa / (N g^2)
  double t_class() const;
  double seconds_from_tau(double tau) const { return tau * t_class(); }
  double tau_from_seconds(double t) const { return t / t_class(); }

  // "Much greater than" is read as a factor of 10.
  bool superradiance_valid() const;  // kappa > 10 g sqrt(N)
  bool dispersive_valid() const;     // |delta| > 10 kappa
  std::vector<std::string> regime_warnings() const;
};

enum class PropagatorMethod { adaptive_rk, fixed_rk4, dense_expm_oracle };

struct PropagatorConfig {
  PropagatorMethod method = PropagatorMethod::adaptive_rk;
  double rel_tol = 1e-10;
  double abs_tol = 1e-13;
  // Largest step in tau; default 0.1 / (j + 1), the inverse of the fastest decay rate.
  std::optional<double> max_step;
  // Worker threads over offset bands; 0 picks std::thread::hardware_concurrency.
  unsigned threads = 0;

  double step_cap(const SpinSystem& sys) const;
  void validate() const;
};

// Lambda rho = (1/2j) (2 J- rho J+ - J+J- rho - rho J+J-), evaluated
// element-wise in O(dim^2).
SpinOperator lindblad_apply(const SpinOperator& rho);

// Matrix of Lambda acting on column-major vec(rho), built from dense
// Kronecker products. Independent of the banded path; used as an oracle.
ComplexMatrix dense_superoperator(const SpinSystem& sys);

// Propagator for a fixed spin system. Lambda maps each diagonal offset band
// d = k1 - k2 onto itself, and within a band it is lower bidiagonal, so each
// of the 2 dim - 1 bands is integrated as an independent linear ODE system.
class BandPropagator {
 public:
  explicit BandPropagator(SpinSystem sys, PropagatorConfig cfg = {});

  const SpinSystem& system() const noexcept { return sys_; }
  const PropagatorConfig& config() const noexcept { return cfg_; }

  // e^{Lambda dtau} rho. Negative dtau integrates backwards; finite
  // differences use that, the public propagate() does not.
  SpinOperator advance(const SpinOperator& rho, double dtau) const;

  // States at each of the non-decreasing, non-negative sample times.
  std::vector<SpinOperator> sample(const SpinOperator& rho0, std::span<const double> taus) const;

 private:
  struct Band {
    std::size_t row0 = 0;  // first element is (row0, col0)
    std::size_t col0 = 0;
    std::vector<double> rate;  // diagonal decay rates
    std::vector<double> feed;  // coupling from element i-1; feed[0] == 0
  };

  void advance_band(const Band& band, const ComplexMatrix& in, ComplexMatrix& out, double dtau) const;

  SpinSystem sys_;
  PropagatorConfig cfg_;
  std::vector<Band> bands_;
};

// e^{Lambda tau} rho0 for tau >= 0.
SpinOperator propagate(const SpinOperator& rho0, double tau, const PropagatorConfig& cfg = {});

using WarningSink = std::function<void(std::string_view)>;
// Writes "supercat: warning: ..." to std::clog.
void default_warning_sink(std::string_view message);

// Diagonal of exp(-i H_eff t / hbar) with H_eff = hbar eta J+J-.
ComplexVector dispersive_phases(const SpinSystem& sys, const PhysicalParams& params, double t_seconds);

// Exact dispersive evolution; warns through `warn` when the detuning is not
// in the dispersive regime.
DickeVector propagate_dispersive(const DickeVector& psi, const PhysicalParams& params, double t_seconds,
                                 const WarningSink& warn = default_warning_sink);

}  // namespace supercat

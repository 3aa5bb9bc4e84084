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

// Run configuration: a key = value file (with # comments) plus --set
// overrides, validated into a typed RunConfig.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "output.hpp"
#include "supercat/supercat.h"

namespace supercat_cli {

enum class InitialState { coherent, cat, polar_cat, prepared };
enum class Grid { uniform, log };
enum class FitChoice { automatic, linear, quadratic };

struct GammaPair {
  double gamma1 = 0.0;
  double gamma2 = 0.0;
};

struct RunConfig {
  std::optional<int> two_j;  // from j or n_atoms
  std::optional<InitialState> state;

  double theta = 0.0, phi = 0.0;
  double theta1 = 0.0, phi1 = 0.0, theta2 = 0.0, phi2 = 0.0;
  double c1_re = 1.0, c1_im = 0.0, c2_re = 1.0, c2_im = 0.0;
  std::optional<sc_physical_params> physical;  // all of g, kappa, delta

  double tau_max = 1.0;
  int sample_count = 21;
  Grid grid = Grid::uniform;
  sc_propagator_config propagator{};

  std::vector<int> sweep_two_j;
  std::vector<GammaPair> sweep_pairs;
  FitChoice fit_model = FitChoice::automatic;
  std::optional<double> fit_tau_max;  // unset: chosen per regime

  int verify_criterion = 0;  // 0 runs every criterion

  std::string out_path;
  Format format = Format::table;
};

// One raw assignment and where it came from, for diagnostics.
struct Assignment {
  std::string key;
  std::string value;
  std::string origin;  // "file.cfg:12" or "--set #2"
};

std::vector<Assignment> parse_config_text(const std::string& text, const std::string& source);
Assignment parse_override(const std::string& text, int index);

// Later assignments win. Throws CliError(kExitConfig) naming the offending
// line and field.
// `implied_state` stands in when the assignments name no state.
RunConfig build_config(const std::vector<Assignment>& assignments,
                       std::optional<InitialState> implied_state = std::nullopt);

RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides,
                      std::optional<InitialState> implied_state = std::nullopt);

int require_two_j(const RunConfig& cfg);
std::vector<double> sample_grid(const RunConfig& cfg);

}  // namespace supercat_cli

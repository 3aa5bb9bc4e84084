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

// Executable acceptance criteria. Each criterion runs at its pinned
// tolerance and runtime budget and reports the measured worst case.

#include <functional>
#include <string>
#include <vector>

#include "supercat/dynamics.hpp"

namespace supercat::verification {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double measured = 0.0;   // worst-case value compared against `threshold`
  double threshold = 0.0;
  double runtime_s = 0.0;
  double runtime_limit_s = 0.0;
  std::string detail;      // one line per sub-check
};

inline constexpr int kCriterionCount = 9;

std::string criterion_name(int id);

// `cfg` replaces the default propagator settings in every criterion that
// propagates; used to check that the harness notices a degraded solver.
CriterionResult run_criterion(int id, const PropagatorConfig& cfg = {});

std::vector<CriterionResult> run_all(const PropagatorConfig& cfg = {},
                                     const std::function<void(const CriterionResult&)>& on_result = {});

// Pairs used for the fast-decoherence check. All sit away from the poles:
// at gamma = 0 the coherent state is a single Dicke state and the
// semiclassical rate carries corrections of relative order j^{-1/2}.
struct GammaPair {
  double gamma1;
  double gamma2;
};
const std::vector<GammaPair>& fast_decoherence_pairs();

}  // namespace supercat::verification

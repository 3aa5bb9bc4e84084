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

#include <iosfwd>

#include "output.hpp"
#include "run_config.hpp"

namespace supercat_cli {

// Each command fills `report` as it goes, so a numerical failure part-way
// still leaves the rows computed so far. Exceptions are CliError.
void cmd_evolve(const RunConfig& cfg, Report& report);
void cmd_sweep(const RunConfig& cfg, Report& report);
void cmd_prepare(const RunConfig& cfg, Report& report);

// Streams one human-readable line per criterion to `progress`; returns true
// iff every criterion passed.
bool cmd_verify(const RunConfig& cfg, Report& report, std::ostream& progress);

}  // namespace supercat_cli

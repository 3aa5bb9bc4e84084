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

// Thin C++ conveniences over the C API: owning handles and status checks.
#pragma once

#include <memory>
#include <stdexcept>
#include <string>

#include "supercat/supercat.h"

namespace supercat_cli {

enum ExitCode : int { kExitOk = 0, kExitVerifyFailed = 1, kExitConfig = 2, kExitNumerical = 3 };

// Carries the process exit code alongside the message.
class CliError : public std::runtime_error {
 public:
  CliError(int code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  int code() const noexcept { return code_; }

 private:
  int code_;
};

inline CliError config_error(const std::string& msg) { return CliError(kExitConfig, msg); }

// Throws CliError(code) when the C call did not succeed.
inline void check(sc_status status, int code, const char* what) {
  if (status == SC_OK) return;
  throw CliError(code, std::string(what) + ": " + sc_status_name(status) + ": " + sc_last_error());
}

struct StateDeleter {
  void operator()(sc_state* p) const noexcept { sc_state_free(p); }
};
struct OperatorDeleter {
  void operator()(sc_operator* p) const noexcept { sc_operator_free(p); }
};
struct PreparationDeleter {
  void operator()(sc_preparation* p) const noexcept { sc_preparation_free(p); }
};

using State = std::unique_ptr<sc_state, StateDeleter>;
using Operator = std::unique_ptr<sc_operator, OperatorDeleter>;
using Preparation = std::unique_ptr<sc_preparation, PreparationDeleter>;

}  // namespace supercat_cli

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

#include <stdexcept>
#include <string>

namespace supercat {

// All library failures derive from Error so callers can catch one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Operands built for different spin systems.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Input is formally valid but numerically degenerate (e.g. a cat whose
// two components cancel).
class DegenerateError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double reached_tau)
      : Error(what), reached_tau_(reached_tau) {}
  double reached_tau() const noexcept { return reached_tau_; }

 private:
  double reached_tau_;
};

class FitError : public Error {
 public:
  using Error::Error;
};

}  // namespace supercat

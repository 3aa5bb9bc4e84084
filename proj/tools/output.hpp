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

// Result tables and their two renderings: delimiter-separated text with a
// header row, or a single JSON document.
#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace supercat_cli {

enum class Format { table, structured };

// Empty cell, number, integer or text.
using Cell = std::variant<std::monostate, double, long long, std::string>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

struct Report {
  std::string command;
  std::vector<Table> tables;
  std::vector<std::pair<std::string, Cell>> meta;  // trailing key/value notes
  bool complete = true;
  std::string error;  // set when the run stopped early

  Table& table(const std::string& name, std::vector<std::string> columns);
};

// Shortest decimal that parses back to the same double.
std::string format_number(double v);

void write_report(std::ostream& out, const Report& report, Format format);

}  // namespace supercat_cli

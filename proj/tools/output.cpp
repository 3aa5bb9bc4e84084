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

#include "output.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace supercat_cli {

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size())
    throw std::logic_error("table '" + name + "': row has " + std::to_string(row.size()) + " cells, expected " +
                           std::to_string(columns.size()));
  rows.push_back(std::move(row));
}

Table& Report::table(const std::string& name, std::vector<std::string> columns) {
  tables.push_back(Table{name, std::move(columns), {}});
  return tables.back();
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

std::string cell_text(const Cell& c) {
  struct {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(double v) const { return format_number(v); }
    std::string operator()(long long v) const { return std::to_string(v); }
    std::string operator()(const std::string& s) const { return s; }
  } visit;
  return std::visit(visit, c);
}

nlohmann::ordered_json cell_json(const Cell& c) {
  struct {
    nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
    nlohmann::ordered_json operator()(double v) const {
      return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(format_number(v));
    }
    nlohmann::ordered_json operator()(long long v) const { return v; }
    nlohmann::ordered_json operator()(const std::string& s) const { return s; }
  } visit;
  return std::visit(visit, c);
}

void write_delimited(std::ostream& out, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
    out << '\n';
  }
}

}  // namespace

void write_report(std::ostream& out, const Report& report, Format format) {
  if (format == Format::structured) {
    nlohmann::ordered_json doc;
    doc["command"] = report.command;
    doc["complete"] = report.complete;
    if (!report.complete) doc["error"] = report.error;
    for (const auto& [key, value] : report.meta) doc["meta"][key] = cell_json(value);
    for (const auto& t : report.tables) {
      nlohmann::ordered_json jt;
      jt["columns"] = t.columns;
      jt["rows"] = nlohmann::ordered_json::array();
      for (const auto& row : t.rows) {
        nlohmann::ordered_json jr = nlohmann::ordered_json::array();
        for (const auto& c : row) jr.push_back(cell_json(c));
        jt["rows"].push_back(std::move(jr));
      }
      doc["tables"][t.name] = std::move(jt);
    }
    out << doc.dump(2) << '\n';
    return;
  }
  const bool labelled = report.tables.size() > 1;
  for (std::size_t i = 0; i < report.tables.size(); ++i) {
    if (i) out << '\n';
    if (labelled) out << "# table: " << report.tables[i].name << '\n';
    write_delimited(out, report.tables[i]);
  }
  for (const auto& [key, value] : report.meta) out << "# " << key << " = " << cell_text(value) << '\n';
  if (!report.complete) out << "# incomplete: " << report.error << '\n';
}

}  // namespace supercat_cli

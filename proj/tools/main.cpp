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

#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "capi.hpp"
#include "commands.hpp"
#include "output.hpp"
#include "run_config.hpp"

using namespace supercat_cli;

int main(int argc, char** argv) {
  CLI::App app{"Superradiant decay of spin cat states: evolve, sweep, prepare, verify"};
  app.set_version_flag("--version", std::string(sc_version()));
  app.require_subcommand(1, 1);

  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_path;
  std::string format_name;
  app.add_option("--config", config_path, "key = value configuration file");
  app.add_option("--set", overrides, "override one key (key=value); repeatable")->take_all();
  app.add_option("--out", out_path, "write results to PATH instead of stdout");
  app.add_option("--format", format_name, "table or structured")->check(CLI::IsMember({"table", "structured"}));

  CLI::App* evolve = app.add_subcommand("evolve", "propagate one initial state and tabulate norms");
  CLI::App* sweep = app.add_subcommand("sweep", "fit coherence decay rates over a grid of j and gamma pairs");
  CLI::App* prepare = app.add_subcommand("prepare", "run the three-step cat preparation and dump each step");
  CLI::App* verify = app.add_subcommand("verify", "run the acceptance suite");
  for (CLI::App* sub : {evolve, sweep, prepare, verify}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  RunConfig cfg;
  try {
    cfg = load_config(config_path, overrides,
                      prepare->parsed() ? std::optional(InitialState::prepared) : std::nullopt);
  } catch (const CliError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return e.code();
  }
  if (!out_path.empty()) cfg.out_path = out_path;
  if (!format_name.empty()) cfg.format = format_name == "structured" ? Format::structured : Format::table;

  std::ofstream file;
  if (!cfg.out_path.empty()) {
    file.open(cfg.out_path, std::ios::binary);
    if (!file) {
      std::cerr << "config error: cannot open output '" << cfg.out_path << "'\n";
      return kExitConfig;
    }
  }
  std::ostream& out = cfg.out_path.empty() ? std::cout : file;

  Report report;
  int code = kExitOk;
  bool started = false;
  try {
    if (evolve->parsed()) {
      cmd_evolve(cfg, report);
    } else if (sweep->parsed()) {
      cmd_sweep(cfg, report);
    } else if (prepare->parsed()) {
      cmd_prepare(cfg, report);
    } else {
      // Human lines go with the table; structured output keeps stdout clean.
      std::ostream& progress = cfg.format == Format::structured ? std::cerr : out;
      if (!cmd_verify(cfg, report, progress)) code = kExitVerifyFailed;
      if (cfg.format == Format::table) out << "\n# table: summary\n";
    }
    started = true;
  } catch (const CliError& e) {
    code = e.code();
    std::cerr << (code == kExitConfig ? "config error: " : "numerical failure: ") << e.what() << '\n';
    if (code != kExitConfig) {
      report.complete = false;
      if (report.error.empty()) report.error = e.what();
    }
  } catch (const std::exception& e) {
    code = kExitNumerical;
    report.complete = false;
    report.error = e.what();
    std::cerr << "numerical failure: " << e.what() << '\n';
  }
  if (started || code == kExitNumerical) write_report(out, report, cfg.format);
  out.flush();
  return code;
}

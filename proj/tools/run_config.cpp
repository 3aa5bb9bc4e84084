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

#include "run_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "capi.hpp"

namespace supercat_cli {

namespace {

constexpr double kPi = 3.14159265358979323846;

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "j",       "n_atoms",      "state",    "theta",       "phi",          "theta1",         "phi1",
      "theta2",  "phi2",         "c1_re",    "c1_im",       "c2_re",        "c2_im",          "g",
      "kappa",   "delta",        "tau_max",  "sample_count", "grid",        "method",         "rel_tol",
      "abs_tol", "max_step",     "threads",  "sweep.j",     "sweep.pairs",  "fit_model",      "fit_tau_max",
      "verify.criterion",        "out",      "format"};
  return keys;
}

// Keys owned by one initial-state variant.
const std::map<std::string, std::set<InitialState>>& variant_keys() {
  using S = InitialState;
  static const std::map<std::string, std::set<S>> keys = {
      {"theta", {S::coherent, S::prepared}}, {"phi", {S::coherent, S::prepared}},
      {"theta1", {S::cat}},                  {"phi1", {S::cat}},
      {"theta2", {S::cat}},                  {"phi2", {S::cat}},
      {"c1_re", {S::cat}},                   {"c1_im", {S::cat}},
      {"c2_re", {S::cat}},                   {"c2_im", {S::cat}},
      {"g", {S::prepared}},                  {"kappa", {S::prepared}},
      {"delta", {S::prepared}}};
  return keys;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void bad(const Assignment& a, const std::string& what) {
  throw config_error(a.origin + ": field '" + a.key + "': " + what);
}

std::optional<double> parse_factor(std::string_view tok) {
  const std::string t = trim(tok);
  if (t == "pi") return kPi;
  if (t == "-pi") return -kPi;
  double v = 0.0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size()) return std::nullopt;
  return v;
}

// A number, or a product/quotient of numbers and "pi" such as 3*pi/4.
std::optional<double> parse_real(std::string_view text) {
  double acc = 0.0;
  char op = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i < text.size() && text[i] != '*' && text[i] != '/') continue;
    const auto f = parse_factor(text.substr(start, i - start));
    if (!f) return std::nullopt;
    if (op == 0) acc = *f;
    else if (op == '*') acc *= *f;
    else acc /= *f;
    if (i < text.size()) op = text[i];
    start = i + 1;
  }
  return acc;
}

double real_of(const Assignment& a) {
  const auto v = parse_real(a.value);
  if (!v || !std::isfinite(*v)) bad(a, "expected a finite number, got '" + a.value + "'");
  return *v;
}

long long integer_of(const Assignment& a) {
  const std::string t = trim(a.value);
  long long v = 0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size())
    bad(a, "expected an integer, got '" + a.value + "'");
  return v;
}

int two_j_of(const Assignment& a, std::string_view text) {
  const auto v = parse_real(text);
  if (!v) bad(a, "expected a spin value, got '" + std::string(text) + "'");
  const double twice = 2.0 * *v;
  const double rounded = std::round(twice);
  if (std::abs(twice - rounded) > 1e-12 || rounded < 1.0 || rounded > 1e6)
    bad(a, "spin must be a positive multiple of 1/2, got '" + std::string(text) + "'");
  return static_cast<int>(rounded);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <class E>
E choice_of(const Assignment& a, std::initializer_list<std::pair<const char*, E>> options) {
  std::string names;
  for (const auto& [name, value] : options) {
    if (trim(a.value) == name) return value;
    names += names.empty() ? name : std::string(", ") + name;
  }
  bad(a, "expected one of {" + names + "}, got '" + a.value + "'");
}

}  // namespace

std::vector<Assignment> parse_config_text(const std::string& text, const std::string& source) {
  std::vector<Assignment> out;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const std::string origin = source + ":" + std::to_string(number);
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw config_error(origin + ": expected 'key = value', got '" + body + "'");
    out.push_back({trim(body.substr(0, eq)), trim(body.substr(eq + 1)), origin});
  }
  return out;
}

Assignment parse_override(const std::string& text, int index) {
  const std::string origin = "--set #" + std::to_string(index);
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw config_error(origin + ": expected key=value, got '" + text + "'");
  return {trim(text.substr(0, eq)), trim(text.substr(eq + 1)), origin};
}

RunConfig build_config(const std::vector<Assignment>& assignments, std::optional<InitialState> implied_state) {
  std::map<std::string, Assignment> last;
  for (const auto& a : assignments) {
    if (!known_keys().count(a.key)) throw config_error(a.origin + ": unknown key '" + a.key + "'");
    if (a.value.empty()) bad(a, "empty value");
    last[a.key] = a;
  }
  auto get = [&](const char* key) -> const Assignment* {
    const auto it = last.find(key);
    return it == last.end() ? nullptr : &it->second;
  };

  RunConfig cfg;
  sc_propagator_config_default(&cfg.propagator);

  const Assignment* j = get("j");
  const Assignment* n = get("n_atoms");
  if (j && n) throw config_error(n->origin + ": give either 'j' or 'n_atoms', not both (other at " + j->origin + ")");
  if (j) cfg.two_j = two_j_of(*j, j->value);
  if (n) {
    const long long atoms = integer_of(*n);
    if (atoms < 1 || atoms > 1000000) bad(*n, "must be a positive atom count");
    cfg.two_j = static_cast<int>(atoms);
  }

  if (const auto* a = get("state"))
    cfg.state = choice_of<InitialState>(*a, {{"coherent", InitialState::coherent},
                                             {"cat", InitialState::cat},
                                             {"polar_cat", InitialState::polar_cat},
                                             {"prepared", InitialState::prepared}});
  else
    cfg.state = implied_state;
  for (const auto& [key, owners] : variant_keys()) {
    const Assignment* a = get(key.c_str());
    if (!a) continue;
    if (!cfg.state) bad(*a, "requires 'state' to be set");
    if (!owners.count(*cfg.state))
      bad(*a, "does not apply to state '" + (get("state") ? get("state")->value : std::string("prepared")) + "'");
  }

  auto real = [&](const char* key, double& slot) {
    if (const auto* a = get(key)) slot = real_of(*a);
  };
  real("theta", cfg.theta);
  real("phi", cfg.phi);
  real("theta1", cfg.theta1);
  real("phi1", cfg.phi1);
  real("theta2", cfg.theta2);
  real("phi2", cfg.phi2);
  real("c1_re", cfg.c1_re);
  real("c1_im", cfg.c1_im);
  real("c2_re", cfg.c2_re);
  real("c2_im", cfg.c2_im);

  const Assignment* g = get("g");
  const Assignment* kappa = get("kappa");
  const Assignment* delta = get("delta");
  if (g || kappa || delta) {
    for (auto [a, key] : {std::pair{g, "g"}, std::pair{kappa, "kappa"}, std::pair{delta, "delta"}})
      if (!a) {
        const Assignment* seen = g ? g : kappa ? kappa : delta;
        throw config_error(seen->origin + ": physical parameters need g, kappa and delta; '" + key + "' is missing");
      }
    sc_physical_params p{real_of(*g), real_of(*kappa), real_of(*delta), cfg.two_j.value_or(0)};
    if (p.g <= 0.0) bad(*g, "must be positive");
    if (p.kappa <= 0.0) bad(*kappa, "must be positive");
    if (p.delta == 0.0) bad(*delta, "must be nonzero");
    cfg.physical = p;
  }

  if (const auto* a = get("tau_max")) {
    cfg.tau_max = real_of(*a);
    if (!(cfg.tau_max > 0.0)) bad(*a, "must be > 0");
  }
  if (const auto* a = get("sample_count")) {
    const long long v = integer_of(*a);
    if (v < 2 || v > 1000000) bad(*a, "must be at least 2");
    cfg.sample_count = static_cast<int>(v);
  }
  if (const auto* a = get("grid")) cfg.grid = choice_of<Grid>(*a, {{"uniform", Grid::uniform}, {"log", Grid::log}});

  if (const auto* a = get("method"))
    cfg.propagator.method = choice_of<sc_method>(
        *a, {{"adaptive_rk", SC_METHOD_ADAPTIVE_RK}, {"fixed_rk4", SC_METHOD_FIXED_RK4}, {"dense_expm", SC_METHOD_DENSE_EXPM}});
  if (const auto* a = get("rel_tol")) {
    cfg.propagator.rel_tol = real_of(*a);
    if (!(cfg.propagator.rel_tol > 0.0)) bad(*a, "must be > 0");
  }
  if (const auto* a = get("abs_tol")) {
    cfg.propagator.abs_tol = real_of(*a);
    if (!(cfg.propagator.abs_tol > 0.0)) bad(*a, "must be > 0");
  }
  if (const auto* a = get("max_step")) {
    cfg.propagator.max_step = real_of(*a);
    if (!(cfg.propagator.max_step > 0.0)) bad(*a, "must be > 0");
  }
  if (const auto* a = get("threads")) {
    const long long v = integer_of(*a);
    if (v < 0 || v > 4096) bad(*a, "must be between 0 and 4096");
    cfg.propagator.threads = static_cast<unsigned>(v);
  }

  if (const auto* a = get("sweep.j")) {
    for (const auto& item : split_list(a->value)) cfg.sweep_two_j.push_back(two_j_of(*a, item));
    if (cfg.sweep_two_j.empty()) bad(*a, "empty list");
  }
  if (const auto* a = get("sweep.pairs")) {
    for (const auto& item : split_list(a->value)) {
      const auto colon = item.find(':');
      if (colon == std::string::npos) bad(*a, "pairs are written gamma1:gamma2, got '" + item + "'");
      const auto g1 = parse_real(item.substr(0, colon));
      const auto g2 = parse_real(item.substr(colon + 1));
      if (!g1 || !g2 || *g1 < 0.0 || *g2 < 0.0 || !std::isfinite(*g1) || !std::isfinite(*g2))
        bad(*a, "pair '" + item + "' needs two finite non-negative numbers");
      cfg.sweep_pairs.push_back({*g1, *g2});
    }
    if (cfg.sweep_pairs.empty()) bad(*a, "empty list");
  }
  if (const auto* a = get("fit_model"))
    cfg.fit_model = choice_of<FitChoice>(
        *a, {{"auto", FitChoice::automatic}, {"linear", FitChoice::linear}, {"quadratic", FitChoice::quadratic}});
  if (const auto* a = get("fit_tau_max")) {
    if (trim(a->value) != "auto") {
      cfg.fit_tau_max = real_of(*a);
      if (!(*cfg.fit_tau_max > 0.0)) bad(*a, "must be > 0 or 'auto'");
    }
  }

  if (const auto* a = get("verify.criterion")) {
    const long long v = integer_of(*a);
    if (v < 0 || v > sc_verify_criterion_count()) bad(*a, "no such criterion");
    cfg.verify_criterion = static_cast<int>(v);
  }
  if (const auto* a = get("out")) cfg.out_path = a->value;
  if (const auto* a = get("format"))
    cfg.format = choice_of<Format>(*a, {{"table", Format::table}, {"structured", Format::structured}});
  return cfg;
}

RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides,
                      std::optional<InitialState> implied_state) {
  std::vector<Assignment> all;
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot read config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    all = parse_config_text(buf.str(), path);
  }
  for (std::size_t i = 0; i < overrides.size(); ++i) all.push_back(parse_override(overrides[i], int(i) + 1));
  return build_config(all, implied_state);
}

int require_two_j(const RunConfig& cfg) {
  if (!cfg.two_j) throw config_error("missing field 'j' (or 'n_atoms')");
  return *cfg.two_j;
}

std::vector<double> sample_grid(const RunConfig& cfg) {
  const int n = cfg.sample_count;
  std::vector<double> taus(static_cast<std::size_t>(n));
  if (cfg.grid == Grid::uniform) {
    for (int i = 0; i < n; ++i) taus[std::size_t(i)] = cfg.tau_max * double(i) / double(n - 1);
    return taus;
  }
  // 0 followed by log-spaced points over three decades up to tau_max.
  taus[0] = 0.0;
  for (int i = 1; i < n; ++i) {
    const double frac = n == 2 ? 1.0 : double(i - 1) / double(n - 2);
    taus[std::size_t(i)] = cfg.tau_max * std::pow(10.0, -3.0 * (1.0 - frac));
  }
  return taus;
}

}  // namespace supercat_cli

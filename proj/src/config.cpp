// Copyright 2026 The h2sim Authors
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

#include "h2sim/config.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "h2sim/errors.hpp"
#include "h2sim/io.hpp"

namespace h2sim {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "on" || value == "true" || value == "1") return true;
  if (value == "off" || value == "false" || value == "0") return false;
  throw ConfigError(key + ": expected on/off, got '" + value + "'");
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a number, got '" + value + "'");
  }
}

double parse_time(const std::string& key, const std::string& value) {
  if (value == "inf") return std::numeric_limits<double>::infinity();
  return parse_double(key, value);
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a non-negative integer, got '" + value + "'");
  }
}

int parse_int(const std::string& key, const std::string& value) {
  const std::uint64_t v = parse_u64(key, value);
  if (v > static_cast<std::uint64_t>(std::numeric_limits<int>::max()))
    throw ConfigError(key + ": value out of range");
  return static_cast<int>(v);
}

std::vector<double> parse_r_grid(const std::string& key, const std::string& value) {
  std::vector<double> grid;
  if (value.find(':') != std::string::npos) {
    double start = 0, stop = 0, step = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(value);
    if (!(in >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':')
      throw ConfigError(key + ": expected start:stop:step, got '" + value + "'");
    if (step <= 0) throw ConfigError(key + ": step must be positive");
    for (double r = start; r <= stop + 1e-9; r += step) grid.push_back(r);
  } else {
    std::istringstream in(value);
    std::string tok;
    while (std::getline(in, tok, ',')) {
      tok = trim(tok);
      if (!tok.empty()) grid.push_back(parse_double(key, tok));
    }
  }
  return grid;
}

std::string emit_r_grid(const std::vector<double>& grid) {
  std::string out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i) out += ',';
    out += format_double(grid[i]);
  }
  return out;
}

std::string emit_time(double t) {
  return std::isinf(t) ? "inf" : format_double(t);
}

struct KeyHandler {
  const char* key;
  const char* doc;
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

const std::vector<KeyHandler>& key_handlers() {
  static const std::vector<KeyHandler> handlers = {
      {"run.r_grid",
       "Bond-length grid in Angstrom: 'start:stop:step' or a comma list.",
       [](RunConfig& c, const std::string& v) { c.r_grid = parse_r_grid("run.r_grid", v); },
       [](const RunConfig& c) { return emit_r_grid(c.r_grid); }},
      {"run.shots",
       "Measurement shots per tomography setting, or 'exact'.",
       [](RunConfig& c, const std::string& v) {
         if (v == "exact") {
           c.shots = 0;
           return;
         }
         c.shots = parse_u64("run.shots", v);
         if (c.shots == 0) throw ConfigError("run.shots: must be positive or 'exact'");
       },
       [](const RunConfig& c) {
         return c.shots == 0 ? std::string("exact") : std::to_string(c.shots);
       }},
      {"run.seed", "Master seed; fully determines all stochastic output.",
       [](RunConfig& c, const std::string& v) { c.seed = parse_u64("run.seed", v); },
       [](const RunConfig& c) { return std::to_string(c.seed); }},
      {"run.output_dir", "Directory for result files (created if missing).",
       [](RunConfig& c, const std::string& v) {
         if (v.empty()) throw ConfigError("run.output_dir: must not be empty");
         c.output_dir = v;
       },
       [](const RunConfig& c) { return c.output_dir; }},
      {"noise.t1", "Amplitude-damping time in gate-duration units, or 'inf'.",
       [](RunConfig& c, const std::string& v) { c.noise.t1 = parse_time("noise.t1", v); },
       [](const RunConfig& c) { return emit_time(c.noise.t1); }},
      {"noise.t2", "Dephasing time (t2 <= 2*t1) in gate-duration units, or 'inf'.",
       [](RunConfig& c, const std::string& v) { c.noise.t2 = parse_time("noise.t2", v); },
       [](const RunConfig& c) { return emit_time(c.noise.t2); }},
      {"noise.overrotation",
       "Systematic fractional scaling applied to every gate angle.",
       [](RunConfig& c, const std::string& v) {
         c.noise.overrotation = parse_double("noise.overrotation", v);
       },
       [](const RunConfig& c) { return format_double(c.noise.overrotation); }},
      {"noise.depolarizing", "Per-gate, per-qubit depolarizing probability.",
       [](RunConfig& c, const std::string& v) {
         c.noise.depolarizing_prob = parse_double("noise.depolarizing", v);
       },
       [](const RunConfig& c) { return format_double(c.noise.depolarizing_prob); }},
      {"noise.duration_1q", "Single-qubit gate duration (time units).",
       [](RunConfig& c, const std::string& v) {
         c.noise.duration_1q = parse_double("noise.duration_1q", v);
       },
       [](const RunConfig& c) { return format_double(c.noise.duration_1q); }},
      {"noise.duration_2q", "Two-qubit gate duration (time units).",
       [](RunConfig& c, const std::string& v) {
         c.noise.duration_2q = parse_double("noise.duration_2q", v);
       },
       [](const RunConfig& c) { return format_double(c.noise.duration_2q); }},
      {"noise.cz_split",
       "Execute out-of-range CZ(phi) as two physical half-angle gates.",
       [](RunConfig& c, const std::string& v) {
         c.noise.cz_split = parse_bool("noise.cz_split", v);
       },
       [](const RunConfig& c) { return c.noise.cz_split ? "on" : "off"; }},
      {"vqe.grid_size", "Number of theta grid points over [-pi, pi).",
       [](RunConfig& c, const std::string& v) {
         c.vqe.grid_size = parse_int("vqe.grid_size", v);
       },
       [](const RunConfig& c) { return std::to_string(c.vqe.grid_size); }},
      {"vqe.gauges", "Scan all four encoding gauges and average them.",
       [](RunConfig& c, const std::string& v) { c.vqe.gauges = parse_bool("vqe.gauges", v); },
       [](const RunConfig& c) { return c.vqe.gauges ? "on" : "off"; }},
      {"vqe.z0z1_classical",
       "Replace the measured Z0 Z1 expectation by its Hartree-Fock value.",
       [](RunConfig& c, const std::string& v) {
         c.vqe.z0z1_classical = parse_bool("vqe.z0z1_classical", v);
       },
       [](const RunConfig& c) { return c.vqe.z0z1_classical ? "on" : "off"; }},
      {"pea.t0", "Evolution time unit in 1/Hartree, or 'auto'.",
       [](RunConfig& c, const std::string& v) {
         if (v == "auto") {
           c.pea.t0_auto = true;
           c.pea.t0 = 0.0;
           return;
         }
         c.pea.t0_auto = false;
         c.pea.t0 = parse_double("pea.t0", v);
         if (c.pea.t0 <= 0) throw ConfigError("pea.t0: must be positive or 'auto'");
       },
       [](const RunConfig& c) {
         return c.pea.t0_auto ? std::string("auto") : format_double(c.pea.t0);
       }},
      {"pea.rho", "Trotter step count.",
       [](RunConfig& c, const std::string& v) { c.pea.rho = parse_int("pea.rho", v); },
       [](const RunConfig& c) { return std::to_string(c.pea.rho); }},
      {"pea.bits", "Number of phase bits b (at most 24).",
       [](RunConfig& c, const std::string& v) { c.pea.bits = parse_int("pea.bits", v); },
       [](const RunConfig& c) { return std::to_string(c.pea.bits); }},
      {"pea.reps", "Majority-vote repetitions per bit.",
       [](RunConfig& c, const std::string& v) { c.pea.reps = parse_int("pea.reps", v); },
       [](const RunConfig& c) { return std::to_string(c.pea.reps); }},
      {"pea.ordering",
       "Trotter term ordering: 'optimized' or five labels like 'Z0 Z1 Z0Z1 X0X1 Y0Y1'.",
       [](RunConfig& c, const std::string& v) {
         if (v == "optimized") {
           c.pea.ordering_optimized = true;
           c.pea.ordering = kCanonicalOrdering;
           return;
         }
         c.pea.ordering_optimized = false;
         try {
           c.pea.ordering = ordering_from_string(v);
         } catch (const std::invalid_argument& e) {
           throw ConfigError(std::string("pea.ordering: ") + e.what());
         }
       },
       [](const RunConfig& c) {
         return c.pea.ordering_optimized ? std::string("optimized")
                                         : ordering_to_string(c.pea.ordering);
       }},
      {"pea.mode", "Propagator mode: 'trotter' or 'exact'.",
       [](RunConfig& c, const std::string& v) {
         if (v == "trotter")
           c.pea.mode = PeaMode::Trotter;
         else if (v == "exact")
           c.pea.mode = PeaMode::ExactPropagator;
         else
           throw ConfigError("pea.mode: expected 'trotter' or 'exact', got '" + v + "'");
       },
       [](const RunConfig& c) { return pea_mode_name(c.pea.mode); }},
  };
  return handlers;
}

void apply_key(RunConfig& c, const std::string& key, const std::string& value) {
  for (const auto& h : key_handlers()) {
    if (key == h.key) {
      h.set(c, value);
      return;
    }
  }
  throw ConfigError("unknown configuration key: " + key);
}

std::vector<std::pair<std::string, std::string>> parse_ini(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> entries;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config line " + std::to_string(line_no) + ": malformed section");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    entries.emplace_back(section.empty() ? key : section + "." + key, value);
  }
  return entries;
}

}  // namespace

RunConfig RunConfig::defaults() {
  RunConfig c;
  for (int k = 0; k <= 51; ++k) c.r_grid.push_back(0.30 + 0.05 * k);
  return c;
}

void RunConfig::validate() const {
  if (r_grid.empty()) throw ConfigError("run.r_grid: must not be empty");
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    if (!(r_grid[i] > 0)) throw ConfigError("run.r_grid: bond lengths must be positive");
    if (i && !(r_grid[i] > r_grid[i - 1]))
      throw ConfigError("run.r_grid: values must be strictly increasing");
  }
  try {
    noise.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("noise: ") + e.what());
  }
  if (vqe.grid_size < 2) throw ConfigError("vqe.grid_size: need at least 2 points");
  if (pea.rho < 1) throw ConfigError("pea.rho: must be at least 1");
  if (pea.bits < 1 || pea.bits > 24) throw ConfigError("pea.bits: must lie in [1, 24]");
  if (pea.reps < 1) throw ConfigError("pea.reps: must be at least 1");
  if (!pea.t0_auto && pea.t0 <= 0) throw ConfigError("pea.t0: must be positive or 'auto'");
  if (output_dir.empty()) throw ConfigError("run.output_dir: must not be empty");
}

RunConfig load_config(const std::optional<std::string>& config_path,
                      const std::vector<std::string>& overrides) {
  RunConfig c = RunConfig::defaults();
  if (config_path) {
    const std::string text = read_file(*config_path);
    for (const auto& [key, value] : parse_ini(text)) apply_key(c, key, value);
  }
  for (const auto& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw ConfigError("override must look like key=value, got '" + kv + "'");
    apply_key(c, trim(kv.substr(0, eq)), trim(kv.substr(eq + 1)));
  }
  c.validate();
  return c;
}

std::string config_to_text(const RunConfig& c) {
  std::string out;
  std::string section;
  for (const auto& h : key_handlers()) {
    const std::string key = h.key;
    const auto dot = key.find('.');
    const std::string sec = key.substr(0, dot);
    if (sec != section) {
      if (!out.empty()) out += '\n';
      out += "[" + sec + "]\n";
      section = sec;
    }
    out += key.substr(dot + 1) + " = " + h.get(c) + "\n";
  }
  return out;
}

std::string config_reference_page() {
  RunConfig defaults = RunConfig::defaults();
  std::string out = "h2sim configuration reference\n"
                    "=============================\n\n"
                    "Config files use INI sections; keys below are shown as\n"
                    "section.key and can also be set with --set key=value.\n\n";
  for (const auto& h : key_handlers()) {
    out += h.key;
    out += "\n    ";
    out += h.doc;
    out += "\n    default: ";
    out += h.get(defaults);
    out += "\n\n";
  }
  return out;
}

}  // namespace h2sim

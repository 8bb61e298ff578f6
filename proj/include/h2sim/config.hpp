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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "h2sim/pea.hpp"
#include "h2sim/simulator.hpp"

namespace h2sim {

struct VqeConfig {
  int grid_size = 1000;
  bool gauges = true;
  bool z0z1_classical = false;
};

struct PeaRunConfig {
  bool t0_auto = true;
  double t0 = 0.0;
  int rho = 1;
  int bits = 10;
  int reps = 1000;
  bool ordering_optimized = true;
  TermOrdering ordering = kCanonicalOrdering;
  PeaMode mode = PeaMode::Trotter;
};

// Full run configuration. The seed determines every stochastic output;
// reruns with an identical configuration produce byte-identical CSV bodies.
struct RunConfig {
  std::vector<double> r_grid;  // Angstrom, strictly increasing
  std::uint64_t shots = 0;     // 0 = exact expectation values
  NoiseModel noise;
  VqeConfig vqe;
  PeaRunConfig pea;
  std::uint64_t seed = 1;
  std::string output_dir = "out";

  static RunConfig defaults();
  // Throws ConfigError naming the offending field.
  void validate() const;
};

// Defaults, overlaid with an optional INI-style config file (sections
// [run], [noise], [vqe], [pea]) and then key=value overrides using dotted
// keys, e.g. "noise.overrotation=0.05". Unknown keys are hard errors.
RunConfig load_config(const std::optional<std::string>& config_path,
                      const std::vector<std::string>& overrides);

// Canonical serialization; parse(emit(c)) reproduces c exactly, and the
// manifest hashes this text.
std::string config_to_text(const RunConfig& c);

// Generated reference page documenting every key and its default.
std::string config_reference_page();

}  // namespace h2sim

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

#include <functional>
#include <string>

#include "h2sim/config.hpp"

namespace h2sim {

inline constexpr const char* kVersion = "1.0.0";

// Subcommand drivers; each writes its result files plus a manifest into
// config.output_dir and throws on failure.
void run_integrals(const RunConfig& config);
void run_exact_curve(const RunConfig& config);
void run_vqe_scan(const RunConfig& config);
void run_pea(const RunConfig& config);
void run_trotter_study(const RunConfig& config);
void run_noise_study(const RunConfig& config);

// Runs a named subcommand, mapping exceptions to exit codes:
// 0 success, 1 configuration error, 2 I/O error, 3 numerical guard.
int dispatch_command(const std::string& command, const RunConfig& config);

// Index-parallel map over [0, n); thread count is capped by the
// H2SIM_THREADS environment variable. Results must be written into
// caller-owned slots so output never depends on scheduling.
void parallel_for_index(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace h2sim

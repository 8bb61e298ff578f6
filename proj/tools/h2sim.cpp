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

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "h2sim/config.hpp"
#include "h2sim/errors.hpp"
#include "h2sim/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"h2sim: molecular hydrogen energy surfaces via simulated "
               "variational and phase-estimation pipelines"};
  app.require_subcommand(1);
  app.set_version_flag("--version", h2sim::kVersion);

  std::string config_path;
  std::vector<std::string> overrides;
  std::string output_dir;
  app.add_option("--config", config_path, "Path to an INI configuration file")
      ->check(CLI::ExistingFile);
  app.add_option("--set", overrides,
                 "Override a configuration key, e.g. --set noise.overrotation=0.05");
  app.add_option("--output-dir", output_dir, "Shorthand for --set run.output_dir=...");

  struct Sub {
    const char* name;
    const char* desc;
  };
  const std::vector<Sub> subs = {
      {"integrals", "Hamiltonian coefficient table and 4-qubit f coefficients"},
      {"exact-curve", "Exact ground-state dissociation curve by dense diagonalization"},
      {"vqe-scan", "Variational theta scan, gauge averaging, and minimum curve"},
      {"pea-run", "Iterative phase estimation energies across the bond-length grid"},
      {"trotter-study", "Trotter error versus step count and term ordering tables"},
      {"noise-study", "Energy error at the noisy-optimal versus noiseless-optimal angle"},
      {"config-reference", "Print the generated configuration reference page"},
  };
  // Global options may appear after the subcommand name.
  for (const auto& s : subs) app.add_subcommand(s.name, s.desc)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help or the error message
    return code == 0 ? 0 : 1;     // any command-line problem is a config error
  }

  const std::string command = app.get_subcommands().front()->get_name();
  if (command == "config-reference") {
    std::cout << h2sim::config_reference_page();
    return 0;
  }

  h2sim::RunConfig config;
  try {
    std::optional<std::string> path;
    if (!config_path.empty()) path = config_path;
    if (!output_dir.empty()) overrides.push_back("run.output_dir=" + output_dir);
    config = h2sim::load_config(path, overrides);
  } catch (const h2sim::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  return h2sim::dispatch_command(command, config);
}

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

#include <stdexcept>
#include <string>

namespace h2sim {

// Raised when a numerical guard trips (phase aliasing, basis underflow,
// degenerate perturbation denominator). The CLI maps this to exit code 3.
class NumericalGuard : public std::runtime_error {
 public:
  explicit NumericalGuard(const std::string& what) : std::runtime_error(what) {}
};

// Raised on invalid run configuration; the CLI maps this to exit code 1.
// The message names the offending field.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace h2sim

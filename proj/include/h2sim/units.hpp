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

namespace h2sim {

// Unit policy: distances enter the API in Angstrom, all internal work is in
// atomic units (Bohr, Hartree). This is the single place the conversion
// constant lives.
inline constexpr double kBohrPerAngstrom = 1.0 / 0.52917721;

inline constexpr double angstrom_to_bohr(double r_angstrom) {
  return r_angstrom * kBohrPerAngstrom;
}

}  // namespace h2sim

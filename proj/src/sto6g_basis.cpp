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

#include "h2sim/electronic_structure.hpp"

namespace h2sim {

// STO-6G hydrogen 1s (Hehre/Stewart/Pople least-squares fit of a Slater 1s,
// exponents scaled by the standard molecular-environment factor 1.24^2).
// Values as distributed with the major quantum chemistry packages.
const std::array<double, 6> kSto6gExponents = {
    35.52322122, 6.513143725, 1.822142904,
    0.625955266, 0.243076747, 0.100112428,
};

const std::array<double, 6> kSto6gCoefficients = {
    0.00916359628, 0.04936149294, 0.16853830490,
    0.37056279970, 0.41649152980, 0.13033408410,
};

}  // namespace h2sim

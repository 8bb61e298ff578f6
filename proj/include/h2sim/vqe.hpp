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

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "h2sim/electronic_structure.hpp"
#include "h2sim/simulator.hpp"

namespace h2sim {

// Encoding gauges: a gauge flips the value of one or both qubits in the
// Hartree-Fock input state and the signs of the affected Hamiltonian terms.
// Physical predictions are gauge-invariant.
enum class Gauge { Standard, FlipQ0, FlipQ1, FlipBoth };

inline constexpr std::array<Gauge, 4> kAllGauges = {
    Gauge::Standard, Gauge::FlipQ0, Gauge::FlipQ1, Gauge::FlipBoth};

const char* gauge_name(Gauge g);
// Sign that maps a raw expectation measured in gauge g back to the standard
// frame, for g-index 1..5 of the effective-Hamiltonian template.
double gauge_sign(Gauge g, int term_index);
// The gauge's Hartree-Fock computational basis state (qubit 0 = LSB).
std::uint64_t gauge_hf_index(Gauge g);

struct AnsatzConfig {
  double theta = 0.0;  // radians, in [-pi, pi)
  Gauge gauge = Gauge::Standard;
};

// Prepares the gauge's Hartree-Fock state and applies exp(-i theta X0 Y1),
// compiled to {Rx, Ry, Rz, CZ(pi)}. In the standard gauge the result is
// cos(theta)|01> + sin(theta)|10> up to a global phase.
Circuit build_ansatz_circuit(const AnsatzConfig& cfg);

struct TermEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

struct EnergySurfacePoint {
  double r_angstrom = 0.0;
  double theta = 0.0;
  Gauge gauge = Gauge::Standard;
  bool averaged = false;
  // Standard-frame expectations of {Z0, Z1, Z0Z1, X0X1, Y0Y1}; the stored
  // energy is exactly g0 + sum_i g[i] * terms[i-1].mean.
  std::array<TermEstimate, 5> terms{};
  double energy = 0.0;
  double std_error = 0.0;
  // Spread of per-gauge energies (diagnostic; zero for single-gauge points).
  double gauge_spread = 0.0;
};

struct EstimateOptions {
  std::uint64_t shots = 0;  // 0 means exact expectation values
  std::optional<NoiseModel> noise;
  std::uint64_t seed = 0;
  // Replace the measured Z0 Z1 expectation by its Hartree-Fock value.
  bool z0z1_classical = false;
};

// Term-wise tomography: {Z0, Z1, Z0Z1} from one Z-basis setting, X0X1 after
// Ry(pi/2) on both qubits, Y0Y1 after Rx(pi/2) on both qubits. Measurement
// (including the tomography pre-rotations) is ideal; noise acts on the state
// preparation circuit.
EnergySurfacePoint estimate_energy(const AnsatzConfig& cfg, const EffectiveHamiltonian& h,
                                   const EstimateOptions& opts);

struct ScanOptions : EstimateOptions {
  int grid_size = 1000;
};

// Uniform theta grid over [-pi, pi), spacing 2*pi/grid_size.
std::vector<EnergySurfacePoint> scan_theta(const EffectiveHamiltonian& h, double r_angstrom,
                                           Gauge gauge, const ScanOptions& opts);

// Grid argmin; ties break toward smaller theta.
const EnergySurfacePoint& find_minimum(const std::vector<EnergySurfacePoint>& scan);

// Golden-section refinement of the grid minimum in its bracketing interval.
// Exact/noiseless evaluation only.
EnergySurfacePoint refine_minimum(const EffectiveHamiltonian& h, double r_angstrom,
                                  const std::vector<EnergySurfacePoint>& scan,
                                  Gauge gauge = Gauge::Standard);

// Shot-noise refinement of the scan minimum. Every term expectation of this
// ansatz is exactly a + b cos(2 theta) + c sin(2 theta), so the per-term
// scans are fitted by linear least squares on the full grid (unbiased,
// variance reduced by the grid size) and the energy model's vertex is
// reported; ties between the two period-pi minima break toward smaller
// theta. Valid for sampled noiseless scans; coherent noise distorts the
// harmonic model, so noisy scans keep the plain grid argmin.
EnergySurfacePoint fit_harmonic_minimum(const std::vector<EnergySurfacePoint>& scan,
                                        const EffectiveHamiltonian& h);

// Local 1-D minimization from an initial guess (bracket expansion followed
// by golden-section search); used to compare starting points by cost.
struct RefineResult {
  double theta = 0.0;
  double energy = 0.0;
  int evaluations = 0;
};
RefineResult refine_from(const EffectiveHamiltonian& h, double theta_init, double tol = 1e-8);

// Per-term average of the four gauge scans (sign corrections are already
// applied inside estimate_energy, so expectations live in a common frame).
// Requires identical theta grids; throws std::invalid_argument otherwise.
std::vector<EnergySurfacePoint> gauge_average(
    const std::array<std::vector<EnergySurfacePoint>, 4>& per_gauge,
    const EffectiveHamiltonian& h);

}  // namespace h2sim

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
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "h2sim/electronic_structure.hpp"
#include "h2sim/simulator.hpp"

namespace h2sim {

// The five non-identity terms of the effective Hamiltonian; the enum order
// is the canonical (lexicographic) ordering reference.
enum class EffTerm { Z0, Z1, Z0Z1, X0X1, Y0Y1 };

using TermOrdering = std::array<EffTerm, 5>;

inline constexpr TermOrdering kCanonicalOrdering = {
    EffTerm::Z0, EffTerm::Z1, EffTerm::Z0Z1, EffTerm::X0X1, EffTerm::Y0Y1};

const char* term_name(EffTerm t);
std::string ordering_to_string(const TermOrdering& ordering);
TermOrdering ordering_from_string(const std::string& names);
// Index into EffectiveHamiltonian::g (1..5).
int term_g_index(EffTerm t);

// The phase-estimation circuits use three qubits: register {0, 1} plus this
// ancilla.
inline constexpr int kAncilla = 2;

struct TrotterSpec {
  double t0 = 0.0;  // evolution time unit, Hartree^-1
  int rho = 1;      // Trotter step count
  TermOrdering ordering = kCanonicalOrdering;
  int bits = 10;
  int reps_per_bit = 1000;

  // rho >= 1, bits in [1, 24], t0 > 0, reps >= 1, ordering a permutation.
  void validate() const;
};

struct PEAOutcome {
  std::vector<int> bits;          // j_0 (most significant) first
  std::vector<double> p1_per_bit; // ancilla |1> probability per bit
  double energy = 0.0;            // Hartree
  double hf_overlap_sq = 0.0;     // |<ground|HF>|^2 of the supplied Hamiltonian
};

enum class PeaMode { ExactPropagator, Trotter };
const char* pea_mode_name(PeaMode mode);

struct PeaOptions {
  PeaMode mode = PeaMode::Trotter;
  std::optional<NoiseModel> noise;  // applied in Trotter mode only
  bool z0z1_classical = false;
};

// ---- gate decompositions -------------------------------------------------

// CNOT as one CZ(pi) with a -Y_{pi/2} / Y_{pi/2} pair on the target.
Circuit cnot_via_cz(int control, int target, int n_qubits);
// SWAP as three CZ-based CNOTs.
Circuit swap_via_cz(int a, int b, int n_qubits);

// 3-qubit circuit equal to |0><0|_a (+) I + |1><1|_a (+) exp(-i angle term)
// up to a global phase; the ancilla z rotation keeps the relative ancilla
// phase exact. Z1 routes through SWAPs, the two-qubit terms through a
// parity CNOT; X0X1 / Y0Y1 add the Ry / Rx basis changes.
Circuit controlled_term(EffTerm term, double angle);

// Controlled U_Trot(t): controlled_term circuits with angles g * t / rho in
// spec.ordering, repeated rho times. The identity coefficient (plus the
// Z0Z1 contribution when it is substituted classically) becomes an ancilla
// Rz, i.e. a controlled global phase.
Circuit trotter_circuit(const EffectiveHamiltonian& h, double t, const TrotterSpec& spec,
                        bool z0z1_classical = false);

// Register-only (4x4) Trotter product, identity phase included.
Eigen::Matrix4cd trotter_unitary(const EffectiveHamiltonian& h, double t, int rho,
                                 const TermOrdering& ordering);

// ---- iterative phase estimation -------------------------------------------

// Kitaev-style per-bit estimation with classical phase kickback. Bits are
// measured most-significant first: bit k uses the evolution U(2^k t0) and a
// kickback that cancels the phase of the previously determined bits
// (pi * sum_{l<k} j_l 2^{k-l-1}, reduced mod 2pi). In Trotter mode U(2^k t0)
// is the fixed U_Trot(t0) block applied 2^k times, so the procedure
// digitizes the eigenphase of that block and the estimate differs from the
// exact energy only through the single-block Trotter error. Each bit
// decision thresholds the ancilla |1> probability at 1/2 (the
// infinite-repetition limit of the majority vote), so noiseless outcomes
// are deterministic and independent of reps_per_bit, and in exact mode the
// b-bit truncation bound |E - E_b| <= pi/(t0 2^b) holds.
PEAOutcome iterative_pea(const EffectiveHamiltonian& h, const TrotterSpec& spec,
                         const PeaOptions& opts);

// E = -(pi/t0) * sum_k j_k / 2^{k+1}.
double energy_from_bits(const std::vector<int>& bits, double t0);

// ---- Trotter error analysis -------------------------------------------------

// |ground eigenphase of U_Trot(t0, rho) - (-E0 t0)|, angles compared mod 2pi.
// The U_Trot eigenvector is matched to the true ground state by overlap.
double ground_eigenphase_error(const EffectiveHamiltonian& h, double t0, int rho,
                               const TermOrdering& ordering);

// Spectral-norm error ||U_Trot - exp(-i H t)||.
double trotter_opnorm_error(const EffectiveHamiltonian& h, double t, int rho,
                            const TermOrdering& ordering);

struct OrderingResult {
  TermOrdering ordering;
  double eigenphase_error = 0.0;
};

// Brute force over all 120 permutations at rho = 1; ties break to the
// lexicographically first permutation.
OrderingResult optimize_ordering(const EffectiveHamiltonian& h, double t0);

// Default evolution time: 0.95 * pi over the coefficient 1-norm of h, a
// rigorous bound on |E0| that keeps the ground phase inside (-pi, 0] with
// margin at every geometry.
double default_t0(const EffectiveHamiltonian& h);

}  // namespace h2sim

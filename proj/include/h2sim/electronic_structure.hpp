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
#include <vector>

#include <Eigen/Dense>

#include "h2sim/pauli.hpp"
#include "h2sim/simulator.hpp"

namespace h2sim {

// STO-6G hydrogen 1s: six primitive exponents (Bohr^-2) and contraction
// coefficients, standard published fit with the molecular scale factor 1.24
// already applied to the exponents. Configuration data, defined in
// sto6g_basis.cpp and validated by the self-overlap normalization invariant.
extern const std::array<double, 6> kSto6gExponents;
extern const std::array<double, 6> kSto6gCoefficients;

// A contracted s-type Gaussian. Construction renormalizes the contraction so
// the self-overlap is exactly 1.
struct GaussianBasisFunction {
  Eigen::Vector3d center;               // Bohr
  std::array<double, 6> exponents{};    // Bohr^-2
  std::array<double, 6> coefficients{}; // includes primitive norms

  static GaussianBasisFunction sto6g_1s(const Eigen::Vector3d& center_bohr);
  double self_overlap() const;
};

double overlap(const GaussianBasisFunction& a, const GaussianBasisFunction& b);
double kinetic(const GaussianBasisFunction& a, const GaussianBasisFunction& b);
// Attraction to a unit point charge at c (negative by convention).
double nuclear_attraction(const GaussianBasisFunction& a, const GaussianBasisFunction& b,
                          const Eigen::Vector3d& c_bohr);
// Chemists' notation (ab|cd): a,b share electron 1; c,d share electron 2.
double electron_repulsion(const GaussianBasisFunction& a, const GaussianBasisFunction& b,
                          const GaussianBasisFunction& c, const GaussianBasisFunction& d);

// Boys function F0; x >= 0.
double boys_f0(double x);

// Integrals over the symmetry-adapted molecular orbitals
// sigma_g = (A+B)/sqrt(2+2S), sigma_u = (A-B)/sqrt(2-2S) of H2, in Hartree.
//
// h_pqrs follows the two-electron convention
//   h_pqrs = (integral) phi_p(1) phi_q(2) phi_s(1) phi_r(2) / r12,
// i.e. h_pqrs == (ps|qr) in chemists' notation over real orbitals.
struct MolecularIntegrals {
  double r_angstrom = 0.0;
  double r_bohr = 0.0;     // bond length, stored in atomic units
  double overlap_ab = 0.0; // contracted AO overlap S
  Eigen::Matrix2d h_pq;    // one-electron core Hamiltonian, MO basis
  double h_pqrs[2][2][2][2] = {};
  double e_nuc = 0.0;
  std::array<double, 2> orbital_energies{}; // Fock eigenvalues (eps_g, eps_u)

  double chem(int p, int q, int r, int s) const { return h_pqrs[p][r][s][q]; }
};

// Throws std::invalid_argument for r <= 0 and NumericalGuard when 2-2S
// degenerates (orbitals ill-defined).
MolecularIntegrals compute_integrals(double r_angstrom);

// ---- second quantization ----------------------------------------------

struct LadderOp {
  int orbital = 0;
  bool create = false;
};

struct FermionTerm {
  std::vector<LadderOp> ops; // creations first, then annihilations
  double coefficient = 0.0;
};

// Sum of ladder-operator strings in normal-ordered canonical form: creation
// indices strictly descending, annihilation indices strictly ascending, like
// terms merged. Input strings must already have creations left of
// annihilations (reordering within a block only costs a sign).
class FermionOperator {
 public:
  FermionOperator() = default;
  explicit FermionOperator(const std::vector<FermionTerm>& terms);

  void add_term(const FermionTerm& term);
  const std::vector<FermionTerm>& terms() const { return terms_; }
  int n_modes() const;

 private:
  void canonicalize();
  std::vector<FermionTerm> terms_;
};

// Four-spin-orbital Hamiltonian, spin-orbitals interleaved as
// (g up, g down, u up, u down) = modes 0..3, including e_nuc as the
// identity term. Particle-number conserving by construction.
FermionOperator second_quantized(const MolecularIntegrals& ints);

// Fermion-to-qubit mappings; spectra of the two results are identical.
QubitOperator jordan_wigner(const FermionOperator& op, int n_modes = 4);
QubitOperator bravyi_kitaev(const FermionOperator& op, int n_modes = 4);

// Bravyi-Kitaev encoding of an occupation bit mask (mode i occupied when
// bit i is set) into a qubit basis-state index.
std::uint64_t bk_encode_occupation(std::uint64_t occupation_mask, int n_modes);

// Occupation mask of the H2 Hartree-Fock determinant (modes 0 and 1).
inline constexpr std::uint64_t kHartreeFockOccupation = 0b0011;

// ---- effective two-qubit Hamiltonian -----------------------------------

// g0..g5 multiply {I, Z0, Z1, Z0Z1, X0X1, Y0Y1}; for H2 g4 == g5.
struct EffectiveHamiltonian {
  std::array<double, 6> g{};

  QubitOperator to_operator() const;
  // Throws std::invalid_argument when op has terms outside the template.
  static EffectiveHamiltonian from_operator(const QubitOperator& op);
  double coefficient_one_norm() const;
};

// Substitutes the stabilizer eigenvalues of qubits 1 and 3 (evaluated on the
// Bravyi-Kitaev encoded Hartree-Fock state) and relabels qubit 2 -> 1.
// Throws std::invalid_argument if op4 has X or Y on a stabilized qubit.
QubitOperator reduce_to_two_qubits(const QubitOperator& op4);

// The f coefficients of the four-qubit encoded Hamiltonian, in the order
// {I, Z0, Z1, Z2, Z0Z2, Z1Z3, X0Z1X2, Z0Z1Z2}.
std::array<double, 8> extract_f_coefficients(const QubitOperator& op4);

// Full pipeline R -> effective two-qubit Hamiltonian.
EffectiveHamiltonian effective_hamiltonian(double r_angstrom);

// ---- diagonalization oracle --------------------------------------------

struct EigenDecomposition {
  std::vector<double> energies;   // ascending
  Eigen::MatrixXcd states;        // columns are eigenvectors
  std::vector<Complex> overlaps;  // a_n = <n|phi> with the supplied state
};

// Dense full-spectrum diagonalization (dimension <= 16) with overlaps
// against the supplied reference state. Throws on non-Hermitian input.
EigenDecomposition exact_diagonalize(const QubitOperator& op, const StateVector& hf_state);

// MP2 doubles amplitude used as the variational starting guess; the singles
// amplitude vanishes identically (the Fock matrix is diagonal here, which
// compute_integrals guards to 1e-8). Throws NumericalGuard when the orbital
// energy denominator degenerates (dissociation-limit breakdown).
double mp2_initial_amplitude(const MolecularIntegrals& ints);

// (h_ijba - h_ijab) / (eps_i + eps_j - eps_a - eps_b), guarded against a
// degenerate denominator.
double mp2_amplitude_formula(double h_ijba, double h_ijab, double eps_i, double eps_j,
                             double eps_a, double eps_b);

// Paper-convention spin-orbital two-electron element h_PQRS with the
// interleaved spin layout (used by the MP2 formula and tests).
double spin_orbital_h2(const MolecularIntegrals& ints, int p, int q, int r, int s);

}  // namespace h2sim

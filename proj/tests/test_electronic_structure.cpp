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

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

#include <doctest.h>

#include "h2sim/errors.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace h2sim;

namespace {

constexpr double kEquilibrium = 0.7414;

std::vector<double> coarse_grid() {
  std::vector<double> grid;
  for (int k = 0; k <= 51; ++k) grid.push_back(0.30 + 0.05 * k);
  return grid;
}

constexpr std::array<double, 5> kFiveBondLengths = {0.30, 0.75, 1.40, 2.10, 2.85};

}  // namespace

TEST_CASE("basis functions are normalized") {
  const auto f = GaussianBasisFunction::sto6g_1s({0.0, 0.0, 0.0});
  CHECK(f.self_overlap() == doctest::Approx(1.0).epsilon(1e-10));
  const auto g = GaussianBasisFunction::sto6g_1s({0.3, -0.2, 1.1});
  CHECK(overlap(g, g) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("nuclear repulsion at the reference geometry") {
  const auto ints = compute_integrals(kEquilibrium);
  CHECK(ints.e_nuc == doctest::Approx(0.71375).epsilon(2e-5));
  CHECK(ints.r_bohr == doctest::Approx(1.40105).epsilon(2e-5));
}

TEST_CASE("core Hamiltonian is g/u diagonal") {
  for (double r : {0.4, kEquilibrium, 1.8}) {
    const auto ints = compute_integrals(r);
    CHECK(std::abs(ints.h_pq(0, 1)) < 1e-10);
    CHECK(std::abs(ints.h_pq(1, 0)) < 1e-10);
    CHECK(ints.orbital_energies[0] < ints.orbital_energies[1]);
  }
}

TEST_CASE("integral guards") {
  CHECK_THROWS_AS(compute_integrals(0.0), std::invalid_argument);
  CHECK_THROWS_AS(compute_integrals(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(compute_integrals(1e-7), NumericalGuard);  // 2-2S underflow
}

TEST_CASE("integrals match the quadrature oracle") {
  // Both electron integrals and the one-electron core against an
  // independent route that never evaluates the Boys function.
  const auto ints = compute_integrals(kEquilibrium);
  const auto quad = test::integrals_quad(kEquilibrium);
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q)
      CHECK(ints.h_pq(p, q) == doctest::Approx(quad.h_pq(p, q)).epsilon(1e-6));
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q)
      for (int r = 0; r < 2; ++r)
        for (int s = 0; s < 2; ++s)
          CHECK(ints.h_pqrs[p][q][r][s] ==
                doctest::Approx(quad.h_pqrs[p][q][r][s]).epsilon(1e-6));
}

TEST_CASE("two-electron tensor has the real-orbital eightfold symmetry") {
  const auto ints = compute_integrals(1.1);
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q)
      for (int r = 0; r < 2; ++r)
        for (int s = 0; s < 2; ++s) {
          const double v = ints.chem(p, q, r, s);
          CHECK(std::abs(v - ints.chem(q, p, r, s)) < 1e-12);
          CHECK(std::abs(v - ints.chem(p, q, s, r)) < 1e-12);
          CHECK(std::abs(v - ints.chem(q, p, s, r)) < 1e-12);
          CHECK(std::abs(v - ints.chem(r, s, p, q)) < 1e-12);
          CHECK(std::abs(v - ints.chem(s, r, p, q)) < 1e-12);
          CHECK(std::abs(v - ints.chem(r, s, q, p)) < 1e-12);
          CHECK(std::abs(v - ints.chem(s, r, q, p)) < 1e-12);
        }
}

TEST_CASE("second-quantized Hamiltonian commutes with the number operator") {
  const auto ints = compute_integrals(kEquilibrium);
  const QubitOperator h = jordan_wigner(second_quantized(ints));

  FermionOperator number;
  for (int p = 0; p < 4; ++p) number.add_term({{{p, true}, {p, false}}, 1.0});
  const QubitOperator n_op = jordan_wigner(number);

  const Eigen::MatrixXcd hd = to_dense_matrix(h, 4);
  const Eigen::MatrixXcd nd = to_dense_matrix(n_op, 4);
  CHECK(test::max_abs(hd * nd - nd * hd) < 1e-10);
  CHECK(test::max_abs(hd - hd.adjoint()) < 1e-12);
}

TEST_CASE("ground energy matches the direct-CI oracle") {
  const auto ints = compute_integrals(kEquilibrium);
  const double fci = test::fci_ground_energy(ints);

  const Eigen::MatrixXcd dense = to_dense_matrix(jordan_wigner(second_quantized(ints)), 4);
  std::vector<std::uint64_t> sector;
  for (std::uint64_t d = 0; d < 16; ++d)
    if (std::popcount(d) == 2) sector.push_back(d);
  CHECK(test::sector_minimum(dense, sector) == doctest::Approx(fci).epsilon(1e-10));
}

TEST_CASE("number operator maps to (I - Z0)/2 under both transforms") {
  FermionOperator n0;
  n0.add_term({{{0, true}, {0, false}}, 1.0});
  for (const QubitOperator& op : {jordan_wigner(n0), bravyi_kitaev(n0)}) {
    REQUIRE(op.size() == 2);
    CHECK(std::abs(op.coefficient_of({}) - Complex(0.5)) < 1e-14);
    CHECK(std::abs(op.coefficient_of({{0, PauliLetter::Z}}) - Complex(-0.5)) < 1e-14);
  }
}

TEST_CASE("transforms preserve the canonical anticommutators") {
  // {a_p, a_q^dag} = delta_pq and {a_p, a_q} = 0 on the dense forms.
  auto annihilate = [](int p) {
    FermionOperator f;
    f.add_term({{{p, false}}, 1.0});
    return f;
  };
  auto create = [](int p) {
    FermionOperator f;
    f.add_term({{{p, true}}, 1.0});
    return f;
  };
  for (auto* transform : {&jordan_wigner, &bravyi_kitaev}) {
    for (int p = 0; p < 4; ++p) {
      for (int q = 0; q < 4; ++q) {
        const Eigen::MatrixXcd ap = to_dense_matrix((*transform)(annihilate(p), 4), 4);
        const Eigen::MatrixXcd aqd = to_dense_matrix((*transform)(create(q), 4), 4);
        const Eigen::MatrixXcd aq = to_dense_matrix((*transform)(annihilate(q), 4), 4);
        const Eigen::MatrixXcd anti = ap * aqd + aqd * ap;
        Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(16, 16);
        if (p == q) expected = Eigen::MatrixXcd::Identity(16, 16);
        CHECK(test::max_abs(anti - expected) < 1e-12);
        CHECK(test::max_abs(ap * aq + aq * ap) < 1e-12);
      }
    }
  }
}

TEST_CASE("JW and BK spectra agree across bond lengths") {
  for (double r : kFiveBondLengths) {
    const auto ints = compute_integrals(r);
    const FermionOperator fermi = second_quantized(ints);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> jw(to_dense_matrix(jordan_wigner(fermi), 4));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> bk(to_dense_matrix(bravyi_kitaev(fermi), 4));
    CHECK((jw.eigenvalues() - bk.eigenvalues()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("encoded Hamiltonian has the fifteen-term structure") {
  const auto op4 = bravyi_kitaev(second_quantized(compute_integrals(kEquilibrium)));
  REQUIRE(op4.size() == 15);
  CHECK(op4.max_imag_coefficient() < 1e-12);

  using L = PauliLetter;
  // Off-diagonal action only on tensor factors 0 and 2.
  for (const auto& term : op4.terms()) {
    for (const auto& [q, l] : term.factors) {
      if (l != L::Z) CHECK((q == 0 || q == 2));
    }
  }

  // Coefficient duplications across the fifteen terms.
  auto c = [&](std::map<int, L> f) { return op4.coefficient_of(f).real(); };
  CHECK(c({{0, L::Z}}) == doctest::Approx(c({{0, L::Z}, {1, L::Z}})).epsilon(1e-12));
  CHECK(c({{2, L::Z}}) ==
        doctest::Approx(c({{1, L::Z}, {2, L::Z}, {3, L::Z}})).epsilon(1e-12));
  CHECK(c({{0, L::Z}, {2, L::Z}}) ==
        doctest::Approx(c({{0, L::Z}, {2, L::Z}, {3, L::Z}})).epsilon(1e-12));
  const double f6 = c({{0, L::X}, {1, L::Z}, {2, L::X}});
  CHECK(c({{0, L::Y}, {1, L::Z}, {2, L::Y}}) == doctest::Approx(f6).epsilon(1e-12));
  CHECK(c({{0, L::X}, {1, L::Z}, {2, L::X}, {3, L::Z}}) == doctest::Approx(f6).epsilon(1e-12));
  CHECK(c({{0, L::Y}, {1, L::Z}, {2, L::Y}, {3, L::Z}}) == doctest::Approx(f6).epsilon(1e-12));
  CHECK(c({{0, L::Z}, {1, L::Z}, {2, L::Z}}) ==
        doctest::Approx(c({{0, L::Z}, {1, L::Z}, {2, L::Z}, {3, L::Z}})).epsilon(1e-12));
}

TEST_CASE("Bravyi-Kitaev encoding of the Hartree-Fock determinant") {
  CHECK(bk_encode_occupation(kHartreeFockOccupation, 4) == 1);  // |0001>
  CHECK(bk_encode_occupation(0b0001, 4) == 0b1011);
  CHECK(bk_encode_occupation(0b0000, 4) == 0);
  CHECK(bk_encode_occupation(0b1111, 4) == 0b0101);
}

TEST_CASE("reduction yields the two-qubit template with g4 == g5") {
  for (double r : kFiveBondLengths) {
    const auto op4 = bravyi_kitaev(second_quantized(compute_integrals(r)));
    const QubitOperator op2 = reduce_to_two_qubits(op4);
    const auto h = EffectiveHamiltonian::from_operator(op2);  // throws off-template
    CHECK(h.g[4] == doctest::Approx(h.g[5]).epsilon(1e-10));

    // Spectrum containment: every reduced eigenvalue appears in the
    // four-qubit spectrum.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> big(to_dense_matrix(op4, 4));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> small(to_dense_matrix(op2, 2));
    for (int i = 0; i < 4; ++i) {
      double best = 1e9;
      for (int j = 0; j < 16; ++j)
        best = std::min(best, std::abs(small.eigenvalues()(i) - big.eigenvalues()(j)));
      CHECK(best < 1e-10);
    }
  }
}

TEST_CASE("reduced ground energy equals the particle-sector minimum") {
  for (double r : {0.5, kEquilibrium, 2.0}) {
    const auto op4 = bravyi_kitaev(second_quantized(compute_integrals(r)));
    const Eigen::MatrixXcd dense = to_dense_matrix(op4, 4);
    std::vector<std::uint64_t> sector;
    for (std::uint64_t occ = 0; occ < 16; ++occ)
      if (std::popcount(occ) == 2) sector.push_back(bk_encode_occupation(occ, 4));
    std::sort(sector.begin(), sector.end());

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> small(
        to_dense_matrix(reduce_to_two_qubits(op4), 2));
    CHECK(small.eigenvalues()(0) ==
          doctest::Approx(test::sector_minimum(dense, sector)).epsilon(1e-10));
  }
}

TEST_CASE("reduction rejects operators that do not stabilize qubits 1 and 3") {
  QubitOperator bad;
  bad.add_term({{1, PauliLetter::X}}, 1.0);
  CHECK_THROWS_AS(reduce_to_two_qubits(bad), std::invalid_argument);
}

TEST_CASE("template validation rejects stray terms") {
  QubitOperator op;
  op.add_term({{0, PauliLetter::X}}, 0.5);
  CHECK_THROWS_AS(EffectiveHamiltonian::from_operator(op), std::invalid_argument);
}

TEST_CASE("exact diagonalization produces sorted energies and unit overlaps") {
  const auto h = effective_hamiltonian(kEquilibrium);
  const StateVector hf = StateVector::basis_state(2, 1);
  const auto eig = exact_diagonalize(h.to_operator(), hf);
  REQUIRE(eig.energies.size() == 4);
  CHECK(std::is_sorted(eig.energies.begin(), eig.energies.end()));
  double total = 0.0;
  for (const auto& a : eig.overlaps) total += std::norm(a);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(test::max_abs(eig.states.adjoint() * eig.states -
                      Eigen::MatrixXcd::Identity(4, 4)) < 1e-10);

  QubitOperator ident = QubitOperator::identity(2.5);
  const auto flat = exact_diagonalize(ident, hf);
  for (double e : flat.energies) CHECK(e == doctest::Approx(2.5));

  QubitOperator skew;
  skew.add_term({{0, PauliLetter::X}}, Complex(0, 1));
  CHECK_THROWS_AS(exact_diagonalize(skew, hf), std::invalid_argument);
}

TEST_CASE("Hartree-Fock overlap dominates across the full grid") {
  for (double r : coarse_grid()) {
    const auto h = effective_hamiltonian(r);
    const auto eig = exact_diagonalize(h.to_operator(), StateVector::basis_state(2, 1));
    CHECK(std::norm(eig.overlaps[0]) > 0.5);
  }
}

TEST_CASE("exact curve has its minimum near the equilibrium geometry") {
  const auto grid = coarse_grid();
  std::vector<double> energies;
  for (double r : grid) {
    const auto h = effective_hamiltonian(r);
    const auto eig = exact_diagonalize(h.to_operator(), StateVector::basis_state(2, 1));
    energies.push_back(eig.energies[0]);
  }
  const auto it = std::min_element(energies.begin(), energies.end());
  const double argmin = grid[static_cast<std::size_t>(it - energies.begin())];
  CHECK(argmin >= 0.70);
  CHECK(argmin <= 0.75);
  // Monotone rise toward dissociation past the minimum.
  for (auto i = static_cast<std::size_t>(it - energies.begin()); i + 1 < grid.size(); ++i)
    CHECK(energies[i + 1] > energies[i]);
}

TEST_CASE("variational chain: HF energy upper-bounds the ground energy") {
  const StateVector hf = StateVector::basis_state(2, 1);
  for (double r : coarse_grid()) {
    const auto h = effective_hamiltonian(r);
    const auto eig = exact_diagonalize(h.to_operator(), hf);
    CHECK(expectation(h.to_operator(), hf) >= eig.energies[0] - 1e-12);
  }
}

TEST_CASE("Hamiltonian coefficients stay real through the pipeline") {
  for (double r : kFiveBondLengths) {
    const auto op4 = bravyi_kitaev(second_quantized(compute_integrals(r)));
    CHECK(op4.max_imag_coefficient() < 1e-12);
    CHECK(reduce_to_two_qubits(op4).max_imag_coefficient() < 1e-12);
  }
}

TEST_CASE("MP2 amplitude formula") {
  // Direct arithmetic on stated inputs.
  CHECK(mp2_amplitude_formula(0.2, 0.1, -0.6, -0.6, 0.7, 0.7) ==
        doctest::Approx(0.1 / -2.6).epsilon(1e-12));

  // The spin structure kills h_ijab for the interleaved layout.
  MolecularIntegrals ints{};
  ints.h_pqrs[0][0][1][1] = 0.2;
  ints.orbital_energies = {-0.6, 0.7};
  CHECK(spin_orbital_h2(ints, 0, 1, 3, 2) == doctest::Approx(0.2));
  CHECK(spin_orbital_h2(ints, 0, 1, 2, 3) == doctest::Approx(0.0));
  CHECK(mp2_initial_amplitude(ints) == doctest::Approx(0.2 / -2.6).epsilon(1e-12));

  MolecularIntegrals degenerate{};
  degenerate.orbital_energies = {0.5, 0.5};
  CHECK_THROWS_AS(mp2_initial_amplitude(degenerate), NumericalGuard);
}

TEST_CASE("MP2 amplitude is negative and finite near equilibrium") {
  const auto ints = compute_integrals(kEquilibrium);
  const double theta = mp2_initial_amplitude(ints);
  CHECK(theta < 0.0);
  CHECK(std::abs(theta) < 0.5);
}

TEST_CASE("fermion canonicalization is sign-correct and nilpotent") {
  FermionOperator f;
  // a2^dag a3^dag = -a3^dag a2^dag.
  f.add_term({{{2, true}, {3, true}}, 1.0});
  f.add_term({{{3, true}, {2, true}}, 1.0});
  CHECK(f.terms().empty());

  FermionOperator g;
  g.add_term({{{1, true}, {1, true}}, 1.0});  // nilpotent
  CHECK(g.terms().empty());

  FermionOperator mixed;
  CHECK_THROWS_AS(mixed.add_term({{{0, false}, {1, true}}, 1.0}), std::invalid_argument);
}

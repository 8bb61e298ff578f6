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

#include "h2sim/pea.hpp"

#include <cmath>
#include <numbers>

#include <doctest.h>

#include "h2sim/errors.hpp"
#include "h2sim/rng.hpp"
#include "test_util.hpp"

using namespace h2sim;
using std::numbers::pi;

namespace {

constexpr Complex kI{0.0, 1.0};

Eigen::MatrixXcd dense_cnot(int control, int target, int n) {
  const std::uint64_t dim = 1ULL << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::uint64_t i = 0; i < dim; ++i) {
    std::uint64_t j = i;
    if (i >> control & 1ULL) j ^= 1ULL << target;
    m(j, i) = 1.0;
  }
  return m;
}

Eigen::MatrixXcd dense_swap(int a, int b, int n) {
  const std::uint64_t dim = 1ULL << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::uint64_t i = 0; i < dim; ++i) {
    std::uint64_t j = i & ~((1ULL << a) | (1ULL << b));
    if (i >> a & 1ULL) j |= 1ULL << b;
    if (i >> b & 1ULL) j |= 1ULL << a;
    m(j, i) = 1.0;
  }
  return m;
}

// Reference controlled-exponential: |0><0| (+) I + |1><1| (+) exp(-i angle P)
// with the ancilla as qubit 2.
Eigen::MatrixXcd dense_controlled_exponential(EffTerm term, double angle) {
  using L = PauliLetter;
  QubitOperator p;
  switch (term) {
    case EffTerm::Z0: p.add_term({{0, L::Z}}, 1.0); break;
    case EffTerm::Z1: p.add_term({{1, L::Z}}, 1.0); break;
    case EffTerm::Z0Z1: p.add_term({{0, L::Z}, {1, L::Z}}, 1.0); break;
    case EffTerm::X0X1: p.add_term({{0, L::X}, {1, L::X}}, 1.0); break;
    case EffTerm::Y0Y1: p.add_term({{0, L::Y}, {1, L::Y}}, 1.0); break;
  }
  const Eigen::MatrixXcd pd = to_dense_matrix(p, 2);
  const Eigen::MatrixXcd u =
      std::cos(angle) * Eigen::MatrixXcd::Identity(4, 4) - kI * std::sin(angle) * pd;
  Eigen::MatrixXcd cu = Eigen::MatrixXcd::Identity(8, 8);
  cu.block<4, 4>(4, 4) = u;
  return cu;
}

EffectiveHamiltonian equilibrium_hamiltonian() {
  static const EffectiveHamiltonian h = effective_hamiltonian(0.7414);
  return h;
}

EffectiveHamiltonian diagonal_hamiltonian() {
  EffectiveHamiltonian h;
  h.g = {0.1, -0.4, 0.25, 0.3, 0.0, 0.0};
  return h;
}

double ground_energy(const EffectiveHamiltonian& h) {
  const auto eig = exact_diagonalize(h.to_operator(), StateVector::basis_state(2, 1));
  return eig.energies[0];
}

Eigen::MatrixXcd exact_controlled_propagator(const EffectiveHamiltonian& h, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_dense_matrix(h.to_operator(), 2));
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(4, 4);
  for (int i = 0; i < 4; ++i)
    u += std::exp(-kI * es.eigenvalues()(i) * t) * es.eigenvectors().col(i) *
         es.eigenvectors().col(i).adjoint();
  Eigen::MatrixXcd cu = Eigen::MatrixXcd::Identity(8, 8);
  cu.block<4, 4>(4, 4) = u;
  return cu;
}

}  // namespace

TEST_CASE("CNOT and SWAP decompose onto CZ with exact truth tables") {
  const Circuit cnot = cnot_via_cz(1, 0, 2);
  CHECK(test::distance_up_to_global_phase(circuit_unitary(cnot), dense_cnot(1, 0, 2)) <
        1e-10);

  // |10>: control set, target flips -> |11> up to a global phase.
  StateVector in = StateVector::basis_state(2, 2);
  StateVector out = apply_circuit(in, cnot);
  CHECK(std::abs(std::abs(out.amplitude(3)) - 1.0) < 1e-12);

  const Circuit swap = swap_via_cz(0, 1, 2);
  CHECK(test::distance_up_to_global_phase(circuit_unitary(swap), dense_swap(0, 1, 2)) <
        1e-10);
  StateVector s01 = StateVector::basis_state(2, 1);
  StateVector swapped = apply_circuit(s01, swap);
  CHECK(std::abs(std::abs(swapped.amplitude(2)) - 1.0) < 1e-12);
}

TEST_CASE("decompositions compose with their reverses to the identity") {
  for (const Circuit& c : {cnot_via_cz(1, 0, 2), swap_via_cz(0, 1, 2)}) {
    Circuit both = c;
    both.append(c.inverse());
    CHECK(test::max_abs(circuit_unitary(both) - Eigen::MatrixXcd::Identity(4, 4)) < 1e-10);
  }
}

TEST_CASE("controlled terms match the dense controlled exponential") {
  std::mt19937_64 rng(3);
  const std::array<EffTerm, 5> all = kCanonicalOrdering;
  for (EffTerm term : all) {
    for (int trial = 0; trial < 20; ++trial) {
      const double angle = -8.0 + 16.0 * uniform01(rng);
      const Eigen::MatrixXcd u = circuit_unitary(controlled_term(term, angle));
      CHECK(test::distance_up_to_global_phase(
                u, dense_controlled_exponential(term, angle)) < 1e-10);
    }
    // Zero angle is the identity.
    CHECK(test::distance_up_to_global_phase(circuit_unitary(controlled_term(term, 0.0)),
                                            Eigen::MatrixXcd::Identity(8, 8)) < 1e-12);
  }
}

TEST_CASE("controlled term keeps the ancilla relative phase exact") {
  // Ancilla in |+>, register in an eigenstate: the ancilla acquires exactly
  // the eigenphase e^{-i angle lambda}.
  const double angle = 0.613;
  // |11> is a Z0 Z1 eigenstate with eigenvalue +1.
  StateVector psi = StateVector::basis_state(3, 3);
  psi = apply_circuit(psi, [] {
    Circuit c(3);
    c.append(Gate::ry(kAncilla, pi / 2));
    return c;
  }());
  psi = apply_circuit(psi, controlled_term(EffTerm::Z0Z1, angle));
  const Complex a0 = psi.amplitude(3);       // ancilla 0
  const Complex a1 = psi.amplitude(3 | 4);   // ancilla 1
  CHECK(std::abs(a1 / a0 - std::exp(-kI * angle)) < 1e-10);
}

TEST_CASE("Trotter circuit is exact for a diagonal Hamiltonian") {
  const auto h = diagonal_hamiltonian();
  for (int rho : {1, 3}) {
    TrotterSpec spec;
    spec.t0 = 1.7;
    spec.rho = rho;
    const Eigen::MatrixXcd u = circuit_unitary(trotter_circuit(h, spec.t0, spec));
    CHECK(test::distance_up_to_global_phase(u, exact_controlled_propagator(h, spec.t0)) <
          1e-10);
  }
}

TEST_CASE("controlled Trotter circuit matches the register-only product") {
  const auto h = equilibrium_hamiltonian();
  TrotterSpec spec;
  spec.t0 = 1.3;
  spec.rho = 2;
  const Eigen::MatrixXcd cu = circuit_unitary(trotter_circuit(h, spec.t0, spec));
  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Identity(8, 8);
  expected.block<4, 4>(4, 4) = trotter_unitary(h, spec.t0, spec.rho, spec.ordering);
  CHECK(test::distance_up_to_global_phase(cu, expected) < 1e-10);
}

TEST_CASE("operator-norm Trotter error halves when rho doubles") {
  const auto h = equilibrium_hamiltonian();
  const double t0 = default_t0(h);
  double prev = trotter_opnorm_error(h, t0, 1, kCanonicalOrdering);
  for (int rho : {2, 4, 8, 16}) {
    const double err = trotter_opnorm_error(h, t0, rho, kCanonicalOrdering);
    const double ratio = err / prev;
    CHECK(ratio > 0.4);
    CHECK(ratio < 0.6);
    prev = err;
  }
}

TEST_CASE("single-step eigenphase error is nonzero and ordering-dependent") {
  const auto h = equilibrium_hamiltonian();
  const double t0 = default_t0(h);
  const double base = ground_eigenphase_error(h, t0, 1, kCanonicalOrdering);
  CHECK(base > 1e-6);
  TermOrdering other = {EffTerm::X0X1, EffTerm::Z0, EffTerm::Y0Y1, EffTerm::Z1,
                        EffTerm::Z0Z1};
  CHECK(std::abs(ground_eigenphase_error(h, t0, 1, other) - base) > 1e-9);
}

TEST_CASE("eigenphase error vanishes as rho grows") {
  const auto h = equilibrium_hamiltonian();
  const double t0 = default_t0(h);
  double prev = ground_eigenphase_error(h, t0, 1, kCanonicalOrdering);
  for (int rho : {2, 4, 8, 16, 32}) {
    const double err = ground_eigenphase_error(h, t0, rho, kCanonicalOrdering);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 1e-4);
}

TEST_CASE("energy_from_bits arithmetic") {
  CHECK(energy_from_bits({1, 0}, 1.0) == doctest::Approx(-pi / 2).epsilon(1e-15));
  CHECK(energy_from_bits({0, 0, 0}, 0.7) == doctest::Approx(0.0));
  CHECK(energy_from_bits({1, 1, 1, 1}, 2.0) ==
        doctest::Approx(-(pi / 2.0) * (15.0 / 16.0)).epsilon(1e-15));
  CHECK_THROWS_AS(energy_from_bits({}, 1.0), std::invalid_argument);
}

TEST_CASE("identity Hamiltonian digitizes to its binary expansion") {
  // E = -(pi/t0) * 3/4 has bits 0.11 exactly.
  TrotterSpec spec;
  spec.t0 = 2.0;
  spec.bits = 6;
  EffectiveHamiltonian h;
  h.g[0] = -(pi / spec.t0) * 0.75;
  PeaOptions opts;
  opts.mode = PeaMode::ExactPropagator;
  const PEAOutcome out = iterative_pea(h, spec, opts);
  CHECK(out.bits == std::vector<int>{1, 1, 0, 0, 0, 0});
  CHECK(out.energy == doctest::Approx(h.g[0]).epsilon(1e-12));
}

TEST_CASE("exact-propagator energies satisfy the truncation bound") {
  for (double r : {0.7414, 1.55, 2.85}) {
    const auto h = effective_hamiltonian(r);
    const double e0 = ground_energy(h);
    TrotterSpec spec;
    spec.t0 = default_t0(h);
    PeaOptions opts;
    opts.mode = PeaMode::ExactPropagator;
    for (int b = 4; b <= 16; ++b) {
      spec.bits = b;
      const PEAOutcome out = iterative_pea(h, spec, opts);
      CHECK(std::abs(out.energy - e0) <= pi / (spec.t0 * std::ldexp(1.0, b)) + 1e-12);
    }
  }
}

TEST_CASE("per-bit probabilities match the spectral formula") {
  const auto h = equilibrium_hamiltonian();
  TrotterSpec spec;
  spec.t0 = default_t0(h);
  spec.bits = 8;
  spec.rho = 1;

  for (PeaMode mode : {PeaMode::ExactPropagator, PeaMode::Trotter}) {
    PeaOptions opts;
    opts.mode = mode;
    const PEAOutcome out = iterative_pea(h, spec, opts);

    const Eigen::Vector4cd hf = Eigen::Vector4cd::Unit(1);
    for (int k = 0; k < spec.bits; ++k) {
      const double tau = std::ldexp(spec.t0, k);
      Eigen::Matrix4cd u;
      if (mode == PeaMode::ExactPropagator) {
        u = exact_controlled_propagator(h, tau).block<4, 4>(4, 4);
      } else {
        // The evolution repeats the fixed single-block circuit 2^k times.
        const Eigen::Matrix4cd block = trotter_unitary(h, spec.t0, spec.rho, spec.ordering);
        u = Eigen::Matrix4cd::Identity();
        for (int r = 0; r < (1 << k); ++r) u = block * u;
      }
      Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(u);
      const double kick = (k > 0 && out.bits[k - 1]) ? pi : 0.0;
      double p1 = 0.0;
      for (int n = 0; n < 4; ++n) {
        const double weight = std::norm(es.eigenvectors().col(n).dot(hf));
        const double theta = std::arg(es.eigenvalues()(n)) - kick;
        p1 += weight * std::sin(theta / 2.0) * std::sin(theta / 2.0);
      }
      CHECK(out.p1_per_bit[k] == doctest::Approx(p1).epsilon(1e-8));
    }
  }
}

TEST_CASE("noiseless outcomes are independent of the repetition count") {
  const auto h = equilibrium_hamiltonian();
  TrotterSpec spec;
  spec.t0 = default_t0(h);
  spec.bits = 10;
  PeaOptions opts;
  opts.mode = PeaMode::Trotter;
  spec.reps_per_bit = 1;
  const PEAOutcome one = iterative_pea(h, spec, opts);
  spec.reps_per_bit = 1000;
  const PEAOutcome many = iterative_pea(h, spec, opts);
  CHECK(one.bits == many.bits);
  CHECK(one.energy == many.energy);
}

TEST_CASE("single-step estimation qualitatively tracks the stretched geometry") {
  // At R = 1.55 A the per-bit ancilla trace shows both high and low
  // probabilities (an alternating digital pattern), and the energy stays
  // within the coarse single-step error budget.
  const auto h = effective_hamiltonian(1.55);
  TrotterSpec spec;
  spec.t0 = default_t0(h);
  spec.bits = 10;
  spec.ordering = optimize_ordering(h, spec.t0).ordering;
  PeaOptions opts;
  opts.mode = PeaMode::Trotter;
  const PEAOutcome out = iterative_pea(h, spec, opts);
  CHECK(out.hf_overlap_sq > 0.5);
  int high = 0, low = 0;
  for (double p : out.p1_per_bit) {
    if (p > 0.5) ++high;
    if (p <= 0.5) ++low;
  }
  CHECK(high >= 2);
  CHECK(low >= 2);
  CHECK(std::abs(out.energy - ground_energy(h)) < 5e-2);
}

TEST_CASE("classical Z0Z1 substitution leaves the outcome unchanged") {
  // Z0 Z1 commutes with every term and the register never leaves its
  // eigensector, so folding it into the ancilla phase is exact.
  const auto h = equilibrium_hamiltonian();
  TrotterSpec spec;
  spec.t0 = default_t0(h);
  spec.bits = 10;
  PeaOptions plain;
  plain.mode = PeaMode::Trotter;
  PeaOptions subst = plain;
  subst.z0z1_classical = true;
  const PEAOutcome a = iterative_pea(h, spec, plain);
  const PEAOutcome b = iterative_pea(h, spec, subst);
  CHECK(a.bits == b.bits);
  for (int k = 0; k < spec.bits; ++k)
    CHECK(a.p1_per_bit[k] == doctest::Approx(b.p1_per_bit[k]).epsilon(1e-10));
}

TEST_CASE("ordering optimization is confirmed by exhaustive search") {
  const auto h = equilibrium_hamiltonian();
  const double t0 = default_t0(h);
  const OrderingResult best = optimize_ordering(h, t0);

  TermOrdering perm = kCanonicalOrdering;
  int count = 0;
  do {
    CHECK(best.eigenphase_error <= ground_eigenphase_error(h, t0, 1, perm) + 1e-15);
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  CHECK(count == 120);
}

TEST_CASE("all orderings tie for a diagonal Hamiltonian") {
  const auto h = diagonal_hamiltonian();
  const OrderingResult best = optimize_ordering(h, 1.0);
  CHECK(best.eigenphase_error < 1e-12);
  CHECK(best.ordering == kCanonicalOrdering);  // lexicographically first tie
}

TEST_CASE("optimized ordering beats the worst ordering at equilibrium") {
  const auto h = equilibrium_hamiltonian();
  const double t0 = default_t0(h);
  const OrderingResult best = optimize_ordering(h, t0);

  TermOrdering worst = kCanonicalOrdering;
  double worst_err = -1.0;
  TermOrdering perm = kCanonicalOrdering;
  do {
    const double err = ground_eigenphase_error(h, t0, 1, perm);
    if (err > worst_err) {
      worst_err = err;
      worst = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  TrotterSpec spec;
  spec.t0 = t0;
  spec.bits = 10;
  PeaOptions opts;
  opts.mode = PeaMode::Trotter;
  spec.ordering = best.ordering;
  const double err_best = std::abs(iterative_pea(h, spec, opts).energy - ground_energy(h));
  spec.ordering = worst;
  const double err_worst = std::abs(iterative_pea(h, spec, opts).energy - ground_energy(h));
  CHECK(err_best <= err_worst + 1e-12);
}

TEST_CASE("specification guards") {
  TrotterSpec spec;
  spec.t0 = 1.0;
  spec.reps_per_bit = 0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec.reps_per_bit = 1;
  spec.bits = 25;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec.bits = 10;
  spec.t0 = -1.0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec.t0 = 1.0;
  spec.ordering[0] = spec.ordering[1];
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}

TEST_CASE("aliasing guard rejects oversized t0") {
  const auto h = equilibrium_hamiltonian();
  TrotterSpec spec;
  spec.t0 = 2.0 * pi / std::abs(ground_energy(h));  // phase far outside (-pi, 0]
  PeaOptions opts;
  opts.mode = PeaMode::ExactPropagator;
  CHECK_THROWS_AS(iterative_pea(h, spec, opts), NumericalGuard);
}

TEST_CASE("ordering labels round trip through strings") {
  const TermOrdering o = {EffTerm::X0X1, EffTerm::Z0Z1, EffTerm::Z0, EffTerm::Y0Y1,
                          EffTerm::Z1};
  CHECK(ordering_to_string(o) == "X0X1 Z0Z1 Z0 Y0Y1 Z1");
  CHECK(ordering_from_string("X0X1 Z0Z1 Z0 Y0Y1 Z1") == o);
  CHECK_THROWS_AS(ordering_from_string("Z0 Z0 Z1 X0X1 Y0Y1"), std::invalid_argument);
  CHECK_THROWS_AS(ordering_from_string("Z0"), std::invalid_argument);
}

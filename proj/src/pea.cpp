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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "h2sim/errors.hpp"

namespace h2sim {

namespace {

using std::numbers::pi;

constexpr Complex kI{0.0, 1.0};

double wrap_angle(double a) {
  a = std::fmod(a, 2.0 * pi);
  if (a > pi) a -= 2.0 * pi;
  if (a <= -pi) a += 2.0 * pi;
  return a;
}

Eigen::Matrix4cd dense4(const QubitOperator& op) {
  return to_dense_matrix(op, 2);
}

QubitOperator term_operator(EffTerm t) {
  using L = PauliLetter;
  QubitOperator op;
  switch (t) {
    case EffTerm::Z0: op.add_term({{0, L::Z}}, 1.0); break;
    case EffTerm::Z1: op.add_term({{1, L::Z}}, 1.0); break;
    case EffTerm::Z0Z1: op.add_term({{0, L::Z}, {1, L::Z}}, 1.0); break;
    case EffTerm::X0X1: op.add_term({{0, L::X}, {1, L::X}}, 1.0); break;
    case EffTerm::Y0Y1: op.add_term({{0, L::Y}, {1, L::Y}}, 1.0); break;
  }
  return op;
}

// exp(-i angle P) for a Pauli string P with P^2 = I.
Eigen::Matrix4cd pauli_exponential(EffTerm t, double angle) {
  const Eigen::Matrix4cd p = dense4(term_operator(t));
  return std::cos(angle) * Eigen::Matrix4cd::Identity() - kI * std::sin(angle) * p;
}

}  // namespace

const char* term_name(EffTerm t) {
  switch (t) {
    case EffTerm::Z0: return "Z0";
    case EffTerm::Z1: return "Z1";
    case EffTerm::Z0Z1: return "Z0Z1";
    case EffTerm::X0X1: return "X0X1";
    case EffTerm::Y0Y1: return "Y0Y1";
  }
  return "?";
}

std::string ordering_to_string(const TermOrdering& ordering) {
  std::ostringstream out;
  for (std::size_t i = 0; i < ordering.size(); ++i) {
    if (i) out << ' ';
    out << term_name(ordering[i]);
  }
  return out.str();
}

TermOrdering ordering_from_string(const std::string& names) {
  std::istringstream in(names);
  std::string tok;
  std::vector<EffTerm> terms;
  while (in >> tok) {
    bool found = false;
    for (EffTerm t : kCanonicalOrdering) {
      if (tok == term_name(t)) {
        terms.push_back(t);
        found = true;
        break;
      }
    }
    if (!found) throw std::invalid_argument("unknown Hamiltonian term label: " + tok);
  }
  if (terms.size() != 5)
    throw std::invalid_argument("term ordering must list all five non-identity terms");
  TermOrdering out;
  std::copy(terms.begin(), terms.end(), out.begin());
  TermOrdering sorted = out;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != kCanonicalOrdering)
    throw std::invalid_argument("term ordering must be a permutation of the five terms");
  return out;
}

int term_g_index(EffTerm t) { return static_cast<int>(t) + 1; }

void TrotterSpec::validate() const {
  if (!(t0 > 0.0)) throw std::invalid_argument("t0 must be positive");
  if (rho < 1) throw std::invalid_argument("rho must be at least 1");
  if (bits < 1) throw std::invalid_argument("bit count must be at least 1");
  if (bits > 24)
    throw std::invalid_argument("bit count above 24 exceeds the phase precision limit");
  if (reps_per_bit < 1) throw std::invalid_argument("reps_per_bit must be at least 1");
  TermOrdering sorted = ordering;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != kCanonicalOrdering)
    throw std::invalid_argument("ordering must be a permutation of the five terms");
}

Circuit cnot_via_cz(int control, int target, int n_qubits) {
  Circuit c(n_qubits);
  c.append(Gate::ry(target, -pi / 2));
  c.append(Gate::cz(control, target, pi));
  c.append(Gate::ry(target, pi / 2));
  return c;
}

Circuit swap_via_cz(int a, int b, int n_qubits) {
  Circuit c(n_qubits);
  c.append(cnot_via_cz(a, b, n_qubits));
  c.append(cnot_via_cz(b, a, n_qubits));
  c.append(cnot_via_cz(a, b, n_qubits));
  return c;
}

namespace {

// Controlled exp(-i angle Z0) on (ancilla, qubit 0): an ancilla z rotation
// plus one CZ(2 angle), exact up to a global phase.
void append_controlled_z0(Circuit& c, double angle) {
  c.append(Gate::rz(kAncilla, -angle));
  c.append(Gate::cz(kAncilla, 0, 2.0 * angle));
}

}  // namespace

Circuit controlled_term(EffTerm term, double angle) {
  Circuit c(3);
  switch (term) {
    case EffTerm::Z0:
      append_controlled_z0(c, angle);
      break;
    case EffTerm::Z1:
      c.append(swap_via_cz(0, 1, 3));
      append_controlled_z0(c, angle);
      c.append(swap_via_cz(0, 1, 3));
      break;
    case EffTerm::Z0Z1:
      c.append(cnot_via_cz(1, 0, 3));
      append_controlled_z0(c, angle);
      c.append(cnot_via_cz(1, 0, 3));
      break;
    case EffTerm::X0X1:
      c.append(Gate::ry(0, pi / 2));
      c.append(Gate::ry(1, pi / 2));
      c.append(cnot_via_cz(1, 0, 3));
      append_controlled_z0(c, angle);
      c.append(cnot_via_cz(1, 0, 3));
      c.append(Gate::ry(0, -pi / 2));
      c.append(Gate::ry(1, -pi / 2));
      break;
    case EffTerm::Y0Y1:
      c.append(Gate::rx(0, -pi / 2));
      c.append(Gate::rx(1, -pi / 2));
      c.append(cnot_via_cz(1, 0, 3));
      append_controlled_z0(c, angle);
      c.append(cnot_via_cz(1, 0, 3));
      c.append(Gate::rx(0, pi / 2));
      c.append(Gate::rx(1, pi / 2));
      break;
  }
  return c;
}

Circuit trotter_circuit(const EffectiveHamiltonian& h, double t, const TrotterSpec& spec,
                        bool z0z1_classical) {
  Circuit c(3);
  // Controlled global phase e^{-i g0 t}; the classically substituted Z0Z1
  // contributes with its eigenvalue -1 on the relevant symmetry sector.
  double identity_phase = h.g[0] * t;
  if (z0z1_classical) identity_phase += h.g[3] * t * (-1.0);
  c.append(Gate::rz(kAncilla, -wrap_angle(identity_phase)));

  for (int step = 0; step < spec.rho; ++step) {
    for (EffTerm term : spec.ordering) {
      if (z0z1_classical && term == EffTerm::Z0Z1) continue;
      const double g = h.g[term_g_index(term)];
      if (g == 0.0) continue;
      c.append(controlled_term(term, g * t / spec.rho));
    }
  }
  return c;
}

Eigen::Matrix4cd trotter_unitary(const EffectiveHamiltonian& h, double t, int rho,
                                 const TermOrdering& ordering) {
  Eigen::Matrix4cd step = Eigen::Matrix4cd::Identity();
  // Terms are applied to the state in ordering order, so the first term is
  // rightmost in the matrix product.
  for (EffTerm term : ordering)
    step = pauli_exponential(term, h.g[term_g_index(term)] * t / rho) * step;
  Eigen::Matrix4cd u = Eigen::Matrix4cd::Identity();
  for (int i = 0; i < rho; ++i) u = step * u;
  return std::exp(-kI * h.g[0] * t) * u;
}

double energy_from_bits(const std::vector<int>& bits, double t0) {
  if (bits.empty()) throw std::invalid_argument("bit list is empty");
  double phi = 0.0;
  double weight = 0.5;
  for (int b : bits) {
    phi += static_cast<double>(b) * weight;
    weight /= 2.0;
  }
  return -(pi / t0) * phi;
}

namespace {

struct GroundInfo {
  double e0 = 0.0;
  double overlap_sq = 0.0;
  Eigen::Vector4cd ground;
};

GroundInfo ground_info(const EffectiveHamiltonian& h) {
  const StateVector hf = StateVector::basis_state(2, 1);
  const EigenDecomposition eig = exact_diagonalize(h.to_operator(), hf);
  GroundInfo out;
  out.e0 = eig.energies[0];
  out.overlap_sq = std::norm(eig.overlaps[0]);
  out.ground = eig.states.col(0);
  return out;
}

// Dense controlled-U on 3 qubits (ancilla = qubit 2 = high bit).
Eigen::MatrixXcd controlled_unitary(const Eigen::Matrix4cd& u) {
  Eigen::MatrixXcd cu = Eigen::MatrixXcd::Identity(8, 8);
  cu.block<4, 4>(4, 4) = u;
  return cu;
}

Eigen::Matrix4cd exact_propagator(const EffectiveHamiltonian& h, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(dense4(h.to_operator()));
  Eigen::Vector4cd phases;
  for (int i = 0; i < 4; ++i) phases(i) = std::exp(-kI * es.eigenvalues()(i) * t);
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

// One bit measurement: returns the ancilla |1> probability after the
// kickback, the controlled evolution U(2^k t0), and the X-basis measurement
// rotation. In Trotter mode the evolution repeats the fixed U_Trot(t0)
// block 2^k times, so the accumulated phase is exactly linear in the
// evolution time and the bit readings stay mutually consistent.
double measure_bit_probability(const EffectiveHamiltonian& h, const TrotterSpec& spec,
                               const PeaOptions& opts, int k, double kickback) {
  if (opts.mode == PeaMode::ExactPropagator) {
    const double tau = std::ldexp(spec.t0, k);
    Eigen::VectorXcd state = Eigen::VectorXcd::Zero(8);
    state(1) = 1.0;  // register |01>, ancilla |0>
    Circuit prep(3);
    prep.append(Gate::ry(kAncilla, pi / 2));
    prep.append(Gate::rz(kAncilla, -kickback));
    Eigen::MatrixXcd u = circuit_unitary(prep);
    state = controlled_unitary(exact_propagator(h, tau)) * (u * state);
    Circuit meas(3);
    meas.append(Gate::ry(kAncilla, -pi / 2));
    state = circuit_unitary(meas) * state;
    double p1 = 0.0;
    for (int i = 4; i < 8; ++i) p1 += std::norm(state(i));
    return p1;
  }

  Circuit prep(3);
  prep.append(Gate::rx(0, pi));  // register Hartree-Fock state |01>
  prep.append(Gate::ry(kAncilla, pi / 2));
  prep.append(Gate::rz(kAncilla, -kickback));
  const Circuit step = trotter_circuit(h, spec.t0, spec, opts.z0z1_classical);
  Circuit meas(3);
  meas.append(Gate::ry(kAncilla, -pi / 2));
  const std::uint64_t reps = 1ULL << k;

  if (opts.noise.has_value() && !opts.noise->is_trivial()) {
    DensityMatrix rho = apply_circuit_noisy(DensityMatrix(3), prep, *opts.noise);
    for (std::uint64_t r = 0; r < reps; ++r)
      rho = apply_circuit_noisy(rho, step, *opts.noise);
    rho = apply_circuit_noisy(rho, meas, *opts.noise);
    double p1 = 0.0;
    const auto probs = rho.probabilities();
    for (int i = 4; i < 8; ++i) p1 += probs[i];
    return p1;
  }
  StateVector psi = apply_circuit(StateVector(3), prep);
  for (std::uint64_t r = 0; r < reps; ++r) psi = apply_circuit(psi, step);
  psi = apply_circuit(psi, meas);
  double p1 = 0.0;
  for (int i = 4; i < 8; ++i) p1 += std::norm(psi.amplitude(i));
  return p1;
}

}  // namespace

PEAOutcome iterative_pea(const EffectiveHamiltonian& h, const TrotterSpec& spec,
                         const PeaOptions& opts) {
  spec.validate();
  const GroundInfo info = ground_info(h);

  // Bits encode -E0 t0 / pi, so the ground phase must stay inside (-pi, 0].
  const double phi = -info.e0 * spec.t0 / pi;
  if (phi < 0.0 || phi >= 1.0)
    throw NumericalGuard("ground phase leaves (-pi, 0]; reduce t0 to avoid aliasing");

  PEAOutcome out;
  out.hf_overlap_sq = info.overlap_sq;

  for (int k = 0; k < spec.bits; ++k) {
    // Kickback for the previously determined (more significant) bits:
    // pi * sum_{l<k} j_l 2^{k-l-1}. Mod 2pi only l = k-1 survives.
    const double kickback = (k > 0 && out.bits[k - 1]) ? pi : 0.0;
    const double p1 = measure_bit_probability(h, spec, opts, k, kickback);
    out.p1_per_bit.push_back(p1);
    // Knife-edge probabilities (exactly 1/2) belong to the bit-1 side: an
    // exact half remainder truncates to 1.
    out.bits.push_back(p1 >= 0.5 - 1e-12 ? 1 : 0);
  }
  out.energy = energy_from_bits(out.bits, spec.t0);
  return out;
}

double ground_eigenphase_error(const EffectiveHamiltonian& h, double t0, int rho,
                               const TermOrdering& ordering) {
  const GroundInfo info = ground_info(h);
  const Eigen::Matrix4cd u = trotter_unitary(h, t0, rho, ordering);
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(u);

  int best = 0;
  double best_overlap = -1.0;
  for (int i = 0; i < 4; ++i) {
    const double ov = std::abs(es.eigenvectors().col(i).dot(info.ground));
    if (ov > best_overlap) {
      best_overlap = ov;
      best = i;
    }
  }
  const double trotter_phase = std::arg(es.eigenvalues()(best));
  const double exact_phase = wrap_angle(-info.e0 * t0);
  return std::abs(wrap_angle(trotter_phase - exact_phase));
}

double trotter_opnorm_error(const EffectiveHamiltonian& h, double t, int rho,
                            const TermOrdering& ordering) {
  const Eigen::Matrix4cd diff = trotter_unitary(h, t, rho, ordering) - exact_propagator(h, t);
  Eigen::JacobiSVD<Eigen::Matrix4cd> svd(diff);
  return svd.singularValues()(0);
}

OrderingResult optimize_ordering(const EffectiveHamiltonian& h, double t0) {
  TermOrdering perm = kCanonicalOrdering;
  OrderingResult best{perm, ground_eigenphase_error(h, t0, 1, perm)};
  while (std::next_permutation(perm.begin(), perm.end())) {
    const double err = ground_eigenphase_error(h, t0, 1, perm);
    if (err < best.eigenphase_error) {
      best.ordering = perm;
      best.eigenphase_error = err;
    }
  }
  return best;
}

double default_t0(const EffectiveHamiltonian& h) {
  const double norm = h.coefficient_one_norm();
  if (norm <= 0.0) throw std::invalid_argument("Hamiltonian has no terms");
  return 0.95 * pi / norm;
}

const char* pea_mode_name(PeaMode mode) {
  return mode == PeaMode::ExactPropagator ? "exact" : "trotter";
}

}  // namespace h2sim

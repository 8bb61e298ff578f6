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

#include <complex>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

namespace h2sim {

using Complex = std::complex<double>;

// Gate set used by both experiments. Rotations follow exp(-i theta sigma/2);
// CZ(phi) = diag(1, 1, 1, e^{i phi}); CRz is diag(1,1) (+) Rz(theta) with
// targets[0] the control.
enum class GateKind { Rx, Ry, Rz, CZ, CRz };

struct Gate {
  GateKind kind;
  std::vector<int> targets;
  double angle = 0.0;

  static Gate rx(int q, double theta) { return {GateKind::Rx, {q}, theta}; }
  static Gate ry(int q, double theta) { return {GateKind::Ry, {q}, theta}; }
  static Gate rz(int q, double theta) { return {GateKind::Rz, {q}, theta}; }
  static Gate cz(int a, int b, double phi) { return {GateKind::CZ, {a, b}, phi}; }
  static Gate crz(int control, int target, double theta) {
    return {GateKind::CRz, {control, target}, theta};
  }

  bool is_two_qubit() const { return targets.size() == 2; }
  // Dense matrix on the gate's own qubits (2x2 or 4x4, targets[0] as LSB
  // for single-qubit; for two-qubit gates see embed_gate).
  Eigen::Matrix2cd matrix1q() const;
};

const char* gate_kind_name(GateKind kind);
GateKind gate_kind_from_name(const std::string& name);

struct Circuit {
  int n_qubits = 0;
  std::vector<Gate> gates;

  Circuit() = default;
  explicit Circuit(int n) : n_qubits(n) {}

  void append(const Gate& g) { gates.push_back(g); }
  void append(const Circuit& other);
  // Reversed gate order with negated angles; inverts the circuit exactly
  // (CZ(phi) inverts to CZ(-phi)).
  Circuit inverse() const;

  // Throws std::out_of_range / std::invalid_argument on bad targets.
  void validate() const;

  nlohmann::json to_json() const;
  static Circuit from_json(const nlohmann::json& j);
};

// Dense 2^n x 2^n unitary of a gate or circuit, qubit 0 = LSB.
Eigen::MatrixXcd embed_gate(const Gate& g, int n_qubits);
Eigen::MatrixXcd circuit_unitary(const Circuit& c);

class StateVector {
 public:
  explicit StateVector(int n_qubits);
  static StateVector basis_state(int n_qubits, std::uint64_t index);

  int n_qubits() const { return n_qubits_; }
  std::uint64_t dim() const { return amplitudes_.size(); }
  const std::vector<Complex>& amplitudes() const { return amplitudes_; }
  std::vector<Complex>& amplitudes() { return amplitudes_; }
  Complex amplitude(std::uint64_t index) const { return amplitudes_[index]; }

  double norm_sq() const;
  std::vector<double> probabilities() const;

 private:
  int n_qubits_;
  std::vector<Complex> amplitudes_;
};

class DensityMatrix {
 public:
  explicit DensityMatrix(int n_qubits);
  static DensityMatrix from_pure(const StateVector& psi);

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return matrix_.rows(); }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }
  Eigen::MatrixXcd& matrix() { return matrix_; }

  double trace_real() const;
  std::vector<double> probabilities() const;

 private:
  int n_qubits_;
  Eigen::MatrixXcd matrix_;
};

// Per-gate noise parameters. Times are in gate-duration units; infinity
// disables the corresponding channel. The all-infinite / all-zero model
// reproduces the pure-state simulation exactly.
struct NoiseModel {
  double t1 = std::numeric_limits<double>::infinity();
  double t2 = std::numeric_limits<double>::infinity();
  // Systematic fractional scaling of every gate angle (coherent error).
  double overrotation = 0.0;
  double depolarizing_prob = 0.0;
  double duration_1q = 1.0;
  double duration_2q = 2.0;
  // When set, a CZ(phi) with |phi| outside the realizable single-gate range
  // is executed as two physical CZ(phi/2) gates, each with its own noise.
  bool cz_split = false;

  bool is_trivial() const;
  // Throws std::invalid_argument on t2 > 2*t1 or probabilities outside [0,1].
  void validate() const;
};

// Pure-state evolution. Gate application renormalization is never needed;
// the norm is checked to 1e-10 after every gate and a violation throws.
StateVector apply_gate(const StateVector& state, const Gate& gate);
StateVector apply_circuit(const StateVector& state, const Circuit& circuit);

// Noisy evolution: each gate is applied with its angle scaled by
// (1 + overrotation), followed by amplitude damping (p = 1 - e^{-d/t1}),
// phase damping derived from t2, and depolarizing on the gate's qubits.
DensityMatrix apply_circuit_noisy(const DensityMatrix& rho, const Circuit& circuit,
                                  const NoiseModel& noise);

// Kraus operators of the combined per-qubit decoherence channel for one gate
// duration (exposed for tests of CPTP completeness).
std::vector<Eigen::Matrix2cd> decoherence_kraus(const NoiseModel& noise, double duration);

// Draws `shots` i.i.d. computational-basis outcomes from the Born
// distribution after applying basis_change. Deterministic for a fixed seed.
// Returns counts indexed by basis state. Throws on shots == 0.
std::vector<std::uint64_t> sample_pauli(const StateVector& state, const Circuit& basis_change,
                                        std::uint64_t shots, std::uint64_t seed);
std::vector<std::uint64_t> sample_pauli(const DensityMatrix& rho, const Circuit& basis_change,
                                        std::uint64_t shots, std::uint64_t seed);

// Multinomial sampler shared by both overloads (probabilities must sum to 1).
std::vector<std::uint64_t> sample_counts(const std::vector<double>& probabilities,
                                         std::uint64_t shots, std::uint64_t seed);

}  // namespace h2sim

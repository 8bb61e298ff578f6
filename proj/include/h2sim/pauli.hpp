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
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

namespace h2sim {

class StateVector;
class DensityMatrix;

using Complex = std::complex<double>;

enum class PauliLetter : char { X = 'X', Y = 'Y', Z = 'Z' };

// A weighted Pauli string: coefficient * P_{q0} P_{q1} ... with identity
// factors omitted. Throughout the project qubit 0 is the least-significant
// bit of a basis-state index, so kets read |q1 q0> for two qubits.
struct PauliString {
  // qubit index -> letter; indices are non-negative, identity never stored.
  std::map<int, PauliLetter> factors;
  Complex coefficient{1.0, 0.0};

  PauliString() = default;
  PauliString(std::map<int, PauliLetter> f, Complex c)
      : factors(std::move(f)), coefficient(c) {}

  bool is_identity() const { return factors.empty(); }
  int max_qubit() const { return factors.empty() ? -1 : factors.rbegin()->first; }

  // "X0 Y1" with factors in ascending qubit order; "I" for the identity.
  std::string label() const;

  // Key ordering used for the canonical term order: lexicographic on the
  // (qubit index, letter) sequence with X < Y < Z; identity sorts first.
  static bool key_less(const PauliString& a, const PauliString& b);
  static bool key_equal(const PauliString& a, const PauliString& b);
};

// Product with the correct phase from the single-qubit rules
// XX = YY = ZZ = I, XY = iZ (cyclic), YX = -iZ (anti-cyclic).
PauliString multiply(const PauliString& a, const PauliString& b);

// A canonicalized sum of Pauli strings: like terms merged, coefficients with
// magnitude below 1e-12 pruned, terms sorted by PauliString::key_less. The
// canonical form is unique for a given operator, so equality of term lists
// is operator equality.
class QubitOperator {
 public:
  QubitOperator() = default;
  explicit QubitOperator(const std::vector<PauliString>& terms);

  static QubitOperator identity(Complex coefficient = 1.0);

  void add_term(const PauliString& term);
  void add_term(const std::map<int, PauliLetter>& factors, Complex coefficient);

  const std::vector<PauliString>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  int max_qubit() const;

  // Coefficient of the term with the given factors (0 if absent).
  Complex coefficient_of(const std::map<int, PauliLetter>& factors) const;

  // Every term coefficient real within tol. Since Pauli strings are
  // Hermitian, this is exactly Hermiticity of the operator.
  bool is_hermitian(double tol = 1e-12) const;
  double max_imag_coefficient() const;

  QubitOperator operator+(const QubitOperator& other) const;
  QubitOperator operator-(const QubitOperator& other) const;
  QubitOperator operator*(const QubitOperator& other) const;
  QubitOperator operator*(Complex scalar) const;

  // JSON schema: [{"term": "X0 Y1", "coeff": [re, im]}, ...], identity "I".
  nlohmann::json to_json() const;
  static QubitOperator from_json(const nlohmann::json& j);

 private:
  void canonicalize();
  std::vector<PauliString> terms_;
};

// Dense 2^n x 2^n matrix with qubit 0 as the least-significant bit of the
// state index. Throws std::out_of_range if a term touches a qubit >= n.
Eigen::MatrixXcd to_dense_matrix(const QubitOperator& op, int n_qubits);
Eigen::MatrixXcd to_dense_matrix(const PauliString& term, int n_qubits);

// <psi|op|psi> / Tr(rho op) for Hermitian op. An imaginary residue below
// 1e-10 is discarded; anything larger throws std::runtime_error.
double expectation(const QubitOperator& op, const StateVector& state);
double expectation(const QubitOperator& op, const DensityMatrix& rho);

}  // namespace h2sim

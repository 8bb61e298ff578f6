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

#include "h2sim/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "h2sim/simulator.hpp"

namespace h2sim {

namespace {

constexpr double kPruneTol = 1e-12;
constexpr Complex kI{0.0, 1.0};

int letter_rank(PauliLetter l) {
  switch (l) {
    case PauliLetter::X: return 0;
    case PauliLetter::Y: return 1;
    case PauliLetter::Z: return 2;
  }
  return 3;
}

// Single-qubit product a*b -> (phase, result); result == nullopt means I.
struct SingleProduct {
  Complex phase;
  bool identity;
  PauliLetter letter;
};

SingleProduct multiply_letters(PauliLetter a, PauliLetter b) {
  if (a == b) return {1.0, true, PauliLetter::X};
  // XY = iZ, YZ = iX, ZX = iY; reversed order picks up -i.
  auto third = [](PauliLetter p, PauliLetter q) {
    int s = letter_rank(p) + letter_rank(q);
    // ranks: X=0, Y=1, Z=2; missing letter has rank 3 - s mod 3.
    int r = 3 - s;
    switch (r) {
      case 0: return PauliLetter::X;
      case 1: return PauliLetter::Y;
      default: return PauliLetter::Z;
    }
  };
  bool cyclic = (letter_rank(b) - letter_rank(a) + 3) % 3 == 1;
  return {cyclic ? kI : -kI, false, third(a, b)};
}

// Action of a single letter on a basis bit: P|b> = phase * |b'>.
void apply_letter(PauliLetter l, int bit, Complex& phase, int& new_bit) {
  switch (l) {
    case PauliLetter::X:
      new_bit = 1 - bit;
      break;
    case PauliLetter::Y:
      new_bit = 1 - bit;
      phase *= bit ? -kI : kI;
      break;
    case PauliLetter::Z:
      new_bit = bit;
      if (bit) phase = -phase;
      break;
  }
}

}  // namespace

std::string PauliString::label() const {
  if (factors.empty()) return "I";
  std::ostringstream out;
  bool first = true;
  for (const auto& [q, l] : factors) {
    if (!first) out << ' ';
    out << static_cast<char>(l) << q;
    first = false;
  }
  return out.str();
}

bool PauliString::key_less(const PauliString& a, const PauliString& b) {
  auto ita = a.factors.begin();
  auto itb = b.factors.begin();
  for (; ita != a.factors.end() && itb != b.factors.end(); ++ita, ++itb) {
    if (ita->first != itb->first) return ita->first < itb->first;
    if (ita->second != itb->second)
      return letter_rank(ita->second) < letter_rank(itb->second);
  }
  return a.factors.size() < b.factors.size();
}

bool PauliString::key_equal(const PauliString& a, const PauliString& b) {
  return a.factors == b.factors;
}

PauliString multiply(const PauliString& a, const PauliString& b) {
  PauliString out;
  out.coefficient = a.coefficient * b.coefficient;
  auto ita = a.factors.begin();
  auto itb = b.factors.begin();
  while (ita != a.factors.end() || itb != b.factors.end()) {
    if (itb == b.factors.end() || (ita != a.factors.end() && ita->first < itb->first)) {
      out.factors.emplace(ita->first, ita->second);
      ++ita;
    } else if (ita == a.factors.end() || itb->first < ita->first) {
      out.factors.emplace(itb->first, itb->second);
      ++itb;
    } else {
      SingleProduct p = multiply_letters(ita->second, itb->second);
      out.coefficient *= p.phase;
      if (!p.identity) out.factors.emplace(ita->first, p.letter);
      ++ita;
      ++itb;
    }
  }
  return out;
}

QubitOperator::QubitOperator(const std::vector<PauliString>& terms) : terms_(terms) {
  canonicalize();
}

QubitOperator QubitOperator::identity(Complex coefficient) {
  QubitOperator op;
  op.add_term(PauliString({}, coefficient));
  return op;
}

void QubitOperator::add_term(const PauliString& term) {
  terms_.push_back(term);
  canonicalize();
}

void QubitOperator::add_term(const std::map<int, PauliLetter>& factors, Complex coefficient) {
  add_term(PauliString(factors, coefficient));
}

void QubitOperator::canonicalize() {
  for (const auto& t : terms_) {
    if (!t.factors.empty() && t.factors.begin()->first < 0)
      throw std::out_of_range("PauliString qubit indices must be non-negative");
  }
  std::stable_sort(terms_.begin(), terms_.end(), PauliString::key_less);
  std::vector<PauliString> merged;
  for (const auto& t : terms_) {
    if (!merged.empty() && PauliString::key_equal(merged.back(), t)) {
      merged.back().coefficient += t.coefficient;
    } else {
      merged.push_back(t);
    }
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(),
                              [](const PauliString& t) {
                                return std::abs(t.coefficient) < kPruneTol;
                              }),
               merged.end());
  terms_ = std::move(merged);
}

int QubitOperator::max_qubit() const {
  int m = -1;
  for (const auto& t : terms_) m = std::max(m, t.max_qubit());
  return m;
}

Complex QubitOperator::coefficient_of(const std::map<int, PauliLetter>& factors) const {
  for (const auto& t : terms_)
    if (t.factors == factors) return t.coefficient;
  return 0.0;
}

bool QubitOperator::is_hermitian(double tol) const {
  return max_imag_coefficient() < tol;
}

double QubitOperator::max_imag_coefficient() const {
  double m = 0.0;
  for (const auto& t : terms_) m = std::max(m, std::abs(t.coefficient.imag()));
  return m;
}

QubitOperator QubitOperator::operator+(const QubitOperator& other) const {
  std::vector<PauliString> all = terms_;
  all.insert(all.end(), other.terms_.begin(), other.terms_.end());
  return QubitOperator(all);
}

QubitOperator QubitOperator::operator-(const QubitOperator& other) const {
  return *this + other * Complex(-1.0);
}

QubitOperator QubitOperator::operator*(const QubitOperator& other) const {
  std::vector<PauliString> products;
  products.reserve(terms_.size() * other.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : other.terms_) products.push_back(multiply(a, b));
  return QubitOperator(products);
}

QubitOperator QubitOperator::operator*(Complex scalar) const {
  std::vector<PauliString> scaled = terms_;
  for (auto& t : scaled) t.coefficient *= scalar;
  return QubitOperator(scaled);
}

nlohmann::json QubitOperator::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& t : terms_) {
    out.push_back({{"term", t.label()},
                   {"coeff", {t.coefficient.real(), t.coefficient.imag()}}});
  }
  return out;
}

QubitOperator QubitOperator::from_json(const nlohmann::json& j) {
  std::vector<PauliString> terms;
  for (const auto& entry : j) {
    PauliString t;
    const auto coeff = entry.at("coeff");
    t.coefficient = Complex(coeff.at(0).get<double>(), coeff.at(1).get<double>());
    const std::string label = entry.at("term").get<std::string>();
    if (label != "I") {
      std::istringstream in(label);
      std::string tok;
      while (in >> tok) {
        if (tok.size() < 2) throw std::invalid_argument("bad Pauli term: " + label);
        char c = tok[0];
        if (c != 'X' && c != 'Y' && c != 'Z')
          throw std::invalid_argument("bad Pauli letter in term: " + label);
        int q = std::stoi(tok.substr(1));
        t.factors[q] = static_cast<PauliLetter>(c);
      }
    }
    terms.push_back(t);
  }
  return QubitOperator(terms);
}

Eigen::MatrixXcd to_dense_matrix(const PauliString& term, int n_qubits) {
  if (term.max_qubit() >= n_qubits)
    throw std::out_of_range("Pauli term acts on qubit outside the register");
  const std::uint64_t dim = 1ULL << n_qubits;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::uint64_t col = 0; col < dim; ++col) {
    Complex phase = term.coefficient;
    std::uint64_t row = col;
    for (const auto& [q, l] : term.factors) {
      int bit = static_cast<int>((row >> q) & 1ULL);
      int new_bit = bit;
      apply_letter(l, bit, phase, new_bit);
      if (new_bit != bit) row ^= (1ULL << q);
    }
    m(row, col) += phase;
  }
  return m;
}

Eigen::MatrixXcd to_dense_matrix(const QubitOperator& op, int n_qubits) {
  const std::uint64_t dim = 1ULL << n_qubits;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : op.terms()) m += to_dense_matrix(t, n_qubits);
  return m;
}

namespace {

// <psi|P|psi> without building the dense matrix.
Complex pauli_expectation(const PauliString& term, const StateVector& state) {
  Complex acc = 0.0;
  const auto& amps = state.amplitudes();
  for (std::uint64_t col = 0; col < amps.size(); ++col) {
    if (amps[col] == Complex(0.0)) continue;
    Complex phase = term.coefficient;
    std::uint64_t row = col;
    for (const auto& [q, l] : term.factors) {
      int bit = static_cast<int>((row >> q) & 1ULL);
      int new_bit = bit;
      apply_letter(l, bit, phase, new_bit);
      if (new_bit != bit) row ^= (1ULL << q);
    }
    acc += std::conj(amps[row]) * phase * amps[col];
  }
  return acc;
}

double finalize_expectation(Complex value) {
  if (std::abs(value.imag()) > 1e-10)
    throw std::runtime_error("expectation has a non-negligible imaginary part");
  return value.real();
}

}  // namespace

double expectation(const QubitOperator& op, const StateVector& state) {
  if (!op.is_hermitian(1e-10))
    throw std::invalid_argument("expectation requires a Hermitian operator");
  if (op.max_qubit() >= state.n_qubits())
    throw std::out_of_range("operator and state dimensions do not match");
  Complex acc = 0.0;
  for (const auto& t : op.terms()) acc += pauli_expectation(t, state);
  return finalize_expectation(acc);
}

double expectation(const QubitOperator& op, const DensityMatrix& rho) {
  if (!op.is_hermitian(1e-10))
    throw std::invalid_argument("expectation requires a Hermitian operator");
  if (op.max_qubit() >= rho.n_qubits())
    throw std::out_of_range("operator and state dimensions do not match");
  Eigen::MatrixXcd m = to_dense_matrix(op, rho.n_qubits());
  return finalize_expectation((rho.matrix() * m).trace());
}

}  // namespace h2sim

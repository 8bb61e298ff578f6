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

#include "h2sim/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "h2sim/rng.hpp"

namespace h2sim {

namespace {

constexpr Complex kI{0.0, 1.0};

// Realizable single-gate range of the entangling CZ(phi); outside it the
// rotation is optionally executed as two physical gates (see NoiseModel).
constexpr double kCzMinPhi = 0.25;
constexpr double kCzMaxPhi = 5.0;

}  // namespace

const char* gate_kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::Rx: return "Rx";
    case GateKind::Ry: return "Ry";
    case GateKind::Rz: return "Rz";
    case GateKind::CZ: return "CZ";
    case GateKind::CRz: return "CRz";
  }
  return "?";
}

GateKind gate_kind_from_name(const std::string& name) {
  if (name == "Rx") return GateKind::Rx;
  if (name == "Ry") return GateKind::Ry;
  if (name == "Rz") return GateKind::Rz;
  if (name == "CZ") return GateKind::CZ;
  if (name == "CRz") return GateKind::CRz;
  throw std::invalid_argument("unknown gate kind: " + name);
}

Eigen::Matrix2cd Gate::matrix1q() const {
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  Eigen::Matrix2cd m;
  switch (kind) {
    case GateKind::Rx:
      m << c, -kI * s, -kI * s, c;
      return m;
    case GateKind::Ry:
      m << c, -s, s, c;
      return m;
    case GateKind::Rz:
      m << std::exp(-kI * (angle / 2.0)), 0.0, 0.0, std::exp(kI * (angle / 2.0));
      return m;
    default:
      throw std::logic_error("matrix1q called on a two-qubit gate");
  }
}

void Circuit::append(const Circuit& other) {
  gates.insert(gates.end(), other.gates.begin(), other.gates.end());
}

Circuit Circuit::inverse() const {
  Circuit inv(n_qubits);
  inv.gates.assign(gates.rbegin(), gates.rend());
  for (auto& g : inv.gates) g.angle = -g.angle;
  return inv;
}

void Circuit::validate() const {
  for (const auto& g : gates) {
    for (int t : g.targets) {
      if (t < 0 || t >= n_qubits)
        throw std::out_of_range("gate target outside the register");
    }
    if (g.is_two_qubit() && g.targets[0] == g.targets[1])
      throw std::invalid_argument("two-qubit gate must act on distinct qubits");
    if ((g.kind == GateKind::CZ || g.kind == GateKind::CRz) != g.is_two_qubit())
      throw std::invalid_argument("gate arity does not match its kind");
  }
}

nlohmann::json Circuit::to_json() const {
  nlohmann::json gs = nlohmann::json::array();
  for (const auto& g : gates) {
    gs.push_back({{"kind", gate_kind_name(g.kind)},
                  {"targets", g.targets},
                  {"angle", g.angle}});
  }
  return {{"n_qubits", n_qubits}, {"gates", gs}};
}

Circuit Circuit::from_json(const nlohmann::json& j) {
  Circuit c(j.at("n_qubits").get<int>());
  for (const auto& entry : j.at("gates")) {
    Gate g;
    g.kind = gate_kind_from_name(entry.at("kind").get<std::string>());
    g.targets = entry.at("targets").get<std::vector<int>>();
    g.angle = entry.at("angle").get<double>();
    c.append(g);
  }
  c.validate();
  return c;
}

Eigen::MatrixXcd embed_gate(const Gate& g, int n_qubits) {
  const std::uint64_t dim = 1ULL << n_qubits;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  if (!g.is_two_qubit()) {
    const Eigen::Matrix2cd u = g.matrix1q();
    const int q = g.targets[0];
    for (std::uint64_t col = 0; col < dim; ++col) {
      const int bit = static_cast<int>((col >> q) & 1ULL);
      m(col & ~(1ULL << q), col) += u(0, bit);
      m(col | (1ULL << q), col) += u(1, bit);
    }
    return m;
  }
  const int a = g.targets[0];
  const int b = g.targets[1];
  for (std::uint64_t col = 0; col < dim; ++col) {
    const int ba = static_cast<int>((col >> a) & 1ULL);
    const int bb = static_cast<int>((col >> b) & 1ULL);
    Complex diag = 1.0;
    if (g.kind == GateKind::CZ) {
      if (ba == 1 && bb == 1) diag = std::exp(kI * g.angle);
    } else if (g.kind == GateKind::CRz) {
      if (ba == 1) diag = std::exp(kI * (g.angle / 2.0) * (bb ? 1.0 : -1.0));
    } else {
      throw std::logic_error("unsupported two-qubit gate kind");
    }
    m(col, col) = diag;
  }
  return m;
}

Eigen::MatrixXcd circuit_unitary(const Circuit& c) {
  c.validate();
  const std::uint64_t dim = 1ULL << c.n_qubits;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
  for (const auto& g : c.gates) u = embed_gate(g, c.n_qubits) * u;
  return u;
}

StateVector::StateVector(int n_qubits)
    : n_qubits_(n_qubits), amplitudes_(1ULL << n_qubits, Complex(0.0)) {
  amplitudes_[0] = 1.0;
}

StateVector StateVector::basis_state(int n_qubits, std::uint64_t index) {
  StateVector s(n_qubits);
  s.amplitudes_[0] = 0.0;
  s.amplitudes_.at(index) = 1.0;
  return s;
}

double StateVector::norm_sq() const {
  double n = 0.0;
  for (const auto& a : amplitudes_) n += std::norm(a);
  return n;
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> p(amplitudes_.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::norm(amplitudes_[i]);
  return p;
}

DensityMatrix::DensityMatrix(int n_qubits)
    : n_qubits_(n_qubits),
      matrix_(Eigen::MatrixXcd::Zero(1LL << n_qubits, 1LL << n_qubits)) {
  matrix_(0, 0) = 1.0;
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
  DensityMatrix rho(psi.n_qubits());
  Eigen::Map<const Eigen::VectorXcd> v(psi.amplitudes().data(),
                                       static_cast<Eigen::Index>(psi.dim()));
  rho.matrix_ = v * v.adjoint();
  return rho;
}

double DensityMatrix::trace_real() const { return matrix_.trace().real(); }

std::vector<double> DensityMatrix::probabilities() const {
  std::vector<double> p(static_cast<std::size_t>(dim()));
  for (Eigen::Index i = 0; i < dim(); ++i) p[i] = matrix_(i, i).real();
  return p;
}

bool NoiseModel::is_trivial() const {
  return std::isinf(t1) && std::isinf(t2) && overrotation == 0.0 &&
         depolarizing_prob == 0.0;
}

void NoiseModel::validate() const {
  if (t1 <= 0 || t2 <= 0) throw std::invalid_argument("noise times must be positive");
  if (t2 > 2.0 * t1 + 1e-12)
    throw std::invalid_argument("noise model requires t2 <= 2*t1");
  if (depolarizing_prob < 0.0 || depolarizing_prob > 1.0)
    throw std::invalid_argument("depolarizing probability must lie in [0, 1]");
  if (duration_1q <= 0.0 || duration_2q <= 0.0)
    throw std::invalid_argument("gate durations must be positive");
}

StateVector apply_gate(const StateVector& state, const Gate& gate) {
  for (int t : gate.targets) {
    if (t < 0 || t >= state.n_qubits())
      throw std::out_of_range("gate target outside the register");
  }
  if (gate.is_two_qubit() && gate.targets[0] == gate.targets[1])
    throw std::invalid_argument("two-qubit gate must act on distinct qubits");

  StateVector out = state;
  auto& amps = out.amplitudes();
  const std::uint64_t dim = out.dim();

  if (!gate.is_two_qubit()) {
    const Eigen::Matrix2cd u = gate.matrix1q();
    const std::uint64_t mask = 1ULL << gate.targets[0];
    for (std::uint64_t i = 0; i < dim; ++i) {
      if (i & mask) continue;
      const Complex a0 = amps[i];
      const Complex a1 = amps[i | mask];
      amps[i] = u(0, 0) * a0 + u(0, 1) * a1;
      amps[i | mask] = u(1, 0) * a0 + u(1, 1) * a1;
    }
  } else {
    const std::uint64_t ma = 1ULL << gate.targets[0];
    const std::uint64_t mb = 1ULL << gate.targets[1];
    if (gate.kind == GateKind::CZ) {
      const Complex phase = std::exp(kI * gate.angle);
      for (std::uint64_t i = 0; i < dim; ++i)
        if ((i & ma) && (i & mb)) amps[i] *= phase;
    } else if (gate.kind == GateKind::CRz) {
      const Complex lo = std::exp(-kI * (gate.angle / 2.0));
      const Complex hi = std::exp(kI * (gate.angle / 2.0));
      for (std::uint64_t i = 0; i < dim; ++i)
        if (i & ma) amps[i] *= (i & mb) ? hi : lo;
    } else {
      throw std::logic_error("unsupported two-qubit gate kind");
    }
  }

  if (std::abs(out.norm_sq() - 1.0) > 1e-10)
    throw std::runtime_error("state norm drifted beyond tolerance");
  return out;
}

StateVector apply_circuit(const StateVector& state, const Circuit& circuit) {
  if (circuit.n_qubits != state.n_qubits())
    throw std::invalid_argument("circuit and state dimensions do not match");
  circuit.validate();
  StateVector out = state;
  for (const auto& g : circuit.gates) out = apply_gate(out, g);
  return out;
}

std::vector<Eigen::Matrix2cd> decoherence_kraus(const NoiseModel& noise, double duration) {
  std::vector<Eigen::Matrix2cd> ops;
  const double gamma = std::isinf(noise.t1) ? 0.0 : 1.0 - std::exp(-duration / noise.t1);
  // Pure-dephasing rate: 1/tphi = 1/t2 - 1/(2 t1). Off-diagonals then decay
  // by exactly e^{-d/t2} once amplitude damping is included.
  double inv_tphi = 0.0;
  if (!std::isinf(noise.t2)) inv_tphi = 1.0 / noise.t2;
  if (!std::isinf(noise.t1)) inv_tphi -= 1.0 / (2.0 * noise.t1);
  inv_tphi = std::max(0.0, inv_tphi);
  const double lambda = 1.0 - std::exp(-2.0 * duration * inv_tphi);

  Eigen::Matrix2cd ad0, ad1, pd0, pd1;
  ad0 << 1.0, 0.0, 0.0, std::sqrt(1.0 - gamma);
  ad1 << 0.0, std::sqrt(gamma), 0.0, 0.0;
  pd0 << 1.0, 0.0, 0.0, std::sqrt(1.0 - lambda);
  pd1 << 0.0, 0.0, 0.0, std::sqrt(lambda);

  // Compose phase damping after amplitude damping into a single Kraus set.
  for (const auto& pd : {pd0, pd1}) {
    for (const auto& ad : {ad0, ad1}) {
      Eigen::Matrix2cd k = pd * ad;
      if (k.norm() > 0.0) ops.push_back(k);
    }
  }
  return ops;
}

namespace {

Eigen::MatrixXcd embed_1q_operator(const Eigen::Matrix2cd& u, int q, int n_qubits) {
  const std::uint64_t dim = 1ULL << n_qubits;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::uint64_t col = 0; col < dim; ++col) {
    const int bit = static_cast<int>((col >> q) & 1ULL);
    m(col & ~(1ULL << q), col) += u(0, bit);
    m(col | (1ULL << q), col) += u(1, bit);
  }
  return m;
}

void apply_channel(Eigen::MatrixXcd& rho, const std::vector<Eigen::MatrixXcd>& kraus) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rho.rows(), rho.cols());
  for (const auto& k : kraus) out += k * rho * k.adjoint();
  rho = std::move(out);
}

void apply_gate_noise(Eigen::MatrixXcd& rho, const NoiseModel& noise, double duration,
                      const std::vector<int>& qubits, int n_qubits) {
  const auto kraus1q = decoherence_kraus(noise, duration);
  for (int q : qubits) {
    if (kraus1q.size() > 1) {
      std::vector<Eigen::MatrixXcd> embedded;
      embedded.reserve(kraus1q.size());
      for (const auto& k : kraus1q) embedded.push_back(embed_1q_operator(k, q, n_qubits));
      apply_channel(rho, embedded);
    }
    if (noise.depolarizing_prob > 0.0) {
      const double p = noise.depolarizing_prob;
      Eigen::Matrix2cd x, y, z;
      x << 0, 1, 1, 0;
      y << 0, -kI, kI, 0;
      z << 1, 0, 0, -1;
      std::vector<Eigen::MatrixXcd> dep;
      dep.push_back(std::sqrt(1.0 - p) *
                    Eigen::MatrixXcd::Identity(rho.rows(), rho.cols()));
      for (const auto& sigma : {x, y, z})
        dep.push_back(std::sqrt(p / 3.0) * embed_1q_operator(sigma, q, n_qubits));
      apply_channel(rho, dep);
    }
  }
}

}  // namespace

DensityMatrix apply_circuit_noisy(const DensityMatrix& rho, const Circuit& circuit,
                                  const NoiseModel& noise) {
  if (circuit.n_qubits != rho.n_qubits())
    throw std::invalid_argument("circuit and state dimensions do not match");
  circuit.validate();
  noise.validate();

  DensityMatrix out = rho;
  const int n = rho.n_qubits();

  std::vector<Gate> physical;
  for (const auto& g : circuit.gates) {
    if (noise.cz_split && g.kind == GateKind::CZ &&
        (std::abs(g.angle) < kCzMinPhi || std::abs(g.angle) > kCzMaxPhi)) {
      Gate half = g;
      half.angle = g.angle / 2.0;
      physical.push_back(half);
      physical.push_back(half);
    } else {
      physical.push_back(g);
    }
  }

  for (const auto& g : physical) {
    Gate scaled = g;
    scaled.angle *= (1.0 + noise.overrotation);
    out.matrix() = embed_gate(scaled, n) * out.matrix() *
                   embed_gate(scaled, n).adjoint();
    const double duration = g.is_two_qubit() ? noise.duration_2q : noise.duration_1q;
    apply_gate_noise(out.matrix(), noise, duration, g.targets, n);
  }

  if (std::abs(out.trace_real() - 1.0) > 1e-10)
    throw std::runtime_error("density matrix trace drifted beyond tolerance");
  return out;
}

std::vector<std::uint64_t> sample_counts(const std::vector<double>& probabilities,
                                         std::uint64_t shots, std::uint64_t seed) {
  if (shots == 0) throw std::invalid_argument("sampling requires at least one shot");
  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> counts(probabilities.size(), 0);
  // Sequential binomial decomposition of the multinomial draw.
  std::uint64_t remaining = shots;
  double mass = 1.0;
  for (std::size_t i = 0; i + 1 < probabilities.size() && remaining > 0; ++i) {
    const double p = std::clamp(probabilities[i] / std::max(mass, 1e-300), 0.0, 1.0);
    std::binomial_distribution<std::uint64_t> binom(remaining, p);
    const std::uint64_t c = binom(rng);
    counts[i] = c;
    remaining -= c;
    mass -= probabilities[i];
  }
  if (!counts.empty()) counts.back() += remaining;
  return counts;
}

std::vector<std::uint64_t> sample_pauli(const StateVector& state, const Circuit& basis_change,
                                        std::uint64_t shots, std::uint64_t seed) {
  StateVector rotated = apply_circuit(state, basis_change);
  return sample_counts(rotated.probabilities(), shots, seed);
}

std::vector<std::uint64_t> sample_pauli(const DensityMatrix& rho, const Circuit& basis_change,
                                        std::uint64_t shots, std::uint64_t seed) {
  Eigen::MatrixXcd u = circuit_unitary(basis_change);
  DensityMatrix rotated = rho;
  rotated.matrix() = u * rho.matrix() * u.adjoint();
  return sample_counts(rotated.probabilities(), shots, seed);
}

}  // namespace h2sim

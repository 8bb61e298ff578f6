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
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "h2sim/errors.hpp"
#include "h2sim/units.hpp"

namespace h2sim {

namespace {

using std::numbers::pi;

double primitive_norm(double a) { return std::pow(2.0 * a / pi, 0.75); }

double overlap_prim(double a, double b, double r2) {
  const double p = a + b;
  return std::pow(pi / p, 1.5) * std::exp(-a * b * r2 / p);
}

double kinetic_prim(double a, double b, double r2) {
  const double p = a + b;
  const double mu = a * b / p;
  return mu * (3.0 - 2.0 * mu * r2) * std::pow(pi / p, 1.5) * std::exp(-mu * r2);
}

double nuclear_prim(double a, double b, const Eigen::Vector3d& A, const Eigen::Vector3d& B,
                    const Eigen::Vector3d& C) {
  const double p = a + b;
  const Eigen::Vector3d P = (a * A + b * B) / p;
  const double r2ab = (A - B).squaredNorm();
  return -(2.0 * pi / p) * std::exp(-a * b * r2ab / p) * boys_f0(p * (P - C).squaredNorm());
}

double eri_prim(double a, const Eigen::Vector3d& A, double b, const Eigen::Vector3d& B,
                double c, const Eigen::Vector3d& C, double d, const Eigen::Vector3d& D) {
  const double p = a + b;
  const double q = c + d;
  const Eigen::Vector3d P = (a * A + b * B) / p;
  const Eigen::Vector3d Q = (c * C + d * D) / q;
  const double pref = 2.0 * std::pow(pi, 2.5) / (p * q * std::sqrt(p + q));
  const double expo = std::exp(-a * b * (A - B).squaredNorm() / p -
                               c * d * (C - D).squaredNorm() / q);
  return pref * expo * boys_f0(p * q / (p + q) * (P - Q).squaredNorm());
}

template <typename Prim>
double contract2(const GaussianBasisFunction& fa, const GaussianBasisFunction& fb, Prim prim) {
  double acc = 0.0;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      acc += fa.coefficients[i] * fb.coefficients[j] * prim(fa.exponents[i], fb.exponents[j]);
  return acc;
}

}  // namespace

double boys_f0(double x) {
  if (x < 1e-12) return 1.0 - x / 3.0;
  if (x < 1e-5) return 1.0 - x / 3.0 + x * x / 10.0;
  return 0.5 * std::sqrt(pi / x) * std::erf(std::sqrt(x));
}

GaussianBasisFunction GaussianBasisFunction::sto6g_1s(const Eigen::Vector3d& center_bohr) {
  GaussianBasisFunction f;
  f.center = center_bohr;
  f.exponents = kSto6gExponents;
  for (int i = 0; i < 6; ++i)
    f.coefficients[i] = kSto6gCoefficients[i] * primitive_norm(kSto6gExponents[i]);
  const double s = f.self_overlap();
  for (auto& c : f.coefficients) c /= std::sqrt(s);
  return f;
}

double GaussianBasisFunction::self_overlap() const { return overlap(*this, *this); }

double overlap(const GaussianBasisFunction& a, const GaussianBasisFunction& b) {
  const double r2 = (a.center - b.center).squaredNorm();
  return contract2(a, b, [r2](double x, double y) { return overlap_prim(x, y, r2); });
}

double kinetic(const GaussianBasisFunction& a, const GaussianBasisFunction& b) {
  const double r2 = (a.center - b.center).squaredNorm();
  return contract2(a, b, [r2](double x, double y) { return kinetic_prim(x, y, r2); });
}

double nuclear_attraction(const GaussianBasisFunction& a, const GaussianBasisFunction& b,
                          const Eigen::Vector3d& c_bohr) {
  return contract2(a, b, [&](double x, double y) {
    return nuclear_prim(x, y, a.center, b.center, c_bohr);
  });
}

double electron_repulsion(const GaussianBasisFunction& a, const GaussianBasisFunction& b,
                          const GaussianBasisFunction& c, const GaussianBasisFunction& d) {
  double acc = 0.0;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      for (int k = 0; k < 6; ++k)
        for (int l = 0; l < 6; ++l)
          acc += a.coefficients[i] * b.coefficients[j] * c.coefficients[k] *
                 d.coefficients[l] *
                 eri_prim(a.exponents[i], a.center, b.exponents[j], b.center,
                          c.exponents[k], c.center, d.exponents[l], d.center);
  return acc;
}

MolecularIntegrals compute_integrals(double r_angstrom) {
  if (!(r_angstrom > 0.0))
    throw std::invalid_argument("bond length must be positive");

  MolecularIntegrals out;
  out.r_angstrom = r_angstrom;
  out.r_bohr = angstrom_to_bohr(r_angstrom);
  out.e_nuc = 1.0 / out.r_bohr;

  const Eigen::Vector3d atom_a(0.0, 0.0, 0.0);
  const Eigen::Vector3d atom_b(0.0, 0.0, out.r_bohr);
  const GaussianBasisFunction A = GaussianBasisFunction::sto6g_1s(atom_a);
  const GaussianBasisFunction B = GaussianBasisFunction::sto6g_1s(atom_b);
  const std::array<const GaussianBasisFunction*, 2> ao = {&A, &B};

  const double s_ab = overlap(A, B);
  out.overlap_ab = s_ab;
  const double den_u = 2.0 - 2.0 * s_ab;
  if (den_u < 1e-12)
    throw NumericalGuard("sigma_u normalization 2-2S underflows at this geometry");

  // AO core Hamiltonian.
  Eigen::Matrix2d h_ao;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      h_ao(i, j) = kinetic(*ao[i], *ao[j]) +
                   nuclear_attraction(*ao[i], *ao[j], atom_a) +
                   nuclear_attraction(*ao[i], *ao[j], atom_b);
    }
  }

  // Symmetry-determined molecular orbitals: rows of C are (g, u).
  Eigen::Matrix2d C;
  const double ng = 1.0 / std::sqrt(2.0 + 2.0 * s_ab);
  const double nu = 1.0 / std::sqrt(den_u);
  C << ng, ng, nu, -nu;

  out.h_pq = C * h_ao * C.transpose();

  // AO electron repulsion, chemists' (ij|kl), then four-index transform.
  double eri_ao[2][2][2][2];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          eri_ao[i][j][k][l] = electron_repulsion(*ao[i], *ao[j], *ao[k], *ao[l]);

  double eri_mo[2][2][2][2] = {};
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q)
      for (int r = 0; r < 2; ++r)
        for (int s = 0; s < 2; ++s) {
          double acc = 0.0;
          for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
              for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                  acc += C(p, i) * C(q, j) * C(r, k) * C(s, l) * eri_ao[i][j][k][l];
          eri_mo[p][q][r][s] = acc;
        }

  // h_pqrs = (ps|qr) in chemists' notation.
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q)
      for (int r = 0; r < 2; ++r)
        for (int s = 0; s < 2; ++s)
          out.h_pqrs[p][q][r][s] = eri_mo[p][s][q][r];

  // Closed-shell Fock matrix with sigma_g doubly occupied. No SCF loop is
  // needed: the symmetry orbitals already diagonalize it, which we guard.
  auto chem = [&](int p, int q, int r, int s) { return eri_mo[p][q][r][s]; };
  Eigen::Matrix2d fock;
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q)
      fock(p, q) = out.h_pq(p, q) + 2.0 * chem(p, q, 0, 0) - chem(p, 0, 0, q);
  if (std::abs(fock(0, 1)) > 1e-8)
    throw NumericalGuard("Fock matrix is not diagonal in the symmetry orbitals");
  out.orbital_energies = {fock(0, 0), fock(1, 1)};
  return out;
}

// ---- second quantization -------------------------------------------------

namespace {

int spatial_of(int so) { return so >> 1; }
int spin_of(int so) { return so & 1; }

}  // namespace

double spin_orbital_h2(const MolecularIntegrals& ints, int p, int q, int r, int s) {
  if (spin_of(p) != spin_of(s) || spin_of(q) != spin_of(r)) return 0.0;
  return ints.h_pqrs[spatial_of(p)][spatial_of(q)][spatial_of(r)][spatial_of(s)];
}

FermionOperator::FermionOperator(const std::vector<FermionTerm>& terms) : terms_(terms) {
  canonicalize();
}

void FermionOperator::add_term(const FermionTerm& term) {
  terms_.push_back(term);
  canonicalize();
}

int FermionOperator::n_modes() const {
  int m = 0;
  for (const auto& t : terms_)
    for (const auto& op : t.ops) m = std::max(m, op.orbital + 1);
  return m;
}

void FermionOperator::canonicalize() {
  std::vector<FermionTerm> cleaned;
  for (auto term : terms_) {
    // Split into creation / annihilation blocks; reject mixed ordering.
    std::size_t split = 0;
    while (split < term.ops.size() && term.ops[split].create) ++split;
    for (std::size_t i = split; i < term.ops.size(); ++i)
      if (term.ops[i].create)
        throw std::invalid_argument("ladder string must list creations first");

    auto sort_block = [&term](std::size_t lo, std::size_t hi, bool descending) -> bool {
      // Bubble sort to count transpositions; blocks have at most 2 entries
      // here but the code stays general.
      for (std::size_t i = lo; i < hi; ++i) {
        for (std::size_t j = lo; j + 1 < hi - (i - lo); ++j) {
          const bool out_of_order = descending
                                        ? term.ops[j].orbital < term.ops[j + 1].orbital
                                        : term.ops[j].orbital > term.ops[j + 1].orbital;
          if (out_of_order) {
            std::swap(term.ops[j], term.ops[j + 1]);
            term.coefficient = -term.coefficient;
          }
        }
      }
      for (std::size_t i = lo; i + 1 < hi; ++i)
        if (term.ops[i].orbital == term.ops[i + 1].orbital) return false;  // nilpotent
      return true;
    };
    if (!sort_block(0, split, /*descending=*/true)) continue;
    if (!sort_block(split, term.ops.size(), /*descending=*/false)) continue;
    cleaned.push_back(term);
  }

  auto key_less = [](const FermionTerm& a, const FermionTerm& b) {
    if (a.ops.size() != b.ops.size()) return a.ops.size() < b.ops.size();
    for (std::size_t i = 0; i < a.ops.size(); ++i) {
      if (a.ops[i].create != b.ops[i].create) return a.ops[i].create < b.ops[i].create;
      if (a.ops[i].orbital != b.ops[i].orbital) return a.ops[i].orbital < b.ops[i].orbital;
    }
    return false;
  };
  auto key_equal = [](const FermionTerm& a, const FermionTerm& b) {
    if (a.ops.size() != b.ops.size()) return false;
    for (std::size_t i = 0; i < a.ops.size(); ++i)
      if (a.ops[i].create != b.ops[i].create || a.ops[i].orbital != b.ops[i].orbital)
        return false;
    return true;
  };
  std::stable_sort(cleaned.begin(), cleaned.end(), key_less);
  std::vector<FermionTerm> merged;
  for (const auto& t : cleaned) {
    if (!merged.empty() && key_equal(merged.back(), t))
      merged.back().coefficient += t.coefficient;
    else
      merged.push_back(t);
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(),
                              [](const FermionTerm& t) {
                                return std::abs(t.coefficient) < 1e-14;
                              }),
               merged.end());
  terms_ = std::move(merged);
}

FermionOperator second_quantized(const MolecularIntegrals& ints) {
  std::vector<FermionTerm> terms;
  terms.push_back({{}, ints.e_nuc});

  for (int p = 0; p < 4; ++p) {
    for (int q = 0; q < 4; ++q) {
      if (spin_of(p) != spin_of(q)) continue;
      const double h = ints.h_pq(spatial_of(p), spatial_of(q));
      if (h == 0.0) continue;
      terms.push_back({{{p, true}, {q, false}}, h});
    }
  }
  for (int p = 0; p < 4; ++p)
    for (int q = 0; q < 4; ++q)
      for (int r = 0; r < 4; ++r)
        for (int s = 0; s < 4; ++s) {
          const double h = spin_orbital_h2(ints, p, q, r, s);
          if (h == 0.0) continue;
          terms.push_back({{{p, true}, {q, true}, {r, false}, {s, false}}, 0.5 * h});
        }
  return FermionOperator(terms);
}

// ---- fermion-to-qubit transforms ------------------------------------------

namespace {

// One ladder operator as a two-term QubitOperator:
//   a   = (x_part + i y_part) / 2,   a^dag = (x_part - i y_part) / 2.
struct LadderImage {
  std::vector<PauliString> terms;  // exactly two
};

LadderImage ladder_image(const std::map<int, PauliLetter>& x_part,
                         const std::map<int, PauliLetter>& y_part, bool create) {
  LadderImage img;
  img.terms.push_back(PauliString(x_part, 0.5));
  img.terms.push_back(PauliString(y_part, create ? Complex(0.0, -0.5) : Complex(0.0, 0.5)));
  return img;
}

QubitOperator transform_with(const FermionOperator& op, int n_modes,
                             const std::function<LadderImage(int, bool)>& image) {
  std::vector<PauliString> acc;
  for (const auto& term : op.terms()) {
    std::vector<PauliString> partial = {PauliString({}, term.coefficient)};
    for (const auto& lop : term.ops) {
      if (lop.orbital >= n_modes)
        throw std::out_of_range("ladder index exceeds the mode count");
      LadderImage img = image(lop.orbital, lop.create);
      std::vector<PauliString> next;
      next.reserve(partial.size() * img.terms.size());
      for (const auto& a : partial)
        for (const auto& b : img.terms) next.push_back(multiply(a, b));
      partial = std::move(next);
    }
    acc.insert(acc.end(), partial.begin(), partial.end());
  }
  return QubitOperator(acc);
}

// Fenwick-tree index sets of the Bravyi-Kitaev encoding (1-based internally).
int lowbit(int i) { return i & (-i); }

std::vector<int> bk_update_set(int j, int n) {
  std::vector<int> out;
  for (int i = j + 1 + lowbit(j + 1); i <= n; i += lowbit(i)) out.push_back(i - 1);
  return out;
}

std::vector<int> bk_parity_set(int j) {
  std::vector<int> out;
  for (int i = j; i > 0; i -= lowbit(i)) out.push_back(i - 1);
  return out;
}

std::vector<int> bk_flip_set(int j) {
  std::vector<int> out;
  const int node = j + 1;
  for (int c = node - 1; c > node - lowbit(node); c -= lowbit(c)) out.push_back(c - 1);
  return out;
}

}  // namespace

QubitOperator jordan_wigner(const FermionOperator& op, int n_modes) {
  auto image = [](int j, bool create) {
    std::map<int, PauliLetter> x_part, y_part;
    for (int k = 0; k < j; ++k) {
      x_part[k] = PauliLetter::Z;
      y_part[k] = PauliLetter::Z;
    }
    x_part[j] = PauliLetter::X;
    y_part[j] = PauliLetter::Y;
    return ladder_image(x_part, y_part, create);
  };
  return transform_with(op, n_modes, image);
}

QubitOperator bravyi_kitaev(const FermionOperator& op, int n_modes) {
  auto image = [n_modes](int j, bool create) {
    const auto update = bk_update_set(j, n_modes);
    const auto parity = bk_parity_set(j);
    const auto flip = bk_flip_set(j);
    std::map<int, PauliLetter> x_part, y_part;
    for (int u : update) {
      x_part[u] = PauliLetter::X;
      y_part[u] = PauliLetter::X;
    }
    for (int p : parity) x_part[p] = PauliLetter::Z;
    // Remainder set: parity minus flip.
    for (int p : parity)
      if (std::find(flip.begin(), flip.end(), p) == flip.end())
        y_part[p] = PauliLetter::Z;
    x_part[j] = PauliLetter::X;
    y_part[j] = PauliLetter::Y;
    return ladder_image(x_part, y_part, create);
  };
  return transform_with(op, n_modes, image);
}

std::uint64_t bk_encode_occupation(std::uint64_t occupation_mask, int n_modes) {
  std::uint64_t bits = 0;
  for (int j = 0; j < n_modes; ++j) {
    // Qubit j stores the parity of the modes covered by Fenwick node j+1,
    // i.e. modes [j+1 - lowbit(j+1), j].
    const int lo = (j + 1) - lowbit(j + 1);
    int parity = 0;
    for (int m = lo; m <= j; ++m) parity ^= static_cast<int>((occupation_mask >> m) & 1ULL);
    bits |= static_cast<std::uint64_t>(parity) << j;
  }
  return bits;
}

// ---- reduction to the effective two-qubit Hamiltonian ---------------------

QubitOperator reduce_to_two_qubits(const QubitOperator& op4) {
  const std::uint64_t hf_bits = bk_encode_occupation(kHartreeFockOccupation, 4);
  const double z1 = ((hf_bits >> 1) & 1ULL) ? -1.0 : 1.0;
  const double z3 = ((hf_bits >> 3) & 1ULL) ? -1.0 : 1.0;

  std::vector<PauliString> reduced;
  for (const auto& term : op4.terms()) {
    PauliString out;
    out.coefficient = term.coefficient;
    for (const auto& [q, l] : term.factors) {
      if (q == 1 || q == 3) {
        if (l != PauliLetter::Z)
          throw std::invalid_argument("operator does not stabilize qubits 1 and 3");
        out.coefficient *= (q == 1) ? z1 : z3;
      } else if (q == 0) {
        out.factors[0] = l;
      } else if (q == 2) {
        out.factors[1] = l;
      } else {
        throw std::out_of_range("reduction expects a four-qubit operator");
      }
    }
    reduced.push_back(out);
  }
  return QubitOperator(reduced);
}

std::array<double, 8> extract_f_coefficients(const QubitOperator& op4) {
  using L = PauliLetter;
  auto real_coeff = [&](std::map<int, L> f) { return op4.coefficient_of(f).real(); };
  return {
      real_coeff({}),
      real_coeff({{0, L::Z}}),
      real_coeff({{1, L::Z}}),
      real_coeff({{2, L::Z}}),
      real_coeff({{0, L::Z}, {2, L::Z}}),
      real_coeff({{1, L::Z}, {3, L::Z}}),
      real_coeff({{0, L::X}, {1, L::Z}, {2, L::X}}),
      real_coeff({{0, L::Z}, {1, L::Z}, {2, L::Z}}),
  };
}

QubitOperator EffectiveHamiltonian::to_operator() const {
  using L = PauliLetter;
  std::vector<PauliString> terms;
  terms.push_back(PauliString({}, g[0]));
  terms.push_back(PauliString({{0, L::Z}}, g[1]));
  terms.push_back(PauliString({{1, L::Z}}, g[2]));
  terms.push_back(PauliString({{0, L::Z}, {1, L::Z}}, g[3]));
  terms.push_back(PauliString({{0, L::X}, {1, L::X}}, g[4]));
  terms.push_back(PauliString({{0, L::Y}, {1, L::Y}}, g[5]));
  return QubitOperator(terms);
}

EffectiveHamiltonian EffectiveHamiltonian::from_operator(const QubitOperator& op) {
  using L = PauliLetter;
  const std::array<std::map<int, L>, 6> templ = {
      std::map<int, L>{},
      {{0, L::Z}},
      {{1, L::Z}},
      {{0, L::Z}, {1, L::Z}},
      {{0, L::X}, {1, L::X}},
      {{0, L::Y}, {1, L::Y}},
  };
  EffectiveHamiltonian h;
  for (const auto& term : op.terms()) {
    bool matched = false;
    for (std::size_t i = 0; i < templ.size(); ++i) {
      if (term.factors == templ[i]) {
        if (std::abs(term.coefficient.imag()) > 1e-12)
          throw std::invalid_argument("effective Hamiltonian must be Hermitian");
        h.g[i] = term.coefficient.real();
        matched = true;
        break;
      }
    }
    if (!matched)
      throw std::invalid_argument("operator has terms outside the two-qubit template: " +
                                  term.label());
  }
  return h;
}

double EffectiveHamiltonian::coefficient_one_norm() const {
  double n = 0.0;
  for (double c : g) n += std::abs(c);
  return n;
}

EffectiveHamiltonian effective_hamiltonian(double r_angstrom) {
  const MolecularIntegrals ints = compute_integrals(r_angstrom);
  const FermionOperator fermi = second_quantized(ints);
  const QubitOperator op4 = bravyi_kitaev(fermi);
  return EffectiveHamiltonian::from_operator(reduce_to_two_qubits(op4));
}

// ---- diagonalization -------------------------------------------------------

EigenDecomposition exact_diagonalize(const QubitOperator& op, const StateVector& hf_state) {
  if (!op.is_hermitian(1e-10))
    throw std::invalid_argument("exact_diagonalize requires a Hermitian operator");
  const int n = hf_state.n_qubits();
  if (op.max_qubit() >= n)
    throw std::out_of_range("operator acts outside the reference register");
  if (n > 4) throw std::out_of_range("dense diagonalization is limited to 4 qubits");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_dense_matrix(op, n));
  EigenDecomposition out;
  out.states = solver.eigenvectors();
  const Eigen::Index dim = out.states.rows();
  Eigen::Map<const Eigen::VectorXcd> phi(hf_state.amplitudes().data(), dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    out.energies.push_back(solver.eigenvalues()(i));
    out.overlaps.push_back(out.states.col(i).dot(phi));
  }
  return out;
}

double mp2_amplitude_formula(double h_ijba, double h_ijab, double eps_i, double eps_j,
                             double eps_a, double eps_b) {
  const double denominator = eps_i + eps_j - eps_a - eps_b;
  if (std::abs(denominator) < 1e-8)
    throw NumericalGuard("MP2 denominator degenerates; orbital gap closed");
  return (h_ijba - h_ijab) / denominator;
}

double mp2_initial_amplitude(const MolecularIntegrals& ints) {
  // i, j occupied (g up, g down), a, b virtual (u up, u down).
  const int i = 0, j = 1, a = 2, b = 3;
  const auto& eps = ints.orbital_energies;
  return mp2_amplitude_formula(spin_orbital_h2(ints, i, j, b, a),
                               spin_orbital_h2(ints, i, j, a, b), eps[0], eps[0], eps[1],
                               eps[1]);
}

}  // namespace h2sim

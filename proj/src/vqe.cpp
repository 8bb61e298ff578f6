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

#include "h2sim/vqe.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "h2sim/rng.hpp"

namespace h2sim {

namespace {

using std::numbers::pi;

bool flips_q0(Gauge g) { return g == Gauge::FlipQ0 || g == Gauge::FlipBoth; }
bool flips_q1(Gauge g) { return g == Gauge::FlipQ1 || g == Gauge::FlipBoth; }

// Eigenvalue of Z0, Z1, Z0Z1 on a basis state.
double z_value(std::uint64_t index, int term_index) {
  const double z0 = (index & 1ULL) ? -1.0 : 1.0;
  const double z1 = (index & 2ULL) ? -1.0 : 1.0;
  switch (term_index) {
    case 1: return z0;
    case 2: return z1;
    default: return z0 * z1;
  }
}

TermEstimate estimate_from_counts(const std::vector<std::uint64_t>& counts, int term_index) {
  std::uint64_t total = 0;
  double sum = 0.0;
  for (std::uint64_t idx = 0; idx < counts.size(); ++idx) {
    total += counts[idx];
    sum += static_cast<double>(counts[idx]) * z_value(idx, term_index);
  }
  TermEstimate est;
  est.mean = sum / static_cast<double>(total);
  est.std_error =
      std::sqrt(std::max(0.0, 1.0 - est.mean * est.mean) / static_cast<double>(total));
  return est;
}

Circuit basis_change_for(int group) {
  // group 0: Z basis; 1: X0X1 via Ry(pi/2) on both; 2: Y0Y1 via Rx(pi/2).
  Circuit c(2);
  if (group == 1) {
    c.append(Gate::ry(0, pi / 2));
    c.append(Gate::ry(1, pi / 2));
  } else if (group == 2) {
    c.append(Gate::rx(0, pi / 2));
    c.append(Gate::rx(1, pi / 2));
  }
  return c;
}

}  // namespace

const char* gauge_name(Gauge g) {
  switch (g) {
    case Gauge::Standard: return "standard";
    case Gauge::FlipQ0: return "flip_q0";
    case Gauge::FlipQ1: return "flip_q1";
    case Gauge::FlipBoth: return "flip_both";
  }
  return "?";
}

double gauge_sign(Gauge g, int term_index) {
  const double s0 = flips_q0(g) ? -1.0 : 1.0;
  const double s1 = flips_q1(g) ? -1.0 : 1.0;
  switch (term_index) {
    case 1: return s0;            // Z0
    case 2: return s1;            // Z1
    case 3: return s0 * s1;       // Z0Z1
    case 4: return 1.0;           // X0X1
    case 5: return s0 * s1;       // Y0Y1
    default: return 1.0;
  }
}

std::uint64_t gauge_hf_index(Gauge g) {
  std::uint64_t idx = 1;  // |01>: qubit 0 occupied
  if (flips_q0(g)) idx ^= 1ULL;
  if (flips_q1(g)) idx ^= 2ULL;
  return idx;
}

Circuit build_ansatz_circuit(const AnsatzConfig& cfg) {
  Circuit c(2);
  const std::uint64_t hf = gauge_hf_index(cfg.gauge);
  if (hf & 1ULL) c.append(Gate::rx(0, pi));
  if (hf & 2ULL) c.append(Gate::rx(1, pi));

  // exp(-i theta X0 Y1) via basis change to Z0 Z1, parity on qubit 0 through
  // CZ-based CNOTs, and an Rz(2 theta). Conjugating the generator by the
  // gauge's X flips negates theta when qubit 1 is flipped.
  const double theta = flips_q1(cfg.gauge) ? -cfg.theta : cfg.theta;

  c.append(Gate::ry(0, -pi / 2));
  c.append(Gate::rx(1, pi / 2));

  auto cnot_q1_to_q0 = [&]() {
    c.append(Gate::ry(0, -pi / 2));
    c.append(Gate::cz(0, 1, pi));
    c.append(Gate::ry(0, pi / 2));
  };
  cnot_q1_to_q0();
  c.append(Gate::rz(0, 2.0 * theta));
  cnot_q1_to_q0();

  c.append(Gate::ry(0, pi / 2));
  c.append(Gate::rx(1, -pi / 2));
  return c;
}

EnergySurfacePoint estimate_energy(const AnsatzConfig& cfg, const EffectiveHamiltonian& h,
                                   const EstimateOptions& opts) {
  const Circuit prep = build_ansatz_circuit(cfg);

  StateVector psi(2);
  DensityMatrix rho(2);
  const bool noisy = opts.noise.has_value() && !opts.noise->is_trivial();
  if (noisy)
    rho = apply_circuit_noisy(rho, prep, *opts.noise);
  else
    psi = apply_circuit(StateVector(2), prep);

  // Raw (gauge-frame) estimates per tomography group.
  std::array<TermEstimate, 5> raw{};
  auto measure_group = [&](int group, std::initializer_list<int> term_indices) {
    const Circuit basis = basis_change_for(group);
    if (opts.shots == 0) {
      for (int t : term_indices) {
        QubitOperator term;
        using L = PauliLetter;
        switch (t) {
          case 1: term.add_term({{0, L::Z}}, 1.0); break;
          case 2: term.add_term({{1, L::Z}}, 1.0); break;
          case 3: term.add_term({{0, L::Z}, {1, L::Z}}, 1.0); break;
          case 4: term.add_term({{0, L::X}, {1, L::X}}, 1.0); break;
          default: term.add_term({{0, L::Y}, {1, L::Y}}, 1.0); break;
        }
        raw[t - 1].mean = noisy ? expectation(term, rho) : expectation(term, psi);
        raw[t - 1].std_error = 0.0;
      }
      return;
    }
    const std::uint64_t seed = derive_seed(opts.seed, {static_cast<std::uint64_t>(group)});
    const auto counts = noisy ? sample_pauli(rho, basis, opts.shots, seed)
                              : sample_pauli(psi, basis, opts.shots, seed);
    for (int t : term_indices) {
      // After the basis change, every group's observable is a Z string.
      const int z_index = (t <= 3) ? t : 3;
      raw[t - 1] = estimate_from_counts(counts, z_index);
    }
  };

  measure_group(0, {1, 2, 3});
  measure_group(1, {4});
  measure_group(2, {5});

  if (opts.z0z1_classical) {
    raw[2].mean = z_value(gauge_hf_index(cfg.gauge), 3);
    raw[2].std_error = 0.0;
  }

  EnergySurfacePoint point;
  point.theta = cfg.theta;
  point.gauge = cfg.gauge;
  double energy = h.g[0];
  double var = 0.0;
  for (int t = 1; t <= 5; ++t) {
    point.terms[t - 1].mean = gauge_sign(cfg.gauge, t) * raw[t - 1].mean;
    point.terms[t - 1].std_error = raw[t - 1].std_error;
    energy += h.g[t] * point.terms[t - 1].mean;
    var += h.g[t] * h.g[t] * raw[t - 1].std_error * raw[t - 1].std_error;
  }
  point.energy = energy;
  point.std_error = std::sqrt(var);
  return point;
}

std::vector<EnergySurfacePoint> scan_theta(const EffectiveHamiltonian& h, double r_angstrom,
                                           Gauge gauge, const ScanOptions& opts) {
  if (opts.grid_size < 2) throw std::invalid_argument("theta grid needs at least 2 points");
  std::vector<EnergySurfacePoint> out;
  out.reserve(opts.grid_size);
  for (int k = 0; k < opts.grid_size; ++k) {
    AnsatzConfig cfg;
    cfg.theta = -pi + 2.0 * pi * static_cast<double>(k) / opts.grid_size;
    cfg.gauge = gauge;
    EstimateOptions est = opts;
    est.seed = derive_seed(opts.seed, {static_cast<std::uint64_t>(gauge),
                                       static_cast<std::uint64_t>(k)});
    EnergySurfacePoint p = estimate_energy(cfg, h, est);
    p.r_angstrom = r_angstrom;
    out.push_back(p);
  }
  return out;
}

const EnergySurfacePoint& find_minimum(const std::vector<EnergySurfacePoint>& scan) {
  if (scan.empty()) throw std::invalid_argument("empty scan");
  std::size_t best = 0;
  for (std::size_t i = 1; i < scan.size(); ++i)
    if (scan[i].energy < scan[best].energy) best = i;
  return scan[best];
}

namespace {

double exact_energy_at(const EffectiveHamiltonian& h, double theta, Gauge gauge) {
  AnsatzConfig cfg{theta, gauge};
  return estimate_energy(cfg, h, EstimateOptions{}).energy;
}

// Golden-section search on [a, b]; returns (theta, evaluations used).
std::pair<double, int> golden_search(const EffectiveHamiltonian& h, Gauge gauge, double a,
                                     double b, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = exact_energy_at(h, x1, gauge);
  double f2 = exact_energy_at(h, x2, gauge);
  int evals = 2;
  while (b - a > tol && evals < 300) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = exact_energy_at(h, x1, gauge);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = exact_energy_at(h, x2, gauge);
    }
    ++evals;
  }
  return {(a + b) / 2.0, evals};
}

}  // namespace

EnergySurfacePoint refine_minimum(const EffectiveHamiltonian& h, double r_angstrom,
                                  const std::vector<EnergySurfacePoint>& scan, Gauge gauge) {
  const EnergySurfacePoint& grid_min = find_minimum(scan);
  const double spacing = 2.0 * pi / static_cast<double>(scan.size());
  const auto [theta, evals] =
      golden_search(h, gauge, grid_min.theta - spacing, grid_min.theta + spacing, 1e-10);
  (void)evals;
  AnsatzConfig cfg{theta, gauge};
  EnergySurfacePoint p = estimate_energy(cfg, h, EstimateOptions{});
  p.r_angstrom = r_angstrom;
  return p;
}

EnergySurfacePoint fit_harmonic_minimum(const std::vector<EnergySurfacePoint>& scan,
                                        const EffectiveHamiltonian& h) {
  const std::size_t n = scan.size();
  if (n < 3) throw std::invalid_argument("harmonic fit needs at least 3 scan points");

  // Per-term least squares against {1, cos 2theta, sin 2theta}. On the
  // uniform full-period grid the design columns are orthogonal, so the
  // coefficients reduce to projections.
  struct Harmonic {
    double a = 0, b = 0, c = 0;
  };
  std::array<Harmonic, 5> fits{};
  for (int t = 0; t < 5; ++t) {
    for (const auto& p : scan) {
      fits[t].a += p.terms[t].mean;
      fits[t].b += p.terms[t].mean * std::cos(2.0 * p.theta);
      fits[t].c += p.terms[t].mean * std::sin(2.0 * p.theta);
    }
    fits[t].a /= static_cast<double>(n);
    fits[t].b *= 2.0 / static_cast<double>(n);
    fits[t].c *= 2.0 / static_cast<double>(n);
  }

  double B = 0.0, C = 0.0;
  for (int t = 0; t < 5; ++t) {
    B += h.g[t + 1] * fits[t].b;
    C += h.g[t + 1] * fits[t].c;
  }
  // Vertex of A + B cos + C sin; of the two period-pi minima in [-pi, pi),
  // keep the smaller theta.
  double theta = 0.5 * std::atan2(-C, -B);
  if (theta > 0.0) theta -= pi;

  EnergySurfacePoint out;
  out.r_angstrom = scan.front().r_angstrom;
  out.theta = theta;
  out.gauge = scan.front().gauge;
  out.averaged = scan.front().averaged;
  const double cs = std::cos(2.0 * theta);
  const double sn = std::sin(2.0 * theta);
  double energy = h.g[0];
  double var = 0.0;
  for (int t = 0; t < 5; ++t) {
    out.terms[t].mean = fits[t].a + fits[t].b * cs + fits[t].c * sn;
    // Exact propagation through the linear estimator: the fitted value at
    // theta* is sum_k w_k m_k with w_k = (1 + 2 cos(2 theta_k - 2 theta*))/n.
    double se_sq = 0.0;
    for (const auto& p : scan) {
      const double w = (1.0 + 2.0 * std::cos(2.0 * p.theta - 2.0 * theta)) /
                       static_cast<double>(n);
      se_sq += w * w * p.terms[t].std_error * p.terms[t].std_error;
    }
    out.terms[t].std_error = std::sqrt(se_sq);
    energy += h.g[t + 1] * out.terms[t].mean;
    var += h.g[t + 1] * h.g[t + 1] * se_sq;
  }
  out.energy = energy;
  out.std_error = std::sqrt(var);
  return out;
}

RefineResult refine_from(const EffectiveHamiltonian& h, double theta_init, double tol) {
  // Expand a bracket downhill from the initial guess until the middle point
  // is the smallest, then contract with golden-section search.
  const Gauge gauge = Gauge::Standard;
  double step = 0.02;
  double m = theta_init;
  double a = m - step;
  double b = m + step;
  double fa = exact_energy_at(h, a, gauge);
  double fm = exact_energy_at(h, m, gauge);
  double fb = exact_energy_at(h, b, gauge);
  int evals = 3;
  while (!(fm <= fa && fm <= fb) && evals < 200) {
    step *= 1.6;
    if (fa < fb) {
      b = m;
      fb = fm;
      m = a;
      fm = fa;
      a = m - step;
      fa = exact_energy_at(h, a, gauge);
    } else {
      a = m;
      fa = fm;
      m = b;
      fm = fb;
      b = m + step;
      fb = exact_energy_at(h, b, gauge);
    }
    ++evals;
  }
  const auto [theta, golden_evals] = golden_search(h, gauge, a, b, tol);
  RefineResult out;
  out.theta = theta;
  out.energy = exact_energy_at(h, theta, gauge);
  out.evaluations = evals + golden_evals + 1;
  return out;
}

std::vector<EnergySurfacePoint> gauge_average(
    const std::array<std::vector<EnergySurfacePoint>, 4>& per_gauge,
    const EffectiveHamiltonian& h) {
  const std::size_t n = per_gauge[0].size();
  for (const auto& scan : per_gauge) {
    if (scan.size() != n) throw std::invalid_argument("gauge scans have different grids");
    for (std::size_t i = 0; i < n; ++i)
      if (std::abs(scan[i].theta - per_gauge[0][i].theta) > 1e-12)
        throw std::invalid_argument("gauge scans have different grids");
  }

  std::vector<EnergySurfacePoint> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    EnergySurfacePoint p;
    p.r_angstrom = per_gauge[0][i].r_angstrom;
    p.theta = per_gauge[0][i].theta;
    p.averaged = true;
    double e_min = per_gauge[0][i].energy;
    double e_max = e_min;
    for (int t = 0; t < 5; ++t) {
      double mean = 0.0;
      double var = 0.0;
      for (const auto& scan : per_gauge) {
        mean += scan[i].terms[t].mean;
        var += scan[i].terms[t].std_error * scan[i].terms[t].std_error;
      }
      p.terms[t].mean = mean / 4.0;
      p.terms[t].std_error = std::sqrt(var) / 4.0;
    }
    for (const auto& scan : per_gauge) {
      e_min = std::min(e_min, scan[i].energy);
      e_max = std::max(e_max, scan[i].energy);
    }
    double energy = h.g[0];
    double var = 0.0;
    for (int t = 1; t <= 5; ++t) {
      energy += h.g[t] * p.terms[t - 1].mean;
      var += h.g[t] * h.g[t] * p.terms[t - 1].std_error * p.terms[t - 1].std_error;
    }
    p.energy = energy;
    p.std_error = std::sqrt(var);
    p.gauge_spread = e_max - e_min;
    out.push_back(p);
  }
  return out;
}

}  // namespace h2sim

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

#include "h2sim/runner.hpp"

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <thread>

#include <nlohmann/json.hpp>

#include "h2sim/electronic_structure.hpp"
#include "h2sim/errors.hpp"
#include "h2sim/io.hpp"
#include "h2sim/pea.hpp"
#include "h2sim/rng.hpp"
#include "h2sim/vqe.hpp"

namespace h2sim {

namespace fs = std::filesystem;

namespace {

int thread_cap() {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("H2SIM_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(v));
  }
  return static_cast<int>(n);
}

fs::path prepare_output_dir(const RunConfig& config) {
  const fs::path dir(config.output_dir);
  fs::create_directories(dir);
  return dir;
}

void write_manifest(const RunConfig& config, const std::string& command,
                    const fs::path& dir) {
  const std::string text = config_to_text(config);
  nlohmann::json manifest = {
      {"command", command},
      {"version", kVersion},
      {"seed", config.seed},
      {"config", text},
      {"content_hash", content_hash_hex(text)},
  };
  write_file_atomic(dir / ("manifest_" + command + ".json"), manifest.dump(2) + "\n");
}

std::optional<NoiseModel> active_noise(const RunConfig& config) {
  if (config.noise.is_trivial()) return std::nullopt;
  return config.noise;
}

struct PointInfo {
  EffectiveHamiltonian h;
  double e0 = 0.0;
  double e_hf = 0.0;
  double a0_sq = 0.0;
};

PointInfo point_info(double r_angstrom) {
  PointInfo info;
  info.h = effective_hamiltonian(r_angstrom);
  const StateVector hf = StateVector::basis_state(2, 1);
  const EigenDecomposition eig = exact_diagonalize(info.h.to_operator(), hf);
  info.e0 = eig.energies[0];
  info.e_hf = expectation(info.h.to_operator(), hf);
  info.a0_sq = std::norm(eig.overlaps[0]);
  return info;
}

TrotterSpec make_spec(const RunConfig& config, const EffectiveHamiltonian& h) {
  TrotterSpec spec;
  spec.t0 = config.pea.t0_auto ? default_t0(h) : config.pea.t0;
  spec.rho = config.pea.rho;
  spec.bits = config.pea.bits;
  spec.reps_per_bit = config.pea.reps;
  spec.ordering = config.pea.ordering_optimized ? optimize_ordering(h, spec.t0).ordering
                                                : config.pea.ordering;
  return spec;
}

}  // namespace

void parallel_for_index(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const int threads = std::min<std::size_t>(thread_cap(), n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&]() {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

void run_integrals(const RunConfig& config) {
  const fs::path dir = prepare_output_dir(config);

  struct Row {
    EffectiveHamiltonian h;
    std::array<double, 8> f;
  };
  std::vector<Row> rows(config.r_grid.size());
  parallel_for_index(config.r_grid.size(), [&](std::size_t i) {
    const MolecularIntegrals ints = compute_integrals(config.r_grid[i]);
    const QubitOperator op4 = bravyi_kitaev(second_quantized(ints));
    rows[i].f = extract_f_coefficients(op4);
    rows[i].h = EffectiveHamiltonian::from_operator(reduce_to_two_qubits(op4));
  });

  CsvWriter csv({"R_angstrom", "g0", "g1", "g2", "g3", "g4", "g5"});
  nlohmann::json fjson = nlohmann::json::array();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::vector<std::string> cells = {format_double(config.r_grid[i])};
    for (double g : rows[i].h.g) cells.push_back(format_double(g));
    csv.row(cells);
    nlohmann::json entry = {{"r_angstrom", config.r_grid[i]}};
    for (int k = 0; k < 8; ++k) entry["f" + std::to_string(k)] = rows[i].f[k];
    fjson.push_back(entry);
  }
  write_file_atomic(dir / "hamiltonian_table.csv", csv.str());
  write_file_atomic(dir / "f_coefficients.json", fjson.dump(2) + "\n");
  write_manifest(config, "integrals", dir);
}

void run_exact_curve(const RunConfig& config) {
  const fs::path dir = prepare_output_dir(config);
  std::vector<PointInfo> rows(config.r_grid.size());
  parallel_for_index(config.r_grid.size(),
                     [&](std::size_t i) { rows[i] = point_info(config.r_grid[i]); });

  CsvWriter csv({"R_angstrom", "e0_hartree", "e_hf_hartree", "a0_sq"});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    csv.row({format_double(config.r_grid[i]), format_double(rows[i].e0),
             format_double(rows[i].e_hf), format_double(rows[i].a0_sq)});
  }
  write_file_atomic(dir / "exact_curve.csv", csv.str());
  write_manifest(config, "exact-curve", dir);
}

namespace {

std::vector<std::string> surface_row(double r, const EnergySurfacePoint& p,
                                     const std::string& gauge_label) {
  std::vector<std::string> cells = {format_double(r), format_double(p.theta), gauge_label};
  for (const auto& t : p.terms) cells.push_back(format_double(t.mean));
  cells.push_back(format_double(p.energy));
  cells.push_back(format_double(p.std_error));
  cells.push_back(format_double(p.gauge_spread));
  return cells;
}

}  // namespace

void run_vqe_scan(const RunConfig& config) {
  const fs::path dir = prepare_output_dir(config);
  const auto noise = active_noise(config);

  struct PerR {
    PointInfo info;
    std::array<std::vector<EnergySurfacePoint>, 4> scans;
    std::vector<EnergySurfacePoint> averaged;
    EnergySurfacePoint minimum;
  };
  std::vector<PerR> results(config.r_grid.size());

  parallel_for_index(config.r_grid.size(), [&](std::size_t i) {
    PerR& res = results[i];
    const double r = config.r_grid[i];
    res.info = point_info(r);

    ScanOptions opts;
    opts.grid_size = config.vqe.grid_size;
    opts.shots = config.shots;
    opts.noise = noise;
    opts.z0z1_classical = config.vqe.z0z1_classical;
    opts.seed = derive_seed(config.seed, {0x76716573ULL, i});

    if (config.vqe.gauges) {
      for (int g = 0; g < 4; ++g)
        res.scans[g] = scan_theta(res.info.h, r, kAllGauges[g], opts);
      res.averaged = gauge_average(res.scans, res.info.h);
    } else {
      res.scans[0] = scan_theta(res.info.h, r, Gauge::Standard, opts);
    }
    const auto& source = config.vqe.gauges ? res.averaged : res.scans[0];
    if (config.shots == 0 && !noise) {
      res.minimum = refine_minimum(res.info.h, r, source);
    } else if (!noise) {
      res.minimum = fit_harmonic_minimum(source, res.info.h);
    } else {
      res.minimum = find_minimum(source);
    }
  });

  CsvWriter surface({"R_angstrom", "theta", "gauge", "exp_Z0", "exp_Z1", "exp_Z0Z1",
                     "exp_XX", "exp_YY", "energy_hartree", "stderr_hartree",
                     "gauge_spread_hartree"});
  CsvWriter minimum({"R_angstrom", "theta_opt", "energy_hartree", "stderr_hartree",
                     "e0_exact_hartree"});
  for (std::size_t i = 0; i < results.size(); ++i) {
    const double r = config.r_grid[i];
    const PerR& res = results[i];
    const int n_gauges = config.vqe.gauges ? 4 : 1;
    for (int g = 0; g < n_gauges; ++g)
      for (const auto& p : res.scans[g]) surface.row(surface_row(r, p, gauge_name(p.gauge)));
    for (const auto& p : res.averaged) surface.row(surface_row(r, p, "avg"));
    minimum.row({format_double(r), format_double(res.minimum.theta),
                 format_double(res.minimum.energy), format_double(res.minimum.std_error),
                 format_double(res.info.e0)});
  }
  write_file_atomic(dir / "vqe_surface.csv", surface.str());
  write_file_atomic(dir / "vqe_minimum.csv", minimum.str());
  write_manifest(config, "vqe-scan", dir);
}

void run_pea(const RunConfig& config) {
  const fs::path dir = prepare_output_dir(config);
  const auto noise = active_noise(config);

  struct PerR {
    PointInfo info;
    TrotterSpec spec;
    PEAOutcome outcome;
  };
  std::vector<PerR> results(config.r_grid.size());

  parallel_for_index(config.r_grid.size(), [&](std::size_t i) {
    PerR& res = results[i];
    res.info = point_info(config.r_grid[i]);
    res.spec = make_spec(config, res.info.h);
    PeaOptions opts;
    opts.mode = config.pea.mode;
    opts.noise = noise;
    opts.z0z1_classical = config.vqe.z0z1_classical;
    res.outcome = iterative_pea(res.info.h, res.spec, opts);
  });

  nlohmann::json runs = nlohmann::json::array();
  CsvWriter csv({"R_angstrom", "t0", "rho", "bits", "mode", "energy_hartree",
                 "e0_exact_hartree", "abs_error_hartree"});
  for (std::size_t i = 0; i < results.size(); ++i) {
    const PerR& res = results[i];
    const double r = config.r_grid[i];
    if (res.outcome.hf_overlap_sq <= 0.5) {
      std::cerr << "warning: |<ground|HF>|^2 = " << res.outcome.hf_overlap_sq << " at R = "
                << r << " A; majority vote soundness is not guaranteed\n";
    }
    runs.push_back({{"R", r},
                    {"t0", res.spec.t0},
                    {"rho", res.spec.rho},
                    {"ordering", ordering_to_string(res.spec.ordering)},
                    {"bits", res.outcome.bits},
                    {"p1_per_bit", res.outcome.p1_per_bit},
                    {"energy_hartree", res.outcome.energy},
                    {"mode", pea_mode_name(config.pea.mode)}});
    csv.row({format_double(r), format_double(res.spec.t0), std::to_string(res.spec.rho),
             std::to_string(res.spec.bits), pea_mode_name(config.pea.mode),
             format_double(res.outcome.energy), format_double(res.info.e0),
             format_double(std::abs(res.outcome.energy - res.info.e0))});
  }
  write_file_atomic(dir / "pea_runs.json", runs.dump(2) + "\n");
  write_file_atomic(dir / "pea_curve.csv", csv.str());
  write_manifest(config, "pea-run", dir);
}

void run_trotter_study(const RunConfig& config) {
  const fs::path dir = prepare_output_dir(config);
  const std::array<int, 5> rhos = {1, 2, 4, 8, 16};

  struct PerR {
    double t0 = 0.0;
    std::array<double, 5> eig_err{};
    std::array<double, 5> opnorm_err{};
    std::vector<std::pair<std::string, double>> orderings;
    std::string best;
  };
  std::vector<PerR> results(config.r_grid.size());

  parallel_for_index(config.r_grid.size(), [&](std::size_t i) {
    PerR& res = results[i];
    const EffectiveHamiltonian h = effective_hamiltonian(config.r_grid[i]);
    res.t0 = config.pea.t0_auto ? default_t0(h) : config.pea.t0;
    for (std::size_t k = 0; k < rhos.size(); ++k) {
      res.eig_err[k] = ground_eigenphase_error(h, res.t0, rhos[k], kCanonicalOrdering);
      res.opnorm_err[k] = trotter_opnorm_error(h, res.t0, rhos[k], kCanonicalOrdering);
    }
    TermOrdering perm = kCanonicalOrdering;
    do {
      res.orderings.emplace_back(ordering_to_string(perm),
                                 ground_eigenphase_error(h, res.t0, 1, perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    res.best = ordering_to_string(optimize_ordering(h, res.t0).ordering);
  });

  CsvWriter err({"R_angstrom", "t0", "rho", "eigenphase_error", "opnorm_error"});
  CsvWriter ord({"R_angstrom", "ordering", "eigenphase_error", "is_optimal"});
  for (std::size_t i = 0; i < results.size(); ++i) {
    const double r = config.r_grid[i];
    for (std::size_t k = 0; k < rhos.size(); ++k) {
      err.row({format_double(r), format_double(results[i].t0), std::to_string(rhos[k]),
               format_double(results[i].eig_err[k]), format_double(results[i].opnorm_err[k])});
    }
    for (const auto& [name, e] : results[i].orderings) {
      ord.row({format_double(r), name, format_double(e),
               name == results[i].best ? "1" : "0"});
    }
  }
  write_file_atomic(dir / "trotter_error.csv", err.str());
  write_file_atomic(dir / "trotter_orderings.csv", ord.str());
  write_manifest(config, "trotter-study", dir);
}

void run_noise_study(const RunConfig& config) {
  const fs::path dir = prepare_output_dir(config);
  // Default study noise: 5% coherent overrotation on every gate angle.
  NoiseModel noise = config.noise;
  if (noise.is_trivial()) noise.overrotation = 0.05;

  struct Row {
    PointInfo info;
    double theta_min = 0.0, e_min = 0.0;
    double theta_ref = 0.0, e_ref = 0.0;
  };
  std::vector<Row> rows(config.r_grid.size());

  parallel_for_index(config.r_grid.size(), [&](std::size_t i) {
    Row& row = rows[i];
    const double r = config.r_grid[i];
    row.info = point_info(r);

    ScanOptions exact_opts;
    exact_opts.grid_size = config.vqe.grid_size;
    const auto exact_scan = scan_theta(row.info.h, r, Gauge::Standard, exact_opts);
    row.theta_ref = find_minimum(exact_scan).theta;

    ScanOptions noisy_opts = exact_opts;
    noisy_opts.noise = noise;
    const auto noisy_scan = scan_theta(row.info.h, r, Gauge::Standard, noisy_opts);
    const auto& noisy_min = find_minimum(noisy_scan);
    row.theta_min = noisy_min.theta;
    row.e_min = noisy_min.energy;

    EstimateOptions ref_opts;
    ref_opts.noise = noise;
    row.e_ref = estimate_energy({row.theta_ref, Gauge::Standard}, row.info.h, ref_opts).energy;
  });

  CsvWriter csv({"R_angstrom", "theta_min_noisy", "energy_noisy_at_min",
                 "theta_ref_noiseless", "energy_noisy_at_ref", "e0_exact_hartree",
                 "err_at_min", "err_at_ref", "gap"});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& row = rows[i];
    csv.row({format_double(config.r_grid[i]), format_double(row.theta_min),
             format_double(row.e_min), format_double(row.theta_ref),
             format_double(row.e_ref), format_double(row.info.e0),
             format_double(row.e_min - row.info.e0), format_double(row.e_ref - row.info.e0),
             format_double(row.e_ref - row.e_min)});
  }
  write_file_atomic(dir / "noise_study.csv", csv.str());
  write_manifest(config, "noise-study", dir);
}

int dispatch_command(const std::string& command, const RunConfig& config) {
  try {
    if (command == "integrals")
      run_integrals(config);
    else if (command == "exact-curve")
      run_exact_curve(config);
    else if (command == "vqe-scan")
      run_vqe_scan(config);
    else if (command == "pea-run")
      run_pea(config);
    else if (command == "trotter-study")
      run_trotter_study(config);
    else if (command == "noise-study")
      run_noise_study(config);
    else {
      std::cerr << "error: unknown command '" << command << "'\n";
      return 1;
    }
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 1;
  } catch (const NumericalGuard& e) {
    std::cerr << "numerical guard: " << e.what() << "\n";
    return 3;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 2;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    // Remaining runtime errors here come from file handling.
    std::cerr << "i/o error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace h2sim

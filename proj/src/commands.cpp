// Copyright 2026 The circring Authors
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

#include "circring/commands.hpp"

#include <cstdlib>
#include <filesystem>
#include <map>
#include <thread>

#include <fmt/format.h>

#include "circring/errors.hpp"
#include "circring/output.hpp"
#include "circring/parallel.hpp"
#include "circring/scattering.hpp"

namespace circring {

namespace {

using Schema = std::vector<std::string>;

Schema spectrum_columns(int k_levels) {
  Schema s{"phi_x"};
  for (int k = 1; k <= k_levels; ++k) s.push_back(fmt::format("omega_{}", k));
  return s;
}

const Schema kScatterColumns{"phi_x", "omega_d", "gamma", "s11", "s12", "s13", "s21", "s22", "s23", "s31",
                             "s32", "s33", "fidelity_cw", "fidelity_ccw", "il_db", "r_db", "is_db", "p1",
                             "p2", "p3"};
const Schema kTraceColumns{"step", "evaluations", "fidelity", "omega_d", "phi_x", "nx1", "nx2", "nx3",
                           "ratio_drive", "ratio_coupling", "dipole_spread", "x1", "x2", "theta1", "theta2"};
const Schema kSummaryColumns{"seed", "fidelity", "steps", "first_step_099", "termination", "restarted",
                             "sub_optimal_trap", "omega_d", "phi_x", "nx1", "nx2", "nx3", "il_db", "r_db",
                             "is_db"};
const Schema kToleranceColumns{"de2_over_gamma", "de3_over_gamma", "fidelity", "r_db", "il_db", "omega_d",
                               "phi_x", "nx1", "nx2", "nx3", "error"};
const Schema kTransmonColumns{"ratio", "nonreciprocity", "gamma", "phi_x", "omega_d", "error"};
const Schema kQpMapColumns{"phi_x", "omega_d", "sector", "fidelity", "s21", "s31"};
const Schema kQpRateColumns{"op", "from", "k", "to", "k_to", "matrix_element_sq", "omega", "rate", "rate_hz"};
const Schema kQpAggregateColumns{"from", "to", "rate_hz"};
const Schema kQpSpectraColumns{"phi_x", "sector", "k", "omega"};
const Schema kQpJumpColumns{"time_s", "sector", "fidelity"};
const Schema kQpOccupancyColumns{"sector", "occupancy", "fidelity"};

struct Context {
  const RunConfig& config;
  std::string subcommand;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  int threads = 1;
  RunResult result;

  std::string path(const std::string& stem) const { return (std::filesystem::path(out_dir) / (stem + ".csv")).string(); }

  void finish(const CsvWriter& w, const std::string& path, std::vector<std::pair<std::string, std::string>> extra = {}) {
    Metadata meta{subcommand, config_hash(config), seed, threads, std::move(extra)};
    meta.extra.insert(meta.extra.begin(), {"rows", std::to_string(w.rows())});
    write_metadata(path, meta);
    result.files.push_back(path);
  }

  std::uint64_t required_seed() const {
    if (!seed) throw ConfigError("seed", "required for the " + subcommand + " subcommand");
    return *seed;
  }
};

std::vector<double> phi_values(const RunConfig& c) {
  return c.sweep.phi_x ? c.sweep.phi_x->values() : std::vector<double>{c.bias.phi_x};
}

std::vector<double> omega_values(const RunConfig& c) {
  return c.sweep.omega_d ? c.sweep.omega_d->values() : std::vector<double>{c.bias.omega_d};
}

TruncationSpec electron_truncation(const TruncationSpec& t) {
  if (t.basis == BasisKind::single_electron) return t;
  return TruncationSpec{2 * t.n_max, t.k_levels, BasisKind::single_electron};
}

void run_spectrum(Context& ctx) {
  const RunConfig& c = ctx.config;
  const auto phis = phi_values(c);
  const int k = c.truncation.k_levels;
  std::vector<Eigen::VectorXd> omegas(phis.size());
  parallel_for(phis.size(), ctx.threads, [&](std::size_t i) {
    BiasPoint b = c.bias;
    b.phi_x = phis[i];
    omegas[i] = build_ring_model(c.circuit, b, c.truncation).eigenvalues;
  });
  const std::string path = ctx.path("spectrum");
  CsvWriter w(path, spectrum_columns(k));
  for (std::size_t i = 0; i < phis.size(); ++i) {
    std::vector<Cell> row{phis[i]};
    for (int j = 1; j <= k; ++j) row.emplace_back(omegas[i](j));
    w.row(row);
  }
  ctx.finish(w, path);
}

ScatteringResult scatter_at(const RunConfig& c, const RingModel& m, double omega_d) {
  const double g = waveguide_coupling(c.circuit, omega_d);
  if (c.scatter.method == ScatterMethod::lindblad) {
    return s_matrix_lindblad(m, g, DriveSpec::weak(g, omega_d, c.scatter.drive_factor), c.truncation.k_levels);
  }
  return s_matrix_adiabatic(m, g, omega_d, c.truncation.k_levels);
}

void run_scatter(Context& ctx) {
  const RunConfig& c = ctx.config;
  const auto phis = phi_values(c);
  const auto omegas = omega_values(c);
  std::vector<ScatteringResult> res(phis.size() * omegas.size());
  parallel_for(phis.size(), ctx.threads, [&](std::size_t i) {
    BiasPoint b = c.bias;
    b.phi_x = phis[i];
    const RingModel m = build_ring_model(c.circuit, b, c.truncation);
    for (std::size_t j = 0; j < omegas.size(); ++j) res[i * omegas.size() + j] = scatter_at(c, m, omegas[j]);
  });
  const std::string path = ctx.path("scatter");
  CsvWriter w(path, kScatterColumns);
  for (std::size_t i = 0; i < phis.size(); ++i) {
    for (std::size_t j = 0; j < omegas.size(); ++j) {
      const ScatteringResult& r = res[i * omegas.size() + j];
      std::vector<Cell> row{phis[i], omegas[j], waveguide_coupling(c.circuit, omegas[j])};
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) row.emplace_back(std::abs(r.s(a, b)));
      }
      for (double v : {r.fidelity_cw, r.fidelity_ccw, r.il_db, r.r_db, r.is_db}) row.emplace_back(v);
      for (double p : r.column_power) row.emplace_back(p);
      w.row(row);
    }
  }
  ctx.finish(w, path, {{"method", c.scatter.method == ScatterMethod::lindblad ? "lindblad" : "adiabatic"}});
}

void run_optimize(Context& ctx) {
  const RunConfig& c = ctx.config;
  const std::uint64_t base = ctx.required_seed();
  const OptimizerConfig& oc = c.optimize.optimizer;
  std::optional<BiasPoint> warm;
  if (c.optimize.start == StartKind::conditions) {
    ConditionConfig cc = c.conditions.solver;
    warm = solve_conditions(c.circuit, c.conditions.symmetric, cc);
  }
  const auto runs = static_cast<std::size_t>(c.optimize.runs);
  std::vector<OptimizationTrace> traces(runs);
  parallel_for(runs, ctx.threads, [&](std::size_t i) {
    const std::uint64_t seed = base + i;
    BiasPoint init = warm ? *warm : random_initial_bias(oc, seed);
    init.n0 = c.bias.n0;
    traces[i] = optimize_fidelity(c.circuit, init, oc, seed);
  });
  const TruncationSpec trunc{oc.n_max, oc.k_levels, BasisKind::cooper_pair};
  const std::string summary_path = ctx.path("optimize_summary");
  CsvWriter summary(summary_path, kSummaryColumns);
  for (std::size_t i = 0; i < runs; ++i) {
    const std::uint64_t seed = base + i;
    const OptimizationTrace& t = traces[i];
    const std::string path = ctx.path(fmt::format("optimize_trace_seed{}", seed));
    CsvWriter w(path, kTraceColumns);
    for (const TraceStep& s : t.steps) {
      const ConditionDiagnostics& d = s.diagnostics;
      w.row({static_cast<long long>(s.step), static_cast<long long>(s.evaluations), s.fidelity, s.bias.omega_d,
             s.bias.phi_x, s.bias.nx[0], s.bias.nx[1], s.bias.nx[2], d.ratio_drive, d.ratio_coupling,
             d.dipole_spread, d.x[0], d.x[1], d.theta[0], d.theta[1]});
    }
    ctx.finish(w, path, {{"run_seed", std::to_string(seed)}});
    const TraceStep& f = t.final_step();
    const ScatteringResult r = evaluate_bias(c.circuit, f.bias, trunc);
    const auto first = t.first_step_reaching(0.99);
    summary.row({static_cast<long long>(seed), f.fidelity, static_cast<long long>(f.step),
                 first ? std::optional<double>(*first) : std::nullopt, to_string(t.termination),
                 static_cast<long long>(t.restarted), static_cast<long long>(t.sub_optimal_trap), f.bias.omega_d,
                 f.bias.phi_x, f.bias.nx[0], f.bias.nx[1], f.bias.nx[2], r.il_db, r.r_db, r.is_db});
  }
  ctx.finish(summary, summary_path);
}

void run_tolerance(Context& ctx) {
  const RunConfig& c = ctx.config;
  ToleranceMapConfig tc;
  tc.de2_over_gamma = c.tolerance.de2.values();
  tc.de3_over_gamma = c.tolerance.de3.values();
  tc.reference_omega_d = c.tolerance.reference_omega_d;
  tc.optimizer = c.optimize.optimizer;
  tc.optimizer.max_steps = c.tolerance.max_steps;
  tc.optimizer.window = c.tolerance.window;
  tc.optimizer.initial_step = c.tolerance.initial_step;
  tc.optimizer.profile_flux = c.tolerance.profile_flux;
  tc.threads = ctx.threads;
  tc.seed = ctx.seed.value_or(0);
  const auto records = asymmetry_tolerance_map(c.circuit, tc);
  const std::string path = ctx.path("tolerance_map");
  CsvWriter w(path, kToleranceColumns);
  for (const ToleranceRecord& r : records) {
    auto field = [&](auto get) -> std::optional<double> {
      return r.bias ? std::optional<double>(get(*r.bias)) : std::nullopt;
    };
    w.row({r.de2_over_gamma, r.de3_over_gamma, r.fidelity, r.r_db, r.il_db,
           field([](const BiasPoint& b) { return b.omega_d; }), field([](const BiasPoint& b) { return b.phi_x; }),
           field([](const BiasPoint& b) { return b.nx[0]; }), field([](const BiasPoint& b) { return b.nx[1]; }),
           field([](const BiasPoint& b) { return b.nx[2]; }), r.error});
  }
  ctx.finish(w, path,
             {{"gamma_reference", fmt::format("{:.12g}", waveguide_coupling(c.circuit, tc.reference_omega_d))}});
}

void run_transmon(Context& ctx) {
  const RunConfig& c = ctx.config;
  const auto records = transmon_limit_sweep(c.circuit, c.transmon.ratios, c.conditions.solver, ctx.threads);
  const std::string path = ctx.path("transmon_sweep");
  CsvWriter w(path, kTransmonColumns);
  for (const TransmonRecord& r : records) {
    w.row({r.ratio, r.nonreciprocity, r.gamma_coupling,
           r.bias ? std::optional<double>(r.bias->phi_x) : std::nullopt,
           r.bias ? std::optional<double>(r.bias->omega_d) : std::nullopt, r.error});
  }
  ctx.finish(w, path);
}

void run_qp_map(Context& ctx) {
  const RunConfig& c = ctx.config;
  const auto records = sector_fidelity_map(c.circuit, c.bias, electron_truncation(c.truncation), phi_values(c),
                                           omega_values(c), c.qp.total_parity, ctx.threads);
  const std::string path = ctx.path("qp_map");
  CsvWriter w(path, kQpMapColumns);
  for (const SectorMapRecord& r : records) {
    w.row({r.phi_x, r.omega_d, sector_name(r.sector), r.fidelity, r.s21, r.s31});
  }
  ctx.finish(w, path);
}

void run_qp_rates(Context& ctx) {
  const RunConfig& c = ctx.config;
  const SectorModel m = build_sector_model(c.circuit, c.bias, electron_truncation(c.truncation), c.qp.total_parity);
  const QpEnvironment env = make_qp_environment(c.circuit, c.circuit.t_qp_k);
  const SectorRates rates = sector_rates(m, env, c.qp.levels);
  const std::string path = ctx.path("qp_rates");
  CsvWriter w(path, kQpRateColumns);
  for (const QpTransition& t : rates.table) {
    w.row({tunneling_name(t.op), sector_name(t.from), static_cast<long long>(t.k), sector_name(t.to),
           static_cast<long long>(t.k_to), t.matrix_element_sq, t.omega, t.rate, t.rate_hz});
  }
  ctx.finish(w, path, {{"x_qp", fmt::format("{:.6e}", env.x_qp)}});
  const std::string agg_path = ctx.path("qp_rates_aggregated");
  CsvWriter a(agg_path, kQpAggregateColumns);
  for (Sector from : kSectors) {
    for (Sector to : kSectors) {
      if (from != to) a.row({sector_name(from), sector_name(to), rates.aggregated_hz(static_cast<int>(from), static_cast<int>(to))});
    }
  }
  ctx.finish(a, agg_path);
}

void run_qp_spectra(Context& ctx) {
  const RunConfig& c = ctx.config;
  const auto records = composed_spectra(c.circuit, c.bias, electron_truncation(c.truncation), phi_values(c),
                                        c.truncation.k_levels, c.qp.total_parity, ctx.threads);
  const std::string path = ctx.path("qp_spectra");
  CsvWriter w(path, kQpSpectraColumns);
  for (const SpectrumRecord& r : records) {
    w.row({r.phi_x, sector_name(r.sector), static_cast<long long>(r.k), r.omega});
  }
  ctx.finish(w, path);
}

void run_qp_jump(Context& ctx) {
  const RunConfig& c = ctx.config;
  const std::uint64_t seed = ctx.required_seed();
  const SectorModel m = build_sector_model(c.circuit, c.bias, electron_truncation(c.truncation), c.qp.total_parity);
  const QpEnvironment env = make_qp_environment(c.circuit, c.circuit.t_qp_k);
  const SectorRates rates = sector_rates(m, env, c.qp.levels);
  std::array<double, 4> fidelity{};
  for (std::size_t s = 0; s < 4; ++s) {
    fidelity[s] = sector_scattering(m, c.circuit, kSectors[s], c.bias.omega_d, c.truncation.k_levels).fidelity_cw;
  }
  JumpOptions jo;
  jo.duration = c.qp.duration_s;
  jo.initial = c.qp.initial;
  jo.seed = seed;
  jo.waveguide_rate_hz = env.to_hertz(waveguide_coupling(c.circuit, c.bias.omega_d));
  jo.sector_fidelity = fidelity;
  jo.max_jumps = c.qp.max_jumps;
  const JumpTrajectory t = sector_jump_process(rates.aggregated_hz, jo);
  const std::string path = ctx.path("qp_jump");
  CsvWriter w(path, kQpJumpColumns);
  for (std::size_t i = 0; i < t.times.size(); ++i) {
    w.row({t.times[i], sector_name(t.sectors[i]), t.fidelity[i]});
  }
  ctx.finish(w, path, {{"jumps", std::to_string(t.jumps())}, {"mean_dwell_s", fmt::format("{:.6e}", t.mean_dwell())}});
  const std::string occ_path = ctx.path("qp_jump_occupancy");
  CsvWriter o(occ_path, kQpOccupancyColumns);
  for (std::size_t s = 0; s < 4; ++s) o.row({sector_name(kSectors[s]), t.occupancy[s], fidelity[s]});
  ctx.finish(o, occ_path);
}

using Runner = void (*)(Context&);

const std::map<std::string, Runner>& runners() {
  static const std::map<std::string, Runner> table{
      {"spectrum", run_spectrum},         {"scatter", run_scatter},     {"optimize", run_optimize},
      {"tolerance-map", run_tolerance},   {"transmon-sweep", run_transmon}, {"qp-map", run_qp_map},
      {"qp-rates", run_qp_rates},         {"qp-spectra", run_qp_spectra}, {"qp-jump", run_qp_jump}};
  return table;
}

}  // namespace

const std::vector<std::string>& subcommand_names() {
  static const std::vector<std::string> names{"spectrum",       "scatter", "optimize",   "tolerance-map", "transmon-sweep",
                                              "qp-map",         "qp-rates", "qp-spectra", "qp-jump"};
  return names;
}

std::vector<std::pair<std::string, Schema>> csv_schemas(const std::string& name) {
  if (name == "spectrum") return {{"spectrum", spectrum_columns(4)}};
  if (name == "scatter") return {{"scatter", kScatterColumns}};
  if (name == "optimize") return {{"optimize_summary", kSummaryColumns}, {"optimize_trace_seed{seed}", kTraceColumns}};
  if (name == "tolerance-map") return {{"tolerance_map", kToleranceColumns}};
  if (name == "transmon-sweep") return {{"transmon_sweep", kTransmonColumns}};
  if (name == "qp-map") return {{"qp_map", kQpMapColumns}};
  if (name == "qp-rates") return {{"qp_rates", kQpRateColumns}, {"qp_rates_aggregated", kQpAggregateColumns}};
  if (name == "qp-spectra") return {{"qp_spectra", kQpSpectraColumns}};
  if (name == "qp-jump") return {{"qp_jump", kQpJumpColumns}, {"qp_jump_occupancy", kQpOccupancyColumns}};
  throw ConfigError("subcommand", "unknown subcommand '" + name + "'");
}

int resolve_threads(const RunConfig& config, std::optional<int> cli) {
  int n = config.threads;
  if (const char* env = std::getenv("CIRCRING_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 0) {
      throw ConfigError("CIRCRING_THREADS", std::string("expected a non-negative integer, got '") + env + "'");
    }
    n = static_cast<int>(v);
  }
  if (cli) {
    if (*cli < 0) throw ConfigError("--threads", "must be non-negative");
    n = *cli;
  }
  if (n == 0) n = static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
  return n;
}

RunResult run_subcommand(const std::string& name, const RunConfig& config, const RunOptions& options) {
  const auto it = runners().find(name);
  if (it == runners().end()) throw ConfigError("subcommand", "unknown subcommand '" + name + "'");
  config.validate();
  std::filesystem::create_directories(options.out_dir);
  Context ctx{config, name, options.out_dir, options.seed ? options.seed : config.seed,
              resolve_threads(config, options.threads), {}};
  it->second(ctx);
  return std::move(ctx.result);
}

}  // namespace circring

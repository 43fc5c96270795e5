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

#include "circring/calibrate.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "circring/errors.hpp"
#include "circring/parallel.hpp"

namespace circring {

namespace {

constexpr double kPi = std::numbers::pi;

TruncationSpec truncation(int n_max, int k_levels) {
  TruncationSpec t;
  t.n_max = n_max;
  t.k_levels = k_levels;
  return t;
}

BiasPoint symmetric_bias(double phi_x) {
  BiasPoint b;
  b.phi_x = phi_x;
  b.nx = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  return b;
}

double clockwise_fidelity(const Eigen::VectorXd& omegas, const CouplingTable& c, const CircuitParams& params,
                          double omega_d) {
  return make_result(s_matrix_adiabatic(omegas, c, waveguide_coupling(params, omega_d), omega_d)).fidelity_cw;
}

}  // namespace

std::string to_string(Termination t) {
  switch (t) {
    case Termination::converged:
      return "converged";
    case Termination::step_limit:
      return "step-limit";
    case Termination::stalled:
      return "stalled";
  }
  return "unknown";
}

void OptimizerConfig::validate() const {
  if (max_steps < 1) throw ConfigError("optimizer.max_steps", "must be at least 1");
  if (!(rel_tol > 0.0)) throw ConfigError("optimizer.rel_tol", "must be positive");
  if (window < 1) throw ConfigError("optimizer.window", "must be at least 1");
  if (!(initial_step > 0.0 && initial_step <= 0.5)) throw ConfigError("optimizer.initial_step", "must be in (0, 0.5]");
  if (n_max < 1) throw ConfigError("optimizer.n_max", "must be at least 1");
  if (k_levels < 2) throw ConfigError("optimizer.k_levels", "at least two excited levels are required");
  if (phi_scan_points < 2) throw ConfigError("optimizer.phi_scan_points", "must be at least 2");
  if (!(phi_window[0] < phi_window[1])) throw ConfigError("optimizer.phi_window", "empty range");
  for (int i = 0; i < 5; ++i) {
    if (!(bounds.lower[i] < bounds.upper[i])) throw ConfigError("optimizer.bounds", "empty range");
    if (!(init_ranges.lower[i] <= init_ranges.upper[i])) throw ConfigError("optimizer.init_ranges", "empty range");
    if (init_ranges.lower[i] < bounds.lower[i] || init_ranges.upper[i] > bounds.upper[i]) {
      throw ConfigError("optimizer.init_ranges", "must lie inside optimizer.bounds");
    }
  }
}

std::optional<int> OptimizationTrace::first_step_reaching(double level) const {
  for (const auto& s : steps) {
    if (s.fidelity >= level) return s.step;
  }
  return std::nullopt;
}

ConditionDiagnostics condition_diagnostics(const RingModel& model, const CircuitParams& params, double omega_d) {
  const CouplingTable c = coupling_matrix_elements(model, 2);
  ConditionDiagnostics d;
  d.omega1 = model.eigenvalues(1);
  d.omega2 = model.eigenvalues(2);
  d.omega_d = omega_d;
  d.gamma_coupling = waveguide_coupling(params, omega_d);
  const double omegas[2] = {d.omega1, d.omega2};
  for (int k = 0; k < 2; ++k) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (int j = 0; j < 3; ++j) {
      const double m = std::abs(c.relax(j, k));
      d.magnitude[k][j] = m;
      lo = std::min(lo, m);
      hi = std::max(hi, m);
    }
    d.dipole_spread = std::max(d.dipole_spread, hi - lo);
    d.phase[k][0] = std::arg(c.relax(0, k));
    d.phase[k][1] = std::arg(c.relax(1, k));
    d.gamma[k] = c.relax.col(k).squaredNorm();
    d.r[k] = std::sqrt(d.gamma[k] / 3.0);
    const double detuning = (omegas[k] - omega_d) / d.gamma_coupling;
    d.x[k] = d.r[k] * d.r[k] / std::hypot(detuning, 0.5 * d.gamma[k]);
    d.theta[k] = std::atan2(-2.0 * detuning, d.gamma[k]);
  }
  d.ratio_drive = 2.0 * omega_d / (d.omega1 + d.omega2);
  const double gamma_mean = 0.5 * (d.gamma[0] + d.gamma[1]);
  d.ratio_coupling = gamma_mean * d.gamma_coupling / (d.omega2 - d.omega1);
  return d;
}

ScatteringResult evaluate_bias(const CircuitParams& params, const BiasPoint& bias, const TruncationSpec& trunc) {
  const RingModel model = build_ring_model(params, bias, trunc);
  return s_matrix_adiabatic(model, waveguide_coupling(params, bias.omega_d), bias.omega_d, trunc.k_levels);
}

std::pair<double, double> best_drive_frequency(const RingModel& model, const CircuitParams& params, int k_levels,
                                               double lo, double hi) {
  const CouplingTable c = coupling_matrix_elements(model, k_levels);
  const Eigen::VectorXd& w = model.eigenvalues;
  auto f = [&](double omega_d) { return clockwise_fidelity(w, c, params, omega_d); };

  // Features have width ~Γγ_k around each resonance; sample those windows
  // densely and the rest of the band coarsely.
  std::vector<double> grid;
  const int coarse = 64;
  for (int i = 0; i <= coarse; ++i) grid.push_back(lo + (hi - lo) * i / coarse);
  for (int k = 1; k <= k_levels; ++k) {
    const double g = waveguide_coupling(params, w(k));
    const double gamma_k = c.relax.col(k - 1).squaredNorm();
    const double half = 10.0 * g;
    const double step = g * std::max(gamma_k, 0.02) / 8.0;
    for (double x = w(k) - half; x <= w(k) + half; x += step) {
      if (x >= lo && x <= hi) grid.push_back(x);
    }
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::size_t best = 0;
  double best_f = -std::numeric_limits<double>::infinity();
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    values[i] = f(grid[i]);
    if (values[i] > best_f) {
      best_f = values[i];
      best = i;
    }
  }
  const double a = grid[best == 0 ? 0 : best - 1];
  const double b = grid[std::min(best + 1, grid.size() - 1)];
  if (b > a) {
    const auto [x, neg] = boost::math::tools::brent_find_minima([&](double x) { return -f(x); }, a, b, 40);
    if (-neg > best_f) return {x, -neg};
  }
  return {grid[best], best_f};
}

BiasPoint random_initial_bias(const OptimizerConfig& config, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::array<double, 5> v{};
  for (int i = 0; i < 5; ++i) {
    v[i] = config.init_ranges.lower[i] + (config.init_ranges.upper[i] - config.init_ranges.lower[i]) * u(rng);
  }
  BiasPoint b;
  b.omega_d = v[0];
  b.phi_x = v[1];
  b.nx = {v[2], v[3], v[4]};
  return b;
}

NelderMeadResult nelder_mead_maximize(const std::function<double(const Eigen::VectorXd&)>& f,
                                      const Eigen::VectorXd& x0, const Eigen::VectorXd& lower,
                                      const Eigen::VectorXd& upper, const OptimizerConfig& config,
                                      std::uint64_t seed, const StepCallback& on_step) {
  const auto n = x0.size();
  const Eigen::VectorXd span = upper - lower;
  auto to_x = [&](const Eigen::VectorXd& u) -> Eigen::VectorXd {
    return lower + span.cwiseProduct(u.cwiseMax(0.0).cwiseMin(1.0));
  };
  int evaluations = 0;
  auto eval = [&](const Eigen::VectorXd& u) {
    ++evaluations;
    return f(to_x(u));
  };

  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<Eigen::VectorXd> simplex(static_cast<std::size_t>(n + 1));
  std::vector<double> values(static_cast<std::size_t>(n + 1));
  auto build_simplex = [&](const Eigen::VectorXd& centre, double step, bool randomize) {
    simplex[0] = centre;
    std::uniform_real_distribution<double> jitter(0.5, 1.5);
    for (Eigen::Index i = 0; i < n; ++i) {
      Eigen::VectorXd v = centre;
      double h = step * (randomize ? jitter(rng) : 1.0);
      if (randomize && (rng() & 1U)) h = -h;
      if (v(i) + h > 1.0 || v(i) + h < 0.0) h = -h;
      v(i) = std::clamp(v(i) + h, 0.0, 1.0);
      simplex[static_cast<std::size_t>(i + 1)] = v;
    }
    values[0] = eval(simplex[0]);
    for (std::size_t i = 1; i < simplex.size(); ++i) values[i] = eval(simplex[i]);
  };
  auto order = [&] {
    std::vector<std::size_t> idx(simplex.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    std::vector<Eigen::VectorXd> s2;
    std::vector<double> v2;
    for (auto i : idx) {
      s2.push_back(simplex[i]);
      v2.push_back(values[i]);
    }
    simplex = std::move(s2);
    values = std::move(v2);
  };

  Eigen::VectorXd u0 = (x0 - lower).cwiseQuotient(span).cwiseMax(0.0).cwiseMin(1.0);
  build_simplex(u0, config.initial_step, false);
  order();
  const Eigen::VectorXd first_best = simplex[0];
  NelderMeadResult result;
  std::vector<double> history{values[0]};
  if (on_step) on_step(0, to_x(simplex[0]), values[0], evaluations);
  int window_start = 0;

  for (int step = 1; step <= config.max_steps; ++step) {
    const std::size_t w = simplex.size() - 1;
    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (std::size_t i = 0; i < w; ++i) centroid += simplex[i];
    centroid /= static_cast<double>(w);
    auto clamp01 = [](Eigen::VectorXd v) { return Eigen::VectorXd(v.cwiseMax(0.0).cwiseMin(1.0)); };

    // Standard coefficients: reflection 1, expansion 2, contraction and shrink 1/2.
    const double ca = 1.0, ce = 2.0, cc = 0.5, cs = 0.5;
    const Eigen::VectorXd xr = clamp01(centroid + ca * (centroid - simplex[w]));
    const double fr = eval(xr);
    if (fr > values[0]) {
      const Eigen::VectorXd xe = clamp01(centroid + ce * (centroid - simplex[w]));
      const double fe = eval(xe);
      if (fe > fr) {
        simplex[w] = xe;
        values[w] = fe;
      } else {
        simplex[w] = xr;
        values[w] = fr;
      }
    } else if (fr > values[w - 1]) {
      simplex[w] = xr;
      values[w] = fr;
    } else {
      const bool outside = fr > values[w];
      const Eigen::VectorXd xc =
          outside ? Eigen::VectorXd(centroid + cc * (xr - centroid)) : Eigen::VectorXd(centroid + cc * (simplex[w] - centroid));
      const double fc = eval(xc);
      if (outside ? fc >= fr : fc > values[w]) {
        simplex[w] = xc;
        values[w] = fc;
      } else {
        for (std::size_t i = 1; i < simplex.size(); ++i) {
          simplex[i] = simplex[0] + cs * (simplex[i] - simplex[0]);
          values[i] = eval(simplex[i]);
        }
      }
    }
    order();
    history.push_back(values[0]);
    if (on_step) on_step(step, to_x(simplex[0]), values[0], evaluations);

    if (step - window_start >= config.window) {
      const double now = history.back();
      const double before = history[history.size() - 1 - static_cast<std::size_t>(config.window)];
      if (std::abs(now - before) <= config.rel_tol * std::max(std::abs(now), 1e-300)) {
        // No progress over the window. A flat simplex carries no direction;
        // a wide one that has already climbed may sit on a ridge. Either way
        // restart once from a perturbed simplex, then stop. A simplex that
        // never improved on its start has confirmed a fixed point.
        const double spread = values.front() - values.back();
        const bool flat = spread <= config.rel_tol * std::max(std::abs(now), 1e-300);
        double diam = 0.0;
        for (std::size_t i = 1; i < simplex.size(); ++i) {
          diam = std::max(diam, (simplex[i] - simplex[0]).lpNorm<Eigen::Infinity>());
        }
        const bool ridge = diam > 1e-3 && simplex[0] != first_best;
        if (config.restart_on_stall && !result.restarted && (flat || ridge)) {
          result.restarted = true;
          build_simplex(simplex[0], flat ? config.initial_step : std::max(diam, 0.01), true);
          order();
          window_start = step;
          continue;
        }
        if (!flat) {
          result.termination = Termination::converged;
          break;
        }
        result.termination = Termination::stalled;
        break;
      }
    }
  }
  result.best_x = to_x(simplex[0]);
  result.best_f = values[0];
  return result;
}

OptimizationTrace optimize_fidelity(const CircuitParams& params, const BiasPoint& init, const OptimizerConfig& config,
                                    std::uint64_t seed) {
  params.validate();
  config.validate();
  const TruncationSpec trunc = truncation(config.n_max, config.k_levels);
  const auto& lo = config.bounds.lower;
  const auto& hi = config.bounds.upper;

  // The ring eigenstates do not depend on ω_d, so every diagonalized model
  // is maximized over ω_d directly. With profile_flux the simplex moves in
  // n_x and φ_x is maximized per evaluation; otherwise it moves in (φ_x, n_x).
  struct Best {
    double f = -std::numeric_limits<double>::infinity();
    BiasPoint bias;
    ConditionDiagnostics diag;
  } best;
  auto at = [&](const std::array<double, 3>& nx, double phi) {
    BiasPoint b = init;
    b.phi_x = phi;
    b.nx = nx;
    const RingModel model = build_ring_model(params, b, trunc);
    const auto [omega_d, f] = best_drive_frequency(model, params, config.k_levels, lo[0], hi[0]);
    if (f > best.f) {
      b.omega_d = omega_d;
      best.f = f;
      best.bias = b;
      best.diag = condition_diagnostics(model, params, omega_d);
    }
    return f;
  };
  auto flux_profile = [&](const std::array<double, 3>& nx) {
    const double a = std::max(config.phi_window[0], lo[1]);
    const double b = std::min(config.phi_window[1], hi[1]);
    const int n = config.phi_scan_points;
    const double h = (b - a) / (n - 1);
    double top = -std::numeric_limits<double>::infinity();
    double top_phi = a;
    for (int i = 0; i < n; ++i) {
      const double phi = a + h * i;
      const double f = at(nx, phi);
      if (f > top) {
        top = f;
        top_phi = phi;
      }
    }
    std::uintmax_t iterations = 12;
    const double refined = -boost::math::tools::brent_find_minima([&](double p) { return -at(nx, p); },
                                                                  std::max(a, top_phi - h), std::min(b, top_phi + h),
                                                                  20, iterations)
                                .second;
    return std::max(top, refined);
  };

  const int offset = config.profile_flux ? 2 : 1;
  const int dims = 5 - offset;
  std::function<double(const Eigen::VectorXd&)> objective;
  if (config.profile_flux) {
    objective = [&](const Eigen::VectorXd& x) { return flux_profile({x(0), x(1), x(2)}); };
  } else {
    objective = [&](const Eigen::VectorXd& x) { return at({x(1), x(2), x(3)}, x(0)); };
  }
  Eigen::VectorXd x0(dims), lower(dims), upper(dims);
  const std::array<double, 5> start{init.omega_d, init.phi_x, init.nx[0], init.nx[1], init.nx[2]};
  for (int i = 0; i < dims; ++i) {
    x0(i) = start[i + offset];
    lower(i) = lo[i + offset];
    upper(i) = hi[i + offset];
  }
  OptimizationTrace trace;
  auto on_step = [&](int step, const Eigen::VectorXd&, double, int evaluations) {
    TraceStep s;
    s.step = step;
    s.bias = best.bias;
    s.fidelity = best.f;
    s.evaluations = evaluations;
    s.diagnostics = best.diag;
    trace.steps.push_back(s);
  };
  const NelderMeadResult r = nelder_mead_maximize(objective, x0, lower, upper, config, seed, on_step);
  trace.termination = r.termination;
  trace.restarted = r.restarted;
  trace.sub_optimal_trap = best.f < config.trap_threshold;
  return trace;
}

BiasPoint solve_conditions(const CircuitParams& params, bool symmetric, const ConditionConfig& config) {
  params.validate();
  const TruncationSpec trunc = truncation(config.n_max, config.k_levels);

  // h(φ) = Γ(ω_d(φ)) - √3 (ω_2 - ω_1)/γ at n_x = 1/3.
  CircuitParams sym = params;
  if (!symmetric) {
    const double mean = (params.ej[0] + params.ej[1] + params.ej[2]) / 3.0;
    sym.ej = {mean, mean, mean};
  }
  auto h = [&](double phi) {
    const RingModel m = build_ring_model(sym, symmetric_bias(phi), trunc);
    const ConditionDiagnostics d = condition_diagnostics(m, sym, 0.5 * (m.eigenvalues(1) + m.eigenvalues(2)));
    const double gamma = 0.5 * (d.gamma[0] + d.gamma[1]);
    return d.gamma_coupling - std::sqrt(3.0) * (d.omega2 - d.omega1) / gamma;
  };
  std::vector<double> phis;
  std::vector<double> hs;
  for (int i = 0; i <= config.scan_points; ++i) {
    phis.push_back(config.phi_lo + (config.phi_hi - config.phi_lo) * i / config.scan_points);
    hs.push_back(h(phis.back()));
  }
  std::vector<double> roots;
  for (std::size_t i = 0; i + 1 < phis.size(); ++i) {
    if (!std::isfinite(hs[i]) || !std::isfinite(hs[i + 1])) continue;
    if (hs[i] == 0.0) roots.push_back(phis[i]);
    if (hs[i] * hs[i + 1] < 0.0) {
      boost::math::tools::eps_tolerance<double> tol(40);
      std::uintmax_t iters = 100;
      const auto [a, b] = boost::math::tools::toms748_solve(h, phis[i], phis[i + 1], hs[i], hs[i + 1], tol, iters);
      roots.push_back(0.5 * (a + b));
    }
  }
  if (roots.empty()) {
    throw ConditionSolveError("no root of the coupling condition for phi_x in [" + std::to_string(config.phi_lo) +
                              ", " + std::to_string(config.phi_hi) + "]; Gamma is outside the achievable range");
  }
  BiasPoint best;
  double best_f = -std::numeric_limits<double>::infinity();
  for (double phi : roots) {
    BiasPoint b = symmetric_bias(phi);
    const RingModel m = build_ring_model(sym, b, trunc);
    b.omega_d = 0.5 * (m.eigenvalues(1) + m.eigenvalues(2));
    const double f = s_matrix_adiabatic(m, waveguide_coupling(sym, b.omega_d), b.omega_d, config.k_levels).fidelity_cw;
    if (f > best_f) {
      best_f = f;
      best = b;
    }
  }
  if (symmetric) return best;

  // Asymmetric ring: minimize the condition residuals over (φ_x, n_x).
  auto residual = [&](const Eigen::VectorXd& x) {
    BiasPoint b;
    b.phi_x = x(0);
    b.nx = {x(1), x(2), x(3)};
    const RingModel m = build_ring_model(params, b, trunc);
    const double wd = 0.5 * (m.eigenvalues(1) + m.eigenvalues(2));
    const ConditionDiagnostics d = condition_diagnostics(m, params, wd);
    double r = 0.0;
    for (int k = 0; k < 2; ++k) {
      const double mean = (d.magnitude[k][0] + d.magnitude[k][1] + d.magnitude[k][2]) / 3.0;
      for (int j = 0; j < 3; ++j) r += std::pow((d.magnitude[k][j] - mean) / mean, 2);
    }
    r += std::pow((d.ratio_coupling - std::sqrt(3.0)) / std::sqrt(3.0), 2);
    return -r;
  };
  OptimizerConfig nm;
  nm.max_steps = 300;
  nm.rel_tol = 1e-10;
  nm.window = 20;
  nm.initial_step = 0.02;
  Eigen::VectorXd x0(4), lower(4), upper(4);
  x0 << best.phi_x, best.nx[0], best.nx[1], best.nx[2];
  lower << 0.0, 0.0, 0.0, 0.0;
  upper << 2.0 * kPi, 1.0, 1.0, 1.0;
  const NelderMeadResult r = nelder_mead_maximize(residual, x0, lower, upper, nm, 0);
  BiasPoint out;
  out.phi_x = r.best_x(0);
  out.nx = {r.best_x(1), r.best_x(2), r.best_x(3)};
  const RingModel m = build_ring_model(params, out, trunc);
  out.omega_d = 0.5 * (m.eigenvalues(1) + m.eigenvalues(2));
  return out;
}

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> v;
  if (count == 1) return {lo};
  for (int i = 0; i < count; ++i) v.push_back(lo + (hi - lo) * i / (count - 1));
  return v;
}

ToleranceRecord tolerance_point(const CircuitParams& params, double de2, double de3, const ToleranceMapConfig& config,
                                const BiasPoint& warm_start) {
  ToleranceRecord rec;
  rec.de2_over_gamma = de2;
  rec.de3_over_gamma = de3;
  try {
    const double g = waveguide_coupling(params, config.reference_omega_d);
    CircuitParams p = params;
    p.ej[1] += de2 * g;
    p.ej[2] += de3 * g;
    const OptimizationTrace t = optimize_fidelity(p, warm_start, config.optimizer, config.seed);
    const BiasPoint& b = t.final_step().bias;
    const ScatteringResult s = evaluate_bias(p, b, truncation(config.optimizer.n_max, config.optimizer.k_levels));
    rec.fidelity = s.fidelity_cw;
    rec.r_db = s.r_db;
    rec.il_db = s.il_db;
    rec.bias = b;
  } catch (const Error& e) {
    rec.error = e.what();
  }
  return rec;
}

std::vector<ToleranceRecord> asymmetry_tolerance_map(const CircuitParams& params, const ToleranceMapConfig& config) {
  const BiasPoint warm = solve_conditions(params, true, ConditionConfig{.n_max = config.optimizer.n_max});
  const std::size_t n2 = config.de2_over_gamma.size();
  const std::size_t n3 = config.de3_over_gamma.size();
  std::vector<ToleranceRecord> out(n2 * n3);
  parallel_for(out.size(), config.threads, [&](std::size_t i) {
    out[i] = tolerance_point(params, config.de2_over_gamma[i / n3], config.de3_over_gamma[i % n3], config, warm);
  });
  return out;
}

std::vector<TransmonRecord> transmon_limit_sweep(const CircuitParams& params, const std::vector<double>& ratios,
                                                 const ConditionConfig& config, int threads) {
  std::vector<TransmonRecord> out(ratios.size());
  parallel_for(ratios.size(), threads, [&](std::size_t i) {
    TransmonRecord rec;
    rec.ratio = ratios[i];
    try {
      CircuitParams p = params;
      p.ej = {1.0, 1.0, 1.0};
      p.ec_over_ej = ratios[i];
      // The charge distribution widens as E_CΣ/E_J falls.
      ConditionConfig c = config;
      c.n_max = std::max(config.n_max, static_cast<int>(std::ceil(5.8 * std::pow(1.0 / ratios[i], 0.25))));
      const BiasPoint b = solve_conditions(p, true, c);
      const RingModel m = build_ring_model(p, b, truncation(c.n_max, c.k_levels));
      const double g = waveguide_coupling(p, b.omega_d);
      const ScatteringResult s = s_matrix_adiabatic(m, g, b.omega_d, c.k_levels);
      rec.nonreciprocity = std::abs(s.s(0, 1)) - std::abs(s.s(1, 0));
      rec.gamma_coupling = g;
      rec.bias = b;
    } catch (const Error& e) {
      rec.error = e.what();
    }
    out[i] = rec;
  });
  return out;
}

}  // namespace circring

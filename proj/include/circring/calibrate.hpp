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

#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "circring/circuit_model.hpp"
#include "circring/scattering.hpp"

namespace circring {

/// Quantities entering the optimal-circulation conditions, from the first two
/// excitations of a built model at drive frequency omega_d.
struct ConditionDiagnostics {
  double omega1 = 0.0;
  double omega2 = 0.0;
  double omega_d = 0.0;
  double gamma_coupling = 0.0;  // Γ at omega_d
  std::array<double, 2> gamma{};      // γ_1, γ_2
  std::array<double, 2> r{};          // sqrt(γ_k / 3)
  std::array<std::array<double, 3>, 2> magnitude{};  // |⟨0|q_j|k⟩|, [k-1][j]
  std::array<std::array<double, 2>, 2> phase{};      // arg⟨0|q_j|k⟩ for j = 1, 2, [k-1][j]
  std::array<double, 2> x{};
  std::array<double, 2> theta{};
  double ratio_drive = 0.0;     // 2ω_d / (ω_1 + ω_2)
  double ratio_coupling = 0.0;  // γΓ / (ω_2 - ω_1), γ the mean of γ_1 and γ_2
  /// max over k = 1, 2 of (max_j - min_j) |⟨0|q_j|k⟩|.
  double dipole_spread = 0.0;
};

ConditionDiagnostics condition_diagnostics(const RingModel& model, const CircuitParams& params, double omega_d);

/// Control-parameter box. Order of the packed vector: ω_d, φ_x, n_x1, n_x2, n_x3.
struct ControlBounds {
  std::array<double, 5> lower{0.5, 0.0, 0.0, 0.0, 0.0};
  std::array<double, 5> upper{1.2, 2.0 * 3.14159265358979323846, 1.0, 1.0, 1.0};
  friend bool operator==(const ControlBounds&, const ControlBounds&) = default;
};

struct OptimizerConfig {
  int max_steps = 50;
  double rel_tol = 1e-6;
  int window = 5;
  /// Initial simplex edge as a fraction of each bounded range.
  double initial_step = 0.08;
  bool restart_on_stall = true;
  int n_max = 8;
  int k_levels = 4;
  ControlBounds bounds;
  /// Sub-ranges for random initialization (same packing as ControlBounds).
  ControlBounds init_ranges{{0.70, 1.00, 0.0, 0.0, 0.0}, {0.85, 2.14, 1.0, 1.0, 1.0}};
  double trap_threshold = 0.7;
  /// Move the simplex in n_x only and maximize over φ_x inside each
  /// evaluation: a scan over phi_window, then a Brent refinement. When off,
  /// the simplex moves in (φ_x, n_x). ω_d is always maximized per evaluation.
  bool profile_flux = true;
  std::array<double, 2> phi_window{0.9, 2.6};
  int phi_scan_points = 9;

  void validate() const;
  friend bool operator==(const OptimizerConfig&, const OptimizerConfig&) = default;
};

enum class Termination { converged, step_limit, stalled };
std::string to_string(Termination t);

struct TraceStep {
  int step = 0;
  BiasPoint bias;
  double fidelity = 0.0;  // best so far
  int evaluations = 0;    // cumulative objective evaluations
  ConditionDiagnostics diagnostics;
};

struct OptimizationTrace {
  std::vector<TraceStep> steps;  // steps[0] is the initial simplex
  Termination termination = Termination::step_limit;
  bool restarted = false;
  bool sub_optimal_trap = false;

  const TraceStep& final_step() const { return steps.back(); }
  /// First step index whose best fidelity reaches `level`, if any.
  std::optional<int> first_step_reaching(double level) const;
};

/// Scattering at a bias point with Γ evaluated at bias.omega_d.
ScatteringResult evaluate_bias(const CircuitParams& params, const BiasPoint& bias, const TruncationSpec& trunc);

/// Best clockwise fidelity over ω_d in [lo, hi] for a fixed ring model.
/// Returns (ω_d, F).
std::pair<double, double> best_drive_frequency(const RingModel& model, const CircuitParams& params, int k_levels,
                                               double lo, double hi);

/// Uniform random start inside config.init_ranges.
BiasPoint random_initial_bias(const OptimizerConfig& config, std::uint64_t seed);

/// Bounded Nelder-Mead maximization of F(|S|, S_ideal) over (ω_d, φ_x, n_x).
/// Each trace step is one simplex iteration.
/// Throws TruncationError if any evaluation leaves the charge window.
OptimizationTrace optimize_fidelity(const CircuitParams& params, const BiasPoint& init, const OptimizerConfig& config,
                                    std::uint64_t seed = 0);

/// Box-constrained Nelder-Mead maximizer on normalized coordinates.
struct NelderMeadResult {
  Eigen::VectorXd best_x;
  double best_f = 0.0;
  Termination termination = Termination::step_limit;
  bool restarted = false;
};
using StepCallback = std::function<void(int step, const Eigen::VectorXd& best_x, double best_f, int evaluations)>;
NelderMeadResult nelder_mead_maximize(const std::function<double(const Eigen::VectorXd&)>& f,
                                      const Eigen::VectorXd& x0, const Eigen::VectorXd& lower,
                                      const Eigen::VectorXd& upper, const OptimizerConfig& config,
                                      std::uint64_t seed, const StepCallback& on_step = {});

struct ConditionConfig {
  double phi_lo = 0.05;
  double phi_hi = 3.14159265358979323846 - 0.05;
  int scan_points = 120;
  int n_max = 8;
  int k_levels = 4;
  friend bool operator==(const ConditionConfig&, const ConditionConfig&) = default;
};

/// Working point from the semi-analytic conditions. Symmetric rings use
/// n_x = 1/3 and a bracketed root of Γ(φ_x) = √3 (ω_2 - ω_1)/γ with
/// ω_d = (ω_1 + ω_2)/2; when several roots exist the one with the highest
/// clockwise fidelity wins. Asymmetric rings minimize the condition residuals
/// over (n_x, φ_x) starting from the symmetric solution.
/// Throws ConditionSolveError when no root lies in the bracket.
BiasPoint solve_conditions(const CircuitParams& params, bool symmetric, const ConditionConfig& config = {});

/// Optimizer settings for disorder points: (φ_x, n_x) simplex, wider first
/// step and a longer budget, since each evaluation is a single diagonalization.
inline OptimizerConfig tolerance_optimizer() {
  OptimizerConfig c;
  c.profile_flux = false;
  c.max_steps = 300;
  c.window = 15;
  c.initial_step = 0.15;
  return c;
}

struct ToleranceMapConfig {
  std::vector<double> de2_over_gamma;
  std::vector<double> de3_over_gamma;
  /// ω_d at which the Γ normalizing the disorder axes is evaluated.
  double reference_omega_d = 0.70;
  OptimizerConfig optimizer = tolerance_optimizer();
  int threads = 1;
  std::uint64_t seed = 0;
};

struct ToleranceRecord {
  double de2_over_gamma = 0.0;
  double de3_over_gamma = 0.0;
  std::optional<double> fidelity;
  std::optional<double> r_db;
  std::optional<double> il_db;
  std::optional<BiasPoint> bias;
  std::string error;
};

/// Evenly spaced values including both ends.
std::vector<double> linspace(double lo, double hi, int count);

/// Re-optimized fidelity per (δE_J2/Γ, δE_J3/Γ) grid point from a
/// condition-based warm start; records are in row-major (de2, de3) order.
/// Per-point failures are recorded, not thrown.
std::vector<ToleranceRecord> asymmetry_tolerance_map(const CircuitParams& params, const ToleranceMapConfig& config);

/// Optimized fidelity at one disorder point.
ToleranceRecord tolerance_point(const CircuitParams& params, double de2_over_gamma, double de3_over_gamma,
                                const ToleranceMapConfig& config, const BiasPoint& warm_start);

struct TransmonRecord {
  double ratio = 0.0;
  std::optional<double> nonreciprocity;  // |S_12| - |S_21|
  std::optional<double> gamma_coupling;
  std::optional<BiasPoint> bias;
  std::string error;
};

/// Symmetric-ring working point per E_CΣ/E_J value, re-solved per ratio.
std::vector<TransmonRecord> transmon_limit_sweep(const CircuitParams& params, const std::vector<double>& ratios,
                                                 const ConditionConfig& config = {}, int threads = 1);

}  // namespace circring

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

#include "circring/circuit_model.hpp"

namespace circring {

/// 3x3 scattering matrix S_ij (port j -> port i) and the metrics derived from it.
struct ScatteringResult {
  Eigen::Matrix3cd s = Eigen::Matrix3cd::Identity();
  std::array<double, 3> column_power{};
  double fidelity_cw = 0.0;
  double fidelity_ccw = 0.0;
  double il_db = 0.0;  // insertion loss over S_12, S_23, S_31
  double r_db = 0.0;   // reflection over the diagonal
  double is_db = 0.0;  // isolation over S_13, S_21, S_32
};

/// Coherent input amplitudes (sqrt photon flux, same energy units as Γ).
/// Column j of S is extracted by driving port j alone with beta[j].
struct DriveSpec {
  std::array<Complex, 3> beta{};
  double omega_d = 0.0;

  /// beta = factor * sqrt(gamma) on every port.
  static DriveSpec weak(double gamma, double omega_d, double factor = 1e-3);
};

/// Ideal clockwise circulator: S_12 = S_23 = S_31 = 1.
Eigen::Matrix3d ideal_clockwise();
inline Eigen::Matrix3d ideal_counter_clockwise() { return ideal_clockwise().transpose(); }

/// F(A, B) = 1 - ||A - B||_F / (||A||_F ||B||_F). Throws NumericalError on a
/// zero-norm argument.
double fidelity(const Eigen::Matrix3cd& a, const Eigen::Matrix3cd& b);

/// Fills column powers, both fidelities (against |S|) and the dB metrics.
ScatteringResult make_result(const Eigen::Matrix3cd& s);

/// Adiabatic-elimination closed form
///   S_ij = δ_ij - Σ_k ⟨k|q_j|0⟩⟨0|q_i|k⟩ / (iΔω_k/Γ + γ_k/2),  Δω_k = ω_k - ω_d.
/// Throws TruncationError when k_levels exceeds the model's spectrum.
ScatteringResult s_matrix_adiabatic(const RingModel& model, double gamma, double omega_d, int k_levels);

/// Same closed form from precomputed ingredients (used by sweeps that reuse one
/// diagonalization across many drive frequencies).
Eigen::Matrix3cd s_matrix_adiabatic(const Eigen::VectorXd& omegas, const CouplingTable& couplings, double gamma,
                                    double omega_d);

struct LindbladDiagnostics {
  bool used_time_integration = false;
  int null_space_dimension = 1;
};

/// Steady state of the driven master equation in the frame rotating at ω_d,
/// restricted to the ground state plus k_levels excitations. Ports are driven
/// one at a time; S_ij = (β_i δ_ij + √Γ ⟨q_{i,-}⟩) / β_j. Falls back to time
/// integration when the Liouvillian kernel is not one-dimensional.
ScatteringResult s_matrix_lindblad(const RingModel& model, double gamma, const DriveSpec& drive, int k_levels,
                                   LindbladDiagnostics* diagnostics = nullptr);

/// |P_j - 1| per column.
std::array<double, 3> column_power_check(const ScatteringResult& result);

}  // namespace circring

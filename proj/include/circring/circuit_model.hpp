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
#include <complex>
#include <optional>
#include <vector>

namespace circring {

using Complex = std::complex<double>;

/// Fabrication-level constants of the three-island ring. Energies are in
/// units of the reference Josephson energy E_J unless a suffix says otherwise.
///
/// ej[0], ej[1], ej[2] multiply cos(φ'_1 - φ_x/3), cos(φ'_2 - φ_x/3) and
/// cos(φ'_1 + φ'_2 + φ_x/3): the junctions between islands 3-1, 2-3 and 1-2.
struct CircuitParams {
  std::array<double, 3> ej{1.0, 1.0, 1.0};
  double ej_ghz = 12.92;  // reference E_J / h
  /// When set, replaces the E_CΣ/E_J ratio derived from the capacitances.
  std::optional<double> ec_over_ej;
  double cj_ff = 5.76;
  double cx_ff = 5.95;
  double cc_ff = 10.60;
  double zwg_ohm = 50.0;
  double gap_k = 1.76 * 1.35;  // Δ / k_B
  double t_base_k = 0.020;
  double t_qp_k = 0.200;

  double c_sigma_ff() const { return 3.0 * cj_ff + cx_ff + cc_ff; }
  /// (2e)^2 / (h C_Σ) in GHz.
  double ec_ghz() const;
  /// E_CΣ / E_J used by the Hamiltonian.
  double ec_ratio() const;
  /// Rescaled-bias coefficients c_1 = C_J/(C_x+C_c), c_2 = (C_J+C_x+C_c)/(C_x+C_c).
  double c1() const { return cj_ff / (cx_ff + cc_ff); }
  double c2() const { return (cj_ff + cx_ff + cc_ff) / (cx_ff + cc_ff); }

  /// Throws ConfigError naming the offending field.
  void validate() const;

  friend bool operator==(const CircuitParams&, const CircuitParams&) = default;
};

/// The control knobs: reduced flux, island charge biases (Cooper-pair units),
/// conserved total charge and drive frequency (units of E_J).
struct BiasPoint {
  double phi_x = 0.0;
  std::array<double, 3> nx{0.0, 0.0, 0.0};
  /// Ground-state total charge; 1 is the value for biases summing to 1.
  double n0 = 1.0;
  double omega_d = 0.8;

  friend bool operator==(const BiasPoint&, const BiasPoint&) = default;
};

enum class BasisKind { cooper_pair, single_electron };

struct TruncationSpec {
  /// Half-width of the charge window per axis, counted in basis units
  /// (Cooper pairs, or electrons for the single-electron basis).
  int n_max = 12;
  int k_levels = 4;
  BasisKind basis = BasisKind::cooper_pair;

  int dimension() const { return (2 * n_max + 1) * (2 * n_max + 1); }
  void validate() const;

  friend bool operator==(const TruncationSpec&, const TruncationSpec&) = default;
};

/// A charge basis state |n'_1, n'_2> with both labels counted in basis units.
struct ChargeState {
  int m1 = 0;
  int m2 = 0;
  friend bool operator==(const ChargeState&, const ChargeState&) = default;
};

/// Ring Hamiltonian and coupling operators in a truncated charge basis, with
/// the lowest eigenpairs. Immutable once built.
struct RingModel {
  BasisKind basis = BasisKind::cooper_pair;
  int units_per_pair = 1;
  std::vector<ChargeState> states;
  Eigen::MatrixXcd hamiltonian;
  /// q_j are diagonal in the charge basis; the diagonals are stored.
  std::array<Eigen::VectorXd, 3> q_diagonal;
  std::array<double, 3> rescaled_bias{};
  /// Lowest absolute eigenvalue of `hamiltonian`.
  double ground_energy = 0.0;
  /// Transition energies ω_k (eigenvalues minus ground_energy); entry 0 is 0.
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXcd eigenvectors;
  /// Ground-state weight on charge states missing a Cooper-pair neighbour.
  double boundary_population = 0.0;

  Eigen::Index dimension() const { return hamiltonian.rows(); }
  int levels() const { return static_cast<int>(eigenvalues.size()); }
  Eigen::MatrixXcd q_matrix(int j) const;
};

inline constexpr double kBoundaryPopulationLimit = 1e-10;

/// Options for the generic lattice builder.
struct BuildOptions {
  int levels = 5;  // eigenpairs to compute (ground + excited)
  bool check_truncation = true;
};

/// Builds and diagonalizes the ring on a square charge window centred on the
/// charging-energy minimum. Throws TruncationError when the ground state
/// reaches the window edge and EigenSolveError when diagonalization fails.
RingModel build_ring_model(const CircuitParams& params, const BiasPoint& bias, const TruncationSpec& trunc);

/// Same physics on an arbitrary list of charge states. `units_per_pair` is 1
/// for Cooper-pair labels and 2 for single-electron labels; Josephson terms
/// always move one Cooper pair.
RingModel build_ring_model_on(const CircuitParams& params, const BiasPoint& bias, std::vector<ChargeState> states,
                              int units_per_pair, const BuildOptions& options);

/// Centre of the charge window, in basis units, for the given biases.
ChargeState charge_window_centre(const BiasPoint& bias, int units_per_pair);

/// n'_xj for the given biases.
std::array<double, 3> rescaled_biases(const CircuitParams& params, const BiasPoint& bias);

/// Relaxation amplitudes ⟨0|q_j|k⟩ in the fixed eigenvector gauge.
/// Row j (0-based island), column k-1 for k = 1..k_levels. The excitation
/// amplitude ⟨k|q_j|0⟩ is the complex conjugate.
struct CouplingTable {
  Eigen::MatrixXcd relax;

  Complex excite(int j, int k) const { return std::conj(relax(j, k - 1)); }
  Complex relaxation(int j, int k) const { return relax(j, k - 1); }
  int k_levels() const { return static_cast<int>(relax.cols()); }
};

CouplingTable coupling_matrix_elements(const RingModel& model, int k_levels);
inline CouplingTable coupling_matrix_elements(const RingModel& model) {
  return coupling_matrix_elements(model, model.levels() - 1);
}

/// ⟨a|q_j|b⟩ between arbitrary computed eigenstates.
Complex q_element(const RingModel& model, int j, int a, int b);

/// Γ = 16 (Z_wg / R_K) (C_c / C_Σ)^2 ω_d; result in the units of omega_d.
double waveguide_coupling(const CircuitParams& params, double omega_d);

struct DecayRates {
  Eigen::VectorXd gamma;  // γ_k, index k-1
  Eigen::MatrixXcd q;     // Q_kl = Σ_j ⟨0|q_j|k⟩⟨l|q_j|0⟩, indices k-1, l-1
};

DecayRates decay_rates(const CouplingTable& couplings);

}  // namespace circring

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
#include <Eigen/SparseCore>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "circring/circuit_model.hpp"
#include "circring/scattering.hpp"

namespace circring {

/// Parities of islands 1 and 2; island 3 follows from the total parity.
enum class Sector { EE = 0, EO = 1, OE = 2, OO = 3 };
enum class TotalParity { even, odd };

inline constexpr std::array<Sector, 4> kSectors{Sector::EE, Sector::EO, Sector::OE, Sector::OO};

struct SectorLabel {
  Sector pair = Sector::EE;
  TotalParity total = TotalParity::even;

  /// 'e' or 'o' for island 3.
  char third() const;
  /// "e-e", "e-o", ... (islands 1 and 2 only).
  std::string name() const;
};

std::string sector_name(Sector s);
/// Sector of the electron-number pair (m1, m2) = (n'_1, n'_2).
Sector sector_of(int m1, int m2);

/// Quasiparticle tunneling operators: T_12 = sin((φ'_1 + φ'_2)/2),
/// T_23 = sin(φ'_2/2), T_31 = sin(φ'_1/2).
enum class Tunneling { t12 = 0, t23 = 1, t31 = 2 };
inline constexpr std::array<Tunneling, 3> kTunnelings{Tunneling::t12, Tunneling::t23, Tunneling::t31};
std::string tunneling_name(Tunneling t);
/// Index into CircuitParams::ej of the junction the operator crosses.
int junction_of(Tunneling t);
/// Sector reached from `from` by one tunneling event through `t`.
Sector partner(Sector from, Tunneling t);

/// Equivalent Cooper-pair-basis bias for a sector block: EO shifts
/// (n_x2, n_x3) by (+1/2, -1/2), OE shifts (n_x1, n_x3) by (+1/2, -1/2),
/// OO shifts (n_x1, n_x2) by (+1/2, -1/2). Odd total parity adds 1/2 to n0.
BiasPoint sector_bias(const BiasPoint& bias, Sector s, TotalParity total = TotalParity::even);

/// Ring Hamiltonian in the single-electron basis, block-diagonal over the four
/// sectors, with the tunneling operators between them.
struct SectorModel {
  TotalParity total_parity = TotalParity::even;
  BiasPoint bias;
  /// blocks[s] holds the diagonalized block for sector s; its `states` are the
  /// electron-number pairs of that sector.
  std::array<RingModel, 4> blocks;
  /// Start of each block in the concatenated basis EE, EO, OE, OO.
  std::array<Eigen::Index, 5> offsets{};
  /// T_12, T_23, T_31 in the concatenated basis.
  std::array<Eigen::SparseMatrix<Complex>, 3> t_ops;

  Eigen::Index dimension() const { return offsets[4]; }
  const RingModel& block(Sector s) const { return blocks[static_cast<std::size_t>(s)]; }
  const Eigen::SparseMatrix<Complex>& t_op(Tunneling t) const { return t_ops[static_cast<std::size_t>(t)]; }
  /// Absolute energy of level k in sector s.
  double energy(Sector s, int k) const;
  /// ⟨k', to| T |k, from⟩ for the computed levels (rows k', columns k).
  Eigen::MatrixXcd transition_elements(Tunneling t, Sector from, Sector to) const;
  /// Dense block-diagonal Hamiltonian in the concatenated basis.
  Eigen::MatrixXcd full_hamiltonian() const;
};

/// trunc.basis must be single_electron; n_max counts electrons.
SectorModel build_sector_model(const CircuitParams& params, const BiasPoint& bias, const TruncationSpec& trunc,
                               TotalParity total = TotalParity::even);

struct QpEnvironment {
  double gap = 0.0;    // Δ in units of E_J
  double kt_qp = 0.0;  // k_B T_qp in units of E_J
  double x_qp = 0.0;
  std::array<double, 3> ej_junction{1.0, 1.0, 1.0};
  double ej_ghz = 10.0;  // converts rates to Hz
  /// |ω| below this (E_J units) is evaluated at the floor; S_qp diverges
  /// logarithmically at ω = 0.
  double omega_floor = 1e-3;

  /// Rate in s^-1 for a rate given in units of E_J/ħ.
  double to_hertz(double rate) const;
};

/// √(2π k_B T/Δ) e^{-Δ/k_B T}.
double quasiparticle_density(double gap, double kt);

/// Environment at temperature t_k for the given circuit (gap and E_J from params).
QpEnvironment make_qp_environment(const CircuitParams& params, double t_k);

/// S_qp(ω) in units of E_J/ħ for a junction of energy `ej` (E_J units).
/// Negative ω is the excitation branch. Throws NumericalError if the
/// quadrature does not reach its tolerance.
double qp_spectral_density(double omega, const QpEnvironment& env, double ej);

/// (8 E_J/π) √(2Δ/ω) x_qp.
double qp_spectral_density_high_frequency(double omega, const QpEnvironment& env, double ej);

struct QpTransition {
  Tunneling op = Tunneling::t12;
  Sector from = Sector::EE;
  int k = 0;
  Sector to = Sector::EE;
  int k_to = 0;
  double matrix_element_sq = 0.0;
  double omega = 0.0;  // E_{k,from} - E_{k',to}
  double rate = 0.0;   // E_J/ħ units
  double rate_hz = 0.0;
};

struct SectorRates {
  std::vector<QpTransition> table;
  /// Total rate out of the ground state of sector `from` (row) into sector
  /// `to` (column), summed over final levels and junctions, in Hz.
  Eigen::Matrix4d aggregated_hz = Eigen::Matrix4d::Zero();
};

/// Rates between the lowest `levels` states of every sector pair.
SectorRates sector_rates(const SectorModel& model, const QpEnvironment& env, int levels);

struct SectorMapRecord {
  double phi_x = 0.0;
  double omega_d = 0.0;
  Sector sector = Sector::EE;
  std::optional<double> fidelity;
  std::optional<double> s21;
  std::optional<double> s31;
};

/// Per-sector fidelity landscapes over (φ_x, ω_d) with the EE charge biases
/// held fixed. Records are ordered by φ_x, then ω_d, then sector.
std::vector<SectorMapRecord> sector_fidelity_map(const CircuitParams& params, const BiasPoint& bias,
                                                 const TruncationSpec& trunc, const std::vector<double>& phis,
                                                 const std::vector<double>& omegas,
                                                 TotalParity total = TotalParity::even, int threads = 1);

/// Scattering in one sector at the bias's (φ_x, ω_d).
ScatteringResult sector_scattering(const SectorModel& model, const CircuitParams& params, Sector s, double omega_d,
                                   int k_levels);

struct SpectrumRecord {
  double phi_x = 0.0;
  Sector sector = Sector::EE;
  int k = 0;
  double omega = 0.0;
};

/// Transition energies ω_1..ω_levels of every sector along φ_x.
std::vector<SpectrumRecord> composed_spectra(const CircuitParams& params, const BiasPoint& bias,
                                             const TruncationSpec& trunc, const std::vector<double>& phis,
                                             int levels = 4, TotalParity total = TotalParity::even,
                                             int threads = 1);

struct JumpTrajectory {
  std::vector<double> times;    // entry times, starting at 0
  std::vector<Sector> sectors;  // sector occupied from times[i]
  std::array<double, 4> occupancy{};
  /// Fidelity of the occupied sector per segment, when supplied.
  std::vector<double> fidelity;
  double duration = 0.0;
  int jumps() const { return static_cast<int>(sectors.size()) - 1; }
  /// Mean time between jumps; infinite without jumps.
  double mean_dwell() const;
};

struct JumpOptions {
  double duration = 1.0;  // seconds
  Sector initial = Sector::EE;
  std::uint64_t seed = 0;
  /// Waveguide coupling in s^-1; when positive the quasi-static condition
  /// max total rate / Γ < 1e-3 is enforced.
  double waveguide_rate_hz = 0.0;
  std::optional<std::array<double, 4>> sector_fidelity;
  /// Upper bound on recorded segments.
  std::size_t max_jumps = 10'000'000;
};

/// Continuous-time Markov chain over the sectors with rates in Hz
/// (row = from). Throws NumericalError on negative or non-finite rates and
/// when the quasi-static check fails.
JumpTrajectory sector_jump_process(const Eigen::Matrix4d& rates_hz, const JumpOptions& options);

}  // namespace circring

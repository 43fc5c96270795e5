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

#include "circring/circuit_model.hpp"

#include <cmath>
#include <string>
#include <unordered_map>

#include "circring/errors.hpp"
#include "circring/linalg.hpp"
#include "circring/physical.hpp"

namespace circring {

namespace {

std::int64_t key(int m1, int m2) {
  return (static_cast<std::int64_t>(m1) << 32) ^ static_cast<std::uint32_t>(m2);
}

// Linear coefficients of the charging term E (a^2 + b^2 - ab - a c_a + b c_b).
struct ChargeOffsets {
  double ca;
  double cb;
};

ChargeOffsets charge_offsets(const BiasPoint& bias) {
  return {bias.n0 + bias.nx[0] - bias.nx[2], bias.n0 + bias.nx[1] - bias.nx[2]};
}

}  // namespace


double CircuitParams::ec_ghz() const {
  using namespace physical;
  const double c_sigma = c_sigma_ff() * kFemtofarad;
  return 4.0 * kElementaryCharge * kElementaryCharge / c_sigma / kPlanck / kGiga;
}

double CircuitParams::ec_ratio() const { return ec_over_ej ? *ec_over_ej : ec_ghz() / ej_ghz; }

void CircuitParams::validate() const {
  for (int j = 0; j < 3; ++j) {
    if (!(ej[j] >= 0.0)) throw ConfigError("circuit.ej", "Josephson energies must be non-negative");
  }
  if (!(ej_ghz > 0.0)) throw ConfigError("circuit.ej_ref", "must be positive");
  if (!(cj_ff > 0.0)) throw ConfigError("circuit.cj", "must be positive");
  if (!(cx_ff > 0.0)) throw ConfigError("circuit.cx", "must be positive");
  if (!(cc_ff >= 0.0)) throw ConfigError("circuit.cc", "must be non-negative");
  if (!(zwg_ohm > 0.0)) throw ConfigError("circuit.z_wg", "must be positive");
  if (ec_over_ej && !(*ec_over_ej > 0.0)) throw ConfigError("circuit.ec_over_ej", "must be positive");
  if (!(gap_k > 0.0)) throw ConfigError("circuit.gap", "must be positive");
  if (!(t_base_k >= 0.0)) throw ConfigError("circuit.t_base", "must be non-negative");
  if (!(t_qp_k >= 0.0)) throw ConfigError("circuit.t_qp", "must be non-negative");
}

void TruncationSpec::validate() const {
  if (n_max < 1) throw ConfigError("truncation.n_max", "must be at least 1");
  if (k_levels < 2) throw ConfigError("truncation.k_levels", "at least two excited levels are required");
  if (k_levels + 1 > dimension()) throw ConfigError("truncation.k_levels", "exceeds the basis dimension");
}

Eigen::MatrixXcd RingModel::q_matrix(int j) const {
  return q_diagonal.at(static_cast<std::size_t>(j)).cast<Complex>().asDiagonal();
}

ChargeState charge_window_centre(const BiasPoint& bias, int units_per_pair) {
  const auto [ca, cb] = charge_offsets(bias);
  // Stationary point of the charging quadratic.
  const double a = (2.0 * ca - cb) / 3.0;
  const double b = (ca - 2.0 * cb) / 3.0;
  return {units_per_pair * static_cast<int>(std::lround(a)), units_per_pair * static_cast<int>(std::lround(b))};
}

std::array<double, 3> rescaled_biases(const CircuitParams& p, const BiasPoint& bias) {
  const double c1 = p.c1();
  const double c2 = p.c2();
  const auto& nx = bias.nx;
  const double n0 = bias.n0;
  return {c1 * (n0 - nx[1] - nx[2]) - c2 * nx[0], c1 * (n0 - nx[0] - nx[2]) - c2 * nx[1],
          c2 * (n0 - nx[2]) - c1 * (nx[0] + nx[1])};
}

RingModel build_ring_model_on(const CircuitParams& params, const BiasPoint& bias, std::vector<ChargeState> states,
                              int units_per_pair, const BuildOptions& options) {
  if (units_per_pair != 1 && units_per_pair != 2) throw NumericalError("units_per_pair must be 1 or 2");
  const auto n = static_cast<Eigen::Index>(states.size());
  if (n == 0) throw TruncationError("empty charge basis");

  std::unordered_map<std::int64_t, Eigen::Index> index;
  index.reserve(states.size() * 2);
  for (Eigen::Index i = 0; i < n; ++i) index.emplace(key(states[i].m1, states[i].m2), i);
  auto find = [&](int m1, int m2) -> Eigen::Index {
    const auto it = index.find(key(m1, m2));
    return it == index.end() ? -1 : it->second;
  };

  const double ec = params.ec_ratio();
  const auto [ca, cb] = charge_offsets(bias);
  const double scale = 1.0 / units_per_pair;
  const Complex flux = std::polar(1.0, -bias.phi_x / 3.0);

  RingModel model;
  model.basis = units_per_pair == 1 ? BasisKind::cooper_pair : BasisKind::single_electron;
  model.units_per_pair = units_per_pair;
  model.rescaled_bias = rescaled_biases(params, bias);
  model.hamiltonian = Eigen::MatrixXcd::Zero(n, n);
  for (auto& q : model.q_diagonal) q.resize(n);

  const int u = units_per_pair;
  std::vector<bool> on_edge(static_cast<std::size_t>(n), false);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double a = states[i].m1 * scale;
    const double b = states[i].m2 * scale;
    const double da = a - 0.5 * ca;
    const double db = b + 0.5 * cb;
    model.hamiltonian(i, i) = ec * (da * da + db * db - a * b);

    model.q_diagonal[0](i) = a + model.rescaled_bias[0];
    model.q_diagonal[1](i) = -b + model.rescaled_bias[1];
    model.q_diagonal[2](i) = -a + b + model.rescaled_bias[2];

    // Raising n'_1 by one pair: cos(φ'_1 - φ_x/3), islands 3-1, ej[0].
    // Raising n'_2: cos(φ'_2 - φ_x/3), islands 2-3, ej[1].
    // Raising both: cos(φ'_1 + φ'_2 + φ_x/3), islands 1-2, ej[2].
    const struct {
      int d1, d2;
      double ej;
      Complex phase;
    } hops[3] = {{u, 0, params.ej[0], flux}, {0, u, params.ej[1], flux}, {u, u, params.ej[2], std::conj(flux)}};
    for (const auto& hop : hops) {
      const Eigen::Index up = find(states[i].m1 + hop.d1, states[i].m2 + hop.d2);
      const Eigen::Index down = find(states[i].m1 - hop.d1, states[i].m2 - hop.d2);
      if (up < 0 || down < 0) on_edge[static_cast<std::size_t>(i)] = true;
      if (up >= 0) {
        model.hamiltonian(up, i) += -0.5 * hop.ej * hop.phase;
        model.hamiltonian(i, up) += -0.5 * hop.ej * std::conj(hop.phase);
      }
    }
  }

  const int levels = std::min<int>(options.levels, static_cast<int>(n));
  EigenPairs eig = lowest_eigenpairs(model.hamiltonian, levels);
  model.ground_energy = eig.values(0);
  model.eigenvalues = eig.values.array() - eig.values(0);
  model.eigenvalues(0) = 0.0;
  model.eigenvectors = std::move(eig.vectors);

  double edge = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (on_edge[static_cast<std::size_t>(i)]) edge += std::norm(model.eigenvectors(i, 0));
  }
  model.boundary_population = edge;
  model.states = std::move(states);
  if (options.check_truncation && edge >= kBoundaryPopulationLimit) {
    throw TruncationError("ground-state population on the charge-window boundary is " + std::to_string(edge) +
                          " (limit 1e-10); increase n_max");
  }
  return model;
}

RingModel build_ring_model(const CircuitParams& params, const BiasPoint& bias, const TruncationSpec& trunc) {
  trunc.validate();
  const int u = trunc.basis == BasisKind::cooper_pair ? 1 : 2;
  const ChargeState c = charge_window_centre(bias, u);
  std::vector<ChargeState> states;
  states.reserve(static_cast<std::size_t>(trunc.dimension()));
  for (int d1 = -trunc.n_max; d1 <= trunc.n_max; ++d1) {
    for (int d2 = -trunc.n_max; d2 <= trunc.n_max; ++d2) states.push_back({c.m1 + d1, c.m2 + d2});
  }
  return build_ring_model_on(params, bias, std::move(states), u, {trunc.k_levels + 1, true});
}

Complex q_element(const RingModel& model, int j, int a, int b) {
  const auto& q = model.q_diagonal.at(static_cast<std::size_t>(j));
  return model.eigenvectors.col(a).dot(q.cast<Complex>().cwiseProduct(model.eigenvectors.col(b)));
}

CouplingTable coupling_matrix_elements(const RingModel& model, int k_levels) {
  if (k_levels < 1 || k_levels + 1 > model.levels()) {
    throw TruncationError("requested " + std::to_string(k_levels) + " excited levels but the model holds " +
                          std::to_string(model.levels() - 1));
  }
  CouplingTable t{Eigen::MatrixXcd(3, k_levels)};
  for (int j = 0; j < 3; ++j) {
    const Eigen::VectorXcd q0 = model.q_diagonal[j].cast<Complex>().cwiseProduct(model.eigenvectors.col(0));
    for (int k = 1; k <= k_levels; ++k) {
      // ⟨0|q|k⟩ = conj(⟨k|q|0⟩) with q real diagonal.
      t.relax(j, k - 1) = std::conj(model.eigenvectors.col(k).dot(q0));
    }
  }
  return t;
}

double waveguide_coupling(const CircuitParams& params, double omega_d) {
  const double ratio = params.cc_ff / params.c_sigma_ff();
  return 16.0 * (params.zwg_ohm / physical::kResistanceQuantum) * ratio * ratio * omega_d;
}

DecayRates decay_rates(const CouplingTable& c) {
  const int k = c.k_levels();
  DecayRates d{Eigen::VectorXd(k), Eigen::MatrixXcd(k, k)};
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      Complex s = 0.0;
      for (int j = 0; j < 3; ++j) s += c.relax(j, a) * std::conj(c.relax(j, b));
      d.q(a, b) = s;
    }
    d.gamma(a) = c.relax.col(a).squaredNorm();
    d.q(a, a) = d.gamma(a);
  }
  return d;
}

}  // namespace circring

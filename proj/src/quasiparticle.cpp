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

#include "circring/quasiparticle.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <unordered_map>

#include "circring/errors.hpp"
#include "circring/parallel.hpp"
#include "circring/physical.hpp"

namespace circring {

namespace {

int parity(int m) { return m & 1; }

std::int64_t key(int m1, int m2) {
  return (static_cast<std::int64_t>(m1) << 32) ^ static_cast<std::uint32_t>(m2);
}

// Fermi factors at energies measured in units of k_B T.
double fermi(double e) { return e > 0.0 ? std::exp(-e) / (1.0 + std::exp(-e)) : 1.0 / (1.0 + std::exp(e)); }

}  // namespace

std::string sector_name(Sector s) {
  switch (s) {
    case Sector::EE:
      return "e-e";
    case Sector::EO:
      return "e-o";
    case Sector::OE:
      return "o-e";
    case Sector::OO:
      return "o-o";
  }
  return "?";
}

char SectorLabel::third() const {
  const int p12 = (pair == Sector::EO || pair == Sector::OE) ? 1 : 0;
  const int p3 = (total == TotalParity::odd ? 1 : 0) ^ p12;
  return p3 ? 'o' : 'e';
}

std::string SectorLabel::name() const { return sector_name(pair); }

Sector sector_of(int m1, int m2) { return static_cast<Sector>(2 * parity(m1) + parity(m2)); }

std::string tunneling_name(Tunneling t) {
  switch (t) {
    case Tunneling::t12:
      return "T12";
    case Tunneling::t23:
      return "T23";
    case Tunneling::t31:
      return "T31";
  }
  return "?";
}

int junction_of(Tunneling t) {
  switch (t) {
    case Tunneling::t12:
      return 2;
    case Tunneling::t23:
      return 1;
    case Tunneling::t31:
      return 0;
  }
  return 0;
}

Sector partner(Sector from, Tunneling t) {
  const int s = static_cast<int>(from);
  switch (t) {
    case Tunneling::t12:
      return static_cast<Sector>(s ^ 3);
    case Tunneling::t23:
      return static_cast<Sector>(s ^ 1);
    case Tunneling::t31:
      return static_cast<Sector>(s ^ 2);
  }
  return from;
}

BiasPoint sector_bias(const BiasPoint& bias, Sector s, TotalParity total) {
  BiasPoint b = bias;
  if (total == TotalParity::odd) b.n0 += 0.5;
  switch (s) {
    case Sector::EE:
      break;
    case Sector::EO:
      b.nx[1] += 0.5;
      b.nx[2] -= 0.5;
      break;
    case Sector::OE:
      b.nx[0] += 0.5;
      b.nx[2] -= 0.5;
      break;
    case Sector::OO:
      b.nx[0] += 0.5;
      b.nx[1] -= 0.5;
      break;
  }
  return b;
}

double SectorModel::energy(Sector s, int k) const {
  const RingModel& m = block(s);
  return m.ground_energy + m.eigenvalues(k);
}

Eigen::MatrixXcd SectorModel::transition_elements(Tunneling t, Sector from, Sector to) const {
  const auto f = static_cast<std::size_t>(from);
  const auto g = static_cast<std::size_t>(to);
  const Eigen::MatrixXcd sub = Eigen::MatrixXcd(t_op(t)).block(offsets[g], offsets[f], offsets[g + 1] - offsets[g],
                                                               offsets[f + 1] - offsets[f]);
  return blocks[g].eigenvectors.adjoint() * sub * blocks[f].eigenvectors;
}

Eigen::MatrixXcd SectorModel::full_hamiltonian() const {
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dimension(), dimension());
  for (std::size_t s = 0; s < 4; ++s) {
    const Eigen::Index n = offsets[s + 1] - offsets[s];
    h.block(offsets[s], offsets[s], n, n) = blocks[s].hamiltonian;
  }
  return h;
}

SectorModel build_sector_model(const CircuitParams& params, const BiasPoint& bias, const TruncationSpec& trunc,
                               TotalParity total) {
  if (trunc.basis != BasisKind::single_electron) {
    throw ConfigError("truncation.basis", "sector models need the single-electron basis");
  }
  trunc.validate();
  SectorModel model;
  model.total_parity = total;
  model.bias = bias;
  BiasPoint b = bias;
  if (total == TotalParity::odd) b.n0 += 0.5;

  // Window centred on an even electron pair so that the EE sublattice is the
  // Cooper-pair window.
  const ChargeState c = charge_window_centre(b, 2);
  std::array<std::vector<ChargeState>, 4> lists;
  for (int d1 = -trunc.n_max; d1 <= trunc.n_max; ++d1) {
    for (int d2 = -trunc.n_max; d2 <= trunc.n_max; ++d2) {
      const ChargeState st{c.m1 + d1, c.m2 + d2};
      lists[static_cast<std::size_t>(sector_of(st.m1, st.m2))].push_back(st);
    }
  }
  Eigen::Index offset = 0;
  for (std::size_t s = 0; s < 4; ++s) {
    model.offsets[s] = offset;
    offset += static_cast<Eigen::Index>(lists[s].size());
  }
  model.offsets[4] = offset;

  std::unordered_map<std::int64_t, Eigen::Index> index;
  for (std::size_t s = 0; s < 4; ++s) {
    for (std::size_t i = 0; i < lists[s].size(); ++i) {
      index.emplace(key(lists[s][i].m1, lists[s][i].m2), model.offsets[s] + static_cast<Eigen::Index>(i));
    }
  }

  // sin(θ/2) = (e^{iθ/2} - e^{-iθ/2}) / 2i, and e^{iφ'/2} raises the matching
  // electron number by one.
  const Complex up(0.0, -0.5);
  const struct {
    int d1, d2;
  } shifts[3] = {{1, 1}, {0, 1}, {1, 0}};  // T12, T23, T31
  for (std::size_t t = 0; t < 3; ++t) {
    std::vector<Eigen::Triplet<Complex>> triplets;
    for (std::size_t s = 0; s < 4; ++s) {
      for (std::size_t i = 0; i < lists[s].size(); ++i) {
        const ChargeState& st = lists[s][i];
        const Eigen::Index col = model.offsets[s] + static_cast<Eigen::Index>(i);
        const auto hi = index.find(key(st.m1 + shifts[t].d1, st.m2 + shifts[t].d2));
        if (hi != index.end()) triplets.emplace_back(hi->second, col, up);
        const auto lo = index.find(key(st.m1 - shifts[t].d1, st.m2 - shifts[t].d2));
        if (lo != index.end()) triplets.emplace_back(lo->second, col, -up);
      }
    }
    model.t_ops[t].resize(offset, offset);
    model.t_ops[t].setFromTriplets(triplets.begin(), triplets.end());
  }

  BuildOptions opts;
  opts.levels = trunc.k_levels + 1;
  for (std::size_t s = 0; s < 4; ++s) model.blocks[s] = build_ring_model_on(params, b, lists[s], 2, opts);
  return model;
}

double QpEnvironment::to_hertz(double rate) const { return rate * 2.0 * std::numbers::pi * ej_ghz * physical::kGiga; }

double quasiparticle_density(double gap, double kt) {
  if (kt <= 0.0) return 0.0;
  return std::sqrt(2.0 * std::numbers::pi * kt / gap) * std::exp(-gap / kt);
}

QpEnvironment make_qp_environment(const CircuitParams& params, double t_k) {
  QpEnvironment env;
  const double ej_kelvin = physical::ghz_to_kelvin(params.ej_ghz);
  env.gap = params.gap_k / ej_kelvin;
  env.kt_qp = t_k / ej_kelvin;
  env.x_qp = quasiparticle_density(env.gap, env.kt_qp);
  env.ej_junction = params.ej;
  env.ej_ghz = params.ej_ghz;
  return env;
}

double qp_spectral_density(double omega, const QpEnvironment& env, double ej) {
  if (!(env.gap > 0.0)) throw NumericalError("qp_spectral_density: gap must be positive");
  if (env.kt_qp <= 0.0) return 0.0;
  const double w = std::max(std::abs(omega), env.omega_floor);
  const double a = env.gap / env.kt_qp;  // Δ / k_B T
  const double r = w / env.gap;          // ω / Δ
  const double wt = w / env.kt_qp;       // ω / k_B T
  const bool relax = omega > 0.0;

  // x = u^2 removes the 1/√x endpoint singularity. Relaxation occupies the
  // lower level: f(E)(1 - f(E + ω)); excitation the upper: f(E + ω)(1 - f(E)).
  // Both are normalized by e^{-Δ/k_B T} (for excitation, also e^{-ω/k_B T})
  // so the integrand stays O(1) at any temperature.
  auto integrand = [&](double u) {
    const double e = a * (1.0 + u * u);
    double occ;
    if (relax) {
      occ = std::exp(-a * u * u) / (1.0 + std::exp(-e)) * (1.0 - fermi(e + wt));
    } else {
      occ = std::exp(-a * u * u) / (1.0 + std::exp(-(e + wt))) * (1.0 - fermi(e));
    }
    return 2.0 * occ / std::sqrt(u * u + r);
  };
  // Beyond u_max the occupation is below 1e-18 of its value at the gap edge.
  const double u_max = std::sqrt(std::log(1e18) / a);
  double error = 0.0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, 0.0, u_max, 20, 1e-9, &error);
  if (!std::isfinite(value) || error > 1e-6 * std::abs(value)) {
    throw NumericalError("qp_spectral_density: quadrature did not converge for omega=" + std::to_string(omega) +
                         ", gap=" + std::to_string(env.gap) + ", kT=" + std::to_string(env.kt_qp));
  }
  const double scale = relax ? std::exp(-a) : std::exp(-a - wt);
  return 16.0 * ej / std::numbers::pi * value * scale;
}

double qp_spectral_density_high_frequency(double omega, const QpEnvironment& env, double ej) {
  return 8.0 * ej / std::numbers::pi * std::sqrt(2.0 * env.gap / omega) * env.x_qp;
}

SectorRates sector_rates(const SectorModel& model, const QpEnvironment& env, int levels) {
  SectorRates out;
  for (Tunneling t : kTunnelings) {
    const double ej = env.ej_junction[static_cast<std::size_t>(junction_of(t))];
    for (Sector from : kSectors) {
      const Sector to = partner(from, t);
      const Eigen::MatrixXcd elements = model.transition_elements(t, from, to);
      const int n_from = std::min<int>(levels, static_cast<int>(elements.cols()));
      const int n_to = std::min<int>(levels, static_cast<int>(elements.rows()));
      for (int k = 0; k < n_from; ++k) {
        for (int kp = 0; kp < n_to; ++kp) {
          QpTransition tr;
          tr.op = t;
          tr.from = from;
          tr.k = k;
          tr.to = to;
          tr.k_to = kp;
          tr.matrix_element_sq = std::norm(elements(kp, k));
          tr.omega = model.energy(from, k) - model.energy(to, kp);
          tr.rate = tr.matrix_element_sq * qp_spectral_density(tr.omega, env, ej);
          tr.rate_hz = env.to_hertz(tr.rate);
          if (k == 0) out.aggregated_hz(static_cast<int>(from), static_cast<int>(to)) += tr.rate_hz;
          out.table.push_back(tr);
        }
      }
    }
  }
  return out;
}

ScatteringResult sector_scattering(const SectorModel& model, const CircuitParams& params, Sector s, double omega_d,
                                   int k_levels) {
  return s_matrix_adiabatic(model.block(s), waveguide_coupling(params, omega_d), omega_d, k_levels);
}

std::vector<SectorMapRecord> sector_fidelity_map(const CircuitParams& params, const BiasPoint& bias,
                                                 const TruncationSpec& trunc, const std::vector<double>& phis,
                                                 const std::vector<double>& omegas, TotalParity total,
                                                 int threads) {
  const std::size_t per_phi = omegas.size() * 4;
  std::vector<SectorMapRecord> out(phis.size() * per_phi);
  parallel_for(phis.size(), threads, [&](std::size_t i) {
    BiasPoint b = bias;
    b.phi_x = phis[i];
    std::optional<SectorModel> model;
    try {
      model = build_sector_model(params, b, trunc, total);
    } catch (const Error&) {
    }
    for (std::size_t w = 0; w < omegas.size(); ++w) {
      for (std::size_t s = 0; s < 4; ++s) {
        SectorMapRecord& r = out[i * per_phi + w * 4 + s];
        r.phi_x = phis[i];
        r.omega_d = omegas[w];
        r.sector = kSectors[s];
        if (!model) continue;
        try {
          const ScatteringResult res = sector_scattering(*model, params, kSectors[s], omegas[w], trunc.k_levels);
          r.fidelity = res.fidelity_cw;
          r.s21 = std::abs(res.s(1, 0));
          r.s31 = std::abs(res.s(2, 0));
        } catch (const Error&) {
        }
      }
    }
  });
  return out;
}

std::vector<SpectrumRecord> composed_spectra(const CircuitParams& params, const BiasPoint& bias,
                                             const TruncationSpec& trunc, const std::vector<double>& phis, int levels,
                                             TotalParity total, int threads) {
  TruncationSpec t = trunc;
  t.k_levels = std::max(t.k_levels, levels);
  const std::size_t per_phi = 4 * static_cast<std::size_t>(levels);
  std::vector<SpectrumRecord> out(phis.size() * per_phi);
  parallel_for(phis.size(), threads, [&](std::size_t i) {
    BiasPoint b = bias;
    b.phi_x = phis[i];
    const SectorModel m = build_sector_model(params, b, t, total);
    for (std::size_t s = 0; s < 4; ++s) {
      for (int k = 1; k <= levels; ++k) {
        out[i * per_phi + s * static_cast<std::size_t>(levels) + static_cast<std::size_t>(k - 1)] = {
            phis[i], kSectors[s], k, m.blocks[s].eigenvalues(k)};
      }
    }
  });
  return out;
}

double JumpTrajectory::mean_dwell() const {
  if (jumps() <= 0) return std::numeric_limits<double>::infinity();
  return times.back() / jumps();
}

JumpTrajectory sector_jump_process(const Eigen::Matrix4d& rates, const JumpOptions& options) {
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (!std::isfinite(rates(i, j)) || rates(i, j) < 0.0) {
        throw NumericalError("sector_jump_process: rate (" + std::to_string(i) + "," + std::to_string(j) +
                             ") is negative or not finite");
      }
    }
  }
  if (!(options.duration > 0.0)) throw NumericalError("sector_jump_process: duration must be positive");
  Eigen::Vector4d out_rates;
  for (int i = 0; i < 4; ++i) out_rates(i) = rates.row(i).sum() - rates(i, i);
  if (options.waveguide_rate_hz > 0.0 && out_rates.maxCoeff() / options.waveguide_rate_hz >= 1e-3) {
    throw NumericalError("sector_jump_process: quasi-static condition violated (jump rate / waveguide rate = " +
                         std::to_string(out_rates.maxCoeff() / options.waveguide_rate_hz) + ")");
  }

  JumpTrajectory traj;
  traj.duration = options.duration;
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  int current = static_cast<int>(options.initial);
  double t = 0.0;
  auto push = [&](double time, int s) {
    traj.times.push_back(time);
    traj.sectors.push_back(static_cast<Sector>(s));
    if (options.sector_fidelity) traj.fidelity.push_back((*options.sector_fidelity)[static_cast<std::size_t>(s)]);
  };
  push(0.0, current);
  while (true) {
    const double total = out_rates(current);
    if (total <= 0.0) {
      traj.occupancy[static_cast<std::size_t>(current)] += options.duration - t;
      break;
    }
    const double dwell = -std::log1p(-uniform(rng)) / total;
    if (t + dwell >= options.duration || traj.sectors.size() >= options.max_jumps) {
      traj.occupancy[static_cast<std::size_t>(current)] += options.duration - t;
      break;
    }
    traj.occupancy[static_cast<std::size_t>(current)] += dwell;
    t += dwell;
    double pick = uniform(rng) * total;
    int next = current;
    for (int j = 0; j < 4; ++j) {
      if (j == current) continue;
      next = j;
      pick -= rates(current, j);
      if (pick < 0.0) break;
    }
    current = next;
    push(t, current);
  }
  for (double& o : traj.occupancy) o /= options.duration;
  return traj;
}

}  // namespace circring

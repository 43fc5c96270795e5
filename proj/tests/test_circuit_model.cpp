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

#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "circring/circuit_model.hpp"
#include "circring/errors.hpp"
#include "helpers.hpp"

using namespace circring;

namespace {

// Straight transcription of the ring Hamiltonian on a square Cooper-pair
// window, diagonalized with Eigen's dense solver.
Eigen::VectorXd oracle_spectrum(const CircuitParams& p, const BiasPoint& b, int n_max, int count) {
  const double ec = p.ec_ratio();
  const double ca = b.n0 + b.nx[0] - b.nx[2];
  const double cb = b.n0 + b.nx[1] - b.nx[2];
  const int c1 = static_cast<int>(std::lround((2.0 * ca - cb) / 3.0));
  const int c2 = static_cast<int>(std::lround((ca - 2.0 * cb) / 3.0));
  const int side = 2 * n_max + 1;
  auto idx = [&](int i, int j) { return (i + n_max) * side + (j + n_max); };
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(side * side, side * side);
  const std::complex<double> w = std::polar(1.0, -b.phi_x / 3.0);
  for (int i = -n_max; i <= n_max; ++i) {
    for (int j = -n_max; j <= n_max; ++j) {
      const double a = c1 + i;
      const double bb = c2 + j;
      h(idx(i, j), idx(i, j)) = ec * ((a - ca / 2) * (a - ca / 2) + (bb + cb / 2) * (bb + cb / 2) - a * bb);
      if (i < n_max) {
        h(idx(i + 1, j), idx(i, j)) += -0.5 * p.ej[0] * w;
        h(idx(i, j), idx(i + 1, j)) += -0.5 * p.ej[0] * std::conj(w);
      }
      if (j < n_max) {
        h(idx(i, j + 1), idx(i, j)) += -0.5 * p.ej[1] * w;
        h(idx(i, j), idx(i, j + 1)) += -0.5 * p.ej[1] * std::conj(w);
      }
      if (i < n_max && j < n_max) {
        h(idx(i + 1, j + 1), idx(i, j)) += -0.5 * p.ej[2] * std::conj(w);
        h(idx(i, j), idx(i + 1, j + 1)) += -0.5 * p.ej[2] * w;
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  const Eigen::VectorXd all = es.eigenvalues();
  return (all.head(count).array() - all(0)).matrix();
}

}  // namespace

TEST_CASE("charging energy from the default capacitances") {
  CircuitParams p;
  CHECK(p.c_sigma_ff() == doctest::Approx(33.83));
  CHECK(p.ec_ghz() == doctest::Approx(4.58).epsilon(0.01));
  CHECK(p.ec_ratio() == doctest::Approx(p.ec_ghz() / p.ej_ghz));
  p.ec_over_ej = 0.35;
  CHECK(p.ec_ratio() == 0.35);
}

TEST_CASE("parameter validation names the field") {
  CircuitParams p;
  p.cc_ff = -1.0;
  try {
    p.validate();
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "circuit.cc");
  }
  TruncationSpec t{4, 1};
  CHECK_THROWS_AS(t.validate(), ConfigError);
}

TEST_CASE("charging-only limit is diagonal with ground state |0,0>") {
  CircuitParams p = test::default_params();
  p.ej = {0.0, 0.0, 0.0};
  BiasPoint b;
  b.n0 = 0.0;
  const RingModel m = build_ring_model_on(p, b, test::square_window(3), 1, {5, false});
  const double ec = p.ec_ratio();
  const Eigen::MatrixXcd& h = m.hamiltonian;
  CHECK((h - Eigen::MatrixXcd(h.diagonal().asDiagonal())).norm() == 0.0);
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    const double a = m.states[i].m1;
    const double bb = m.states[i].m2;
    CHECK(h(i, i).real() == doctest::Approx(ec * (a * a + bb * bb - a * bb)));
  }
  CHECK(m.ground_energy == doctest::Approx(0.0));
  CHECK(m.eigenvalues(0) == 0.0);
  // Ground eigenvector sits on |0,0>.
  Eigen::Index top = 0;
  m.eigenvectors.col(0).cwiseAbs().maxCoeff(&top);
  CHECK(m.states[top] == ChargeState{0, 0});
  // Diagonal q: no transition amplitudes.
  const CouplingTable c = coupling_matrix_elements(m, 4);
  CHECK(c.relax.cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("spectrum matches an independent dense diagonalization") {
  const CircuitParams p = test::params_035();
  for (const BiasPoint& b : {test::bias(1.8, {1.0 / 3, 1.0 / 3, 1.0 / 3}), test::bias(0.4, {0.1, 0.7, 0.25}),
                             test::bias(4.0, {0.9, 0.2, 0.6})}) {
    const RingModel m = build_ring_model(p, b, TruncationSpec{8, 4});
    const Eigen::VectorXd ref = oracle_spectrum(p, b, 8, 5);
    for (int k = 0; k < 5; ++k) CHECK(m.eigenvalues(k) == doctest::Approx(ref(k)).epsilon(1e-10));
  }
  CircuitParams asym = p;
  asym.ej = {1.0, 1.01, 0.99};
  const BiasPoint b = test::bias(2.4, {0.1, 0.2, 0.85});
  const RingModel m = build_ring_model(asym, b, TruncationSpec{8, 4});
  const Eigen::VectorXd ref = oracle_spectrum(asym, b, 8, 5);
  for (int k = 0; k < 5; ++k) CHECK(m.eigenvalues(k) == doctest::Approx(ref(k)).epsilon(1e-10));
}

TEST_CASE("eigenvalues converge between n_max 10 and 14") {
  const CircuitParams p = test::params_035();
  const BiasPoint b = test::bias(1.77, {1.0 / 3, 1.0 / 3, 1.0 / 3});
  const RingModel a = build_ring_model(p, b, TruncationSpec{10, 4});
  const RingModel c = build_ring_model(p, b, TruncationSpec{14, 4});
  for (int k = 0; k < 5; ++k) CHECK(std::abs(a.eigenvalues(k) - c.eigenvalues(k)) < 1e-10);
  CHECK(std::abs(a.ground_energy - c.ground_energy) < 1e-10);
}

TEST_CASE("boundary population shrinks with the window and small windows are rejected") {
  const CircuitParams p = test::params_035();
  const BiasPoint b = test::bias(1.0, {0.2, 0.5, 0.3});
  double last = 1.0;
  for (int n : {3, 5, 7, 9}) {
    const RingModel m = build_ring_model_on(p, b, test::square_window(n, charge_window_centre(b, 1)), 1, {5, false});
    CHECK(m.boundary_population < last);
    last = m.boundary_population;
  }
  CHECK_THROWS_AS(build_ring_model(p, b, TruncationSpec{4, 4}), TruncationError);
}

TEST_CASE("Hamiltonian and charge operators are Hermitian; q operators sum to a constant") {
  const CircuitParams p = test::params_035();
  const BiasPoint b = test::bias(2.3, {0.15, 0.62, 0.41});
  const RingModel m = build_ring_model(p, b, TruncationSpec{8, 4});
  CHECK((m.hamiltonian - m.hamiltonian.adjoint()).norm() == 0.0);
  double sum_nx = 0.0;
  for (int j = 0; j < 3; ++j) {
    const Eigen::MatrixXcd q = m.q_matrix(j);
    CHECK((q - q.adjoint()).norm() == 0.0);
    sum_nx += m.rescaled_bias[static_cast<std::size_t>(j)];
  }
  const Eigen::VectorXd total = m.q_diagonal[0] + m.q_diagonal[1] + m.q_diagonal[2];
  CHECK((total.array() - sum_nx).abs().maxCoeff() < 1e-14);
  // Eigenvalues ascending from exactly zero, orthonormal eigenvectors.
  CHECK(m.eigenvalues(0) == 0.0);
  for (int k = 1; k < m.levels(); ++k) CHECK(m.eigenvalues(k) >= m.eigenvalues(k - 1));
  const Eigen::MatrixXcd gram = m.eigenvectors.adjoint() * m.eigenvectors;
  CHECK((gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols())).norm() < 1e-12);
}

TEST_CASE("rescaled biases follow the capacitance coefficients") {
  const CircuitParams p;
  BiasPoint b = test::bias(0.0, {0.2, 0.3, 0.4});
  b.n0 = 1.0;
  const auto r = rescaled_biases(p, b);
  const double c1 = p.cj_ff / (p.cx_ff + p.cc_ff);
  const double c2 = (p.cj_ff + p.cx_ff + p.cc_ff) / (p.cx_ff + p.cc_ff);
  CHECK(r[0] == doctest::Approx(c1 * (1.0 - 0.3 - 0.4) - c2 * 0.2));
  CHECK(r[1] == doctest::Approx(c1 * (1.0 - 0.2 - 0.4) - c2 * 0.3));
  CHECK(r[2] == doctest::Approx(c2 * (1.0 - 0.4) - c1 * (0.2 + 0.3)));
}

TEST_CASE("flux periodicity, half-flux mirror symmetry and pairing") {
  const CircuitParams p = test::params_035();
  const std::array<double, 3> sym{1.0 / 3, 1.0 / 3, 1.0 / 3};
  for (double phi : {0.3, 1.77, 2.9}) {
    const RingModel a = build_ring_model(p, test::bias(phi, {0.2, 0.45, 0.7}), TruncationSpec{8, 4});
    const RingModel c = build_ring_model(p, test::bias(phi + 2.0 * std::numbers::pi, {0.2, 0.45, 0.7}), TruncationSpec{8, 4});
    CHECK((a.eigenvalues - c.eigenvalues).cwiseAbs().maxCoeff() < 1e-10);
  }
  for (double d : {0.2, 0.9, 1.4}) {
    const RingModel lo = build_ring_model(p, test::bias(std::numbers::pi - d, sym), TruncationSpec{8, 4});
    const RingModel hi = build_ring_model(p, test::bias(std::numbers::pi + d, sym), TruncationSpec{8, 4});
    CHECK((lo.eigenvalues - hi.eigenvalues).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(std::abs(lo.ground_energy - hi.ground_energy) < 1e-9);
  }
  // The first two excitations form a near-degenerate pair.
  for (double phi : {1.0, 1.77, 2.5}) {
    const RingModel m = build_ring_model(p, test::bias(phi, sym), TruncationSpec{8, 4});
    CHECK(m.eigenvalues(2) - m.eigenvalues(1) < 0.2 * (m.eigenvalues(3) - m.eigenvalues(2)));
  }
}

TEST_CASE("integer bias translation with a compatible total charge") {
  const CircuitParams p = test::params_035();
  const BiasPoint b = test::bias(1.3, {0.2, 0.45, 0.7});
  const RingModel ref = build_ring_model(p, b, TruncationSpec{8, 4});
  for (int j = 0; j < 3; ++j) {
    BiasPoint s = b;
    s.nx[static_cast<std::size_t>(j)] += 1.0;
    s.n0 += 1.0;
    const RingModel m = build_ring_model(p, s, TruncationSpec{8, 4});
    CHECK((m.eigenvalues - ref.eigenvalues).cwiseAbs().maxCoeff() < 1e-10);
    // Transition amplitudes agree up to the eigenvector phase convention.
    const CouplingTable c0 = coupling_matrix_elements(ref, 2);
    const CouplingTable c1 = coupling_matrix_elements(m, 2);
    CHECK((c0.relax.cwiseAbs() - c1.relax.cwiseAbs()).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("symmetric ring has equal dipole magnitudes; asymmetry breaks them away from half flux") {
  const CircuitParams p = test::params_035();
  const std::array<double, 3> sym{1.0 / 3, 1.0 / 3, 1.0 / 3};
  for (double phi : {0.5, 1.77, 2.6, 4.0}) {
    const RingModel m = build_ring_model(p, test::bias(phi, sym), TruncationSpec{8, 4});
    const CouplingTable c = coupling_matrix_elements(m, 2);
    for (int k = 0; k < 2; ++k) {
      const double r0 = std::abs(c.relax(0, k));
      CHECK(std::abs(std::abs(c.relax(1, k)) - r0) < 1e-7);
      CHECK(std::abs(std::abs(c.relax(2, k)) - r0) < 1e-7);
    }
  }
  CircuitParams asym = p;
  asym.ej = {1.0, 1.01, 0.99};
  auto spread = [&](double phi) {
    const RingModel m = build_ring_model(asym, test::bias(phi, sym), TruncationSpec{8, 4});
    const CouplingTable c = coupling_matrix_elements(m, 2);
    double s = 0.0;
    for (int k = 0; k < 2; ++k) {
      const Eigen::Vector3d r = c.relax.col(k).cwiseAbs();
      s = std::max(s, (r.maxCoeff() - r.minCoeff()) / r.mean());
    }
    return s;
  };
  CHECK(spread(std::numbers::pi - 0.02) < 0.2 * spread(1.0));
}

TEST_CASE("waveguide coupling scales") {
  CircuitParams open;
  open.cc_ff = 0.0;
  CHECK(waveguide_coupling(open, 0.8) == 0.0);
  CircuitParams p;
  p.zwg_ohm = 50.0;
  CHECK(waveguide_coupling(p, 0.8) == doctest::Approx(0.0025).epsilon(0.05));
  p.zwg_ohm = 200.0;
  CHECK(p.cc_ff / p.c_sigma_ff() == doctest::Approx(0.31).epsilon(0.02));
  CHECK(waveguide_coupling(p, 0.77) == doctest::Approx(0.01).epsilon(0.05));
  const double rk = 6.62607015e-34 / (1.602176634e-19 * 1.602176634e-19);
  CHECK(waveguide_coupling(p, 0.77) ==
        doctest::Approx(16.0 * 200.0 / rk * std::pow(p.cc_ff / p.c_sigma_ff(), 2) * 0.77).epsilon(1e-12));
}

TEST_CASE("decay rates: Q diagonal equals gamma and Q_12 is small on the symmetric ring") {
  const CircuitParams p = test::params_035();
  const std::array<double, 3> sym{1.0 / 3, 1.0 / 3, 1.0 / 3};
  for (double phi : {0.6, 1.77, 2.5, 3.9, 5.5}) {
    const RingModel m = build_ring_model(p, test::bias(phi, sym), TruncationSpec{8, 4});
    const DecayRates d = decay_rates(coupling_matrix_elements(m, 4));
    for (int k = 0; k < 4; ++k) CHECK(std::abs(d.q(k, k) - d.gamma(k)) == 0.0);
    CHECK(std::abs(d.q(0, 1)) < 1e-8 * std::min(d.gamma(0), d.gamma(1)));
    CHECK(d.gamma(0) > 0.0);
    CHECK(d.gamma(1) > 0.0);
  }
}

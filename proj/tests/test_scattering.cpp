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

#include <cmath>
#include <random>

#include "circring/calibrate.hpp"
#include "circring/errors.hpp"
#include "circring/scattering.hpp"
#include "helpers.hpp"

using namespace circring;

namespace {

// Adiabatic closed form transcribed from the model operators, without the
// coupling table.
Eigen::Matrix3cd oracle_s(const RingModel& m, double gamma, double omega_d, int k_levels) {
  Eigen::Matrix3cd s = Eigen::Matrix3cd::Identity();
  const Eigen::VectorXcd g = m.eigenvectors.col(0);
  for (int k = 1; k <= k_levels; ++k) {
    const Eigen::VectorXcd e = m.eigenvectors.col(k);
    Complex amp[3];
    double gk = 0.0;
    for (int j = 0; j < 3; ++j) {
      amp[j] = g.dot(m.q_matrix(j) * e);  // ⟨0|q_j|k⟩
      gk += std::norm(amp[j]);
    }
    const Complex den(gk / 2.0, (m.eigenvalues(k) - omega_d) / gamma);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) s(i, j) -= std::conj(amp[j]) * amp[i] / den;
  }
  return s;
}

}  // namespace

TEST_CASE("fidelity metric") {
  const Eigen::Matrix3cd ideal = ideal_clockwise().cast<Complex>();
  CHECK(fidelity(ideal, ideal) == doctest::Approx(1.0));
  CHECK(fidelity(Eigen::Matrix3cd::Identity(), ideal) == doctest::Approx(1.0 - std::sqrt(6.0) / 3.0).epsilon(1e-14));
  CHECK(fidelity(ideal.transpose(), ideal) == doctest::Approx(1.0 - std::sqrt(6.0) / 3.0).epsilon(1e-14));
  CHECK(ideal(0, 1) == 1.0);
  CHECK(ideal(1, 2) == 1.0);
  CHECK(ideal(2, 0) == 1.0);
  CHECK_THROWS_AS(fidelity(Eigen::Matrix3cd::Zero(), ideal), NumericalError);
  const ScatteringResult r = make_result(ideal);
  CHECK(r.fidelity_cw == doctest::Approx(1.0));
  CHECK(r.fidelity_ccw == doctest::Approx(1.0 - std::sqrt(6.0) / 3.0));
  for (double p : r.column_power) CHECK(p == doctest::Approx(1.0));
}

TEST_CASE("adiabatic S matrix agrees with a direct transcription") {
  const CircuitParams p = test::params_035();
  const RingModel m = build_ring_model(p, test::bias(1.9, {0.3, 0.35, 0.4}), TruncationSpec{8, 4});
  for (double wd : {0.6, m.eigenvalues(1), 0.5 * (m.eigenvalues(1) + m.eigenvalues(2)), 1.1}) {
    const double g = waveguide_coupling(p, wd);
    const ScatteringResult r = s_matrix_adiabatic(m, g, wd, 4);
    CHECK((r.s - oracle_s(m, g, wd, 4)).cwiseAbs().maxCoeff() < 1e-12);
  }
  CHECK_THROWS_AS(s_matrix_adiabatic(m, 0.002, 0.8, 9), TruncationError);
}

TEST_CASE("far detuning leaves the identity") {
  const CircuitParams p = test::params_035();
  const RingModel m = build_ring_model(p, test::bias(1.77, {1.0 / 3, 1.0 / 3, 1.0 / 3}), TruncationSpec{8, 4});
  const ScatteringResult r = s_matrix_adiabatic(m, waveguide_coupling(p, 0.3), 0.3, 4);
  CHECK(r.fidelity_cw == doctest::Approx(1.0 - std::sqrt(6.0) / 3.0).epsilon(1e-3));
  CHECK((r.s - Eigen::Matrix3cd::Identity()).norm() < 1e-2);
}

TEST_CASE("symmetric optimum circulates and conserves power") {
  const CircuitParams p = test::params_035();
  const BiasPoint b = solve_conditions(p, true);
  const RingModel m = build_ring_model(p, b, TruncationSpec{8, 4});
  const ScatteringResult ae = s_matrix_adiabatic(m, waveguide_coupling(p, b.omega_d), b.omega_d, 4);
  CHECK(ae.fidelity_cw > 0.95);
  for (double d : column_power_check(ae)) CHECK(d < 1e-2);
  LindbladDiagnostics diag;
  const double g = waveguide_coupling(p, b.omega_d);
  const ScatteringResult lb = s_matrix_lindblad(m, g, DriveSpec::weak(g, b.omega_d), 4, &diag);
  CHECK(diag.null_space_dimension == 1);
  for (double d : column_power_check(lb)) CHECK(d < 1e-3);
  CHECK((ae.s - lb.s).cwiseAbs().maxCoeff() < 1e-2);
}

TEST_CASE("master equation is linear in weak drive and matches the closed form near resonance") {
  const CircuitParams p = test::params_035();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 3; ++trial) {
    const BiasPoint b = test::bias(1.2 + u(rng), {u(rng), u(rng), u(rng)});
    const RingModel m = build_ring_model(p, b, TruncationSpec{8, 4});
    const double g = waveguide_coupling(p, m.eigenvalues(1));
    const double wd = m.eigenvalues(1) + (10.0 * u(rng) - 5.0) * g;
    const ScatteringResult ae = s_matrix_adiabatic(m, waveguide_coupling(p, wd), wd, 4);
    const ScatteringResult l1 = s_matrix_lindblad(m, waveguide_coupling(p, wd), DriveSpec::weak(waveguide_coupling(p, wd), wd, 1e-3), 4);
    const ScatteringResult l2 = s_matrix_lindblad(m, waveguide_coupling(p, wd), DriveSpec::weak(waveguide_coupling(p, wd), wd, 3e-3), 4);
    CHECK((ae.s - l1.s).cwiseAbs().maxCoeff() < 1e-2);
    CHECK((l1.s - l2.s).cwiseAbs().maxCoeff() < 1e-3);
  }
}

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

#include "circring/scattering.hpp"

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>
#include <string>

#include "circring/errors.hpp"

namespace circring {

DriveSpec DriveSpec::weak(double gamma, double omega_d, double factor) {
  const double b = factor * std::sqrt(gamma);
  return {{Complex(b), Complex(b), Complex(b)}, omega_d};
}

Eigen::Matrix3d ideal_clockwise() {
  Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
  m(0, 1) = 1.0;
  m(1, 2) = 1.0;
  m(2, 0) = 1.0;
  return m;
}

double fidelity(const Eigen::Matrix3cd& a, const Eigen::Matrix3cd& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) throw NumericalError("fidelity: zero-norm matrix");
  return 1.0 - (a - b).norm() / (na * nb);
}

ScatteringResult make_result(const Eigen::Matrix3cd& s) {
  ScatteringResult r;
  r.s = s;
  const Eigen::Matrix3d p = s.cwiseAbs2();
  for (int j = 0; j < 3; ++j) r.column_power[j] = p.col(j).sum();
  const Eigen::Matrix3cd mag = s.cwiseAbs().cast<Complex>();
  r.fidelity_cw = fidelity(mag, ideal_clockwise().cast<Complex>());
  r.fidelity_ccw = fidelity(mag, ideal_counter_clockwise().cast<Complex>());
  auto db = [](double x) { return 10.0 * std::log10(x / 3.0); };
  r.il_db = db(p(0, 1) + p(1, 2) + p(2, 0));
  r.r_db = db(p(0, 0) + p(1, 1) + p(2, 2));
  r.is_db = db(p(0, 2) + p(1, 0) + p(2, 1));
  return r;
}

Eigen::Matrix3cd s_matrix_adiabatic(const Eigen::VectorXd& omegas, const CouplingTable& c, double gamma,
                                    double omega_d) {
  if (!(gamma > 0.0)) throw NumericalError("s_matrix_adiabatic: gamma must be positive");
  const int k_levels = c.k_levels();
  Eigen::Matrix3cd s = Eigen::Matrix3cd::Identity();
  for (int k = 1; k <= k_levels; ++k) {
    const double gamma_k = c.relax.col(k - 1).squaredNorm();
    const Complex denom(0.5 * gamma_k, (omegas(k) - omega_d) / gamma);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) s(i, j) -= c.excite(j, k) * c.relaxation(i, k) / denom;
    }
  }
  return s;
}

ScatteringResult s_matrix_adiabatic(const RingModel& model, double gamma, double omega_d, int k_levels) {
  const CouplingTable c = coupling_matrix_elements(model, k_levels);
  return make_result(s_matrix_adiabatic(model.eigenvalues, c, gamma, omega_d));
}

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

MatrixXcd dissipator(const MatrixXcd& l) {
  const auto d = l.rows();
  const MatrixXcd id = MatrixXcd::Identity(d, d);
  const MatrixXcd ldl = l.adjoint() * l;
  return Eigen::kroneckerProduct(l.conjugate(), l).eval() - 0.5 * Eigen::kroneckerProduct(id, ldl).eval() -
         0.5 * Eigen::kroneckerProduct(ldl.transpose(), id).eval();
}

// Trace-one state in the kernel of the Liouvillian `liou` (column-stacked).
VectorXcd steady_state(const MatrixXcd& liou, int d, LindbladDiagnostics& diag) {
  Eigen::FullPivLU<MatrixXcd> lu(liou);
  lu.setThreshold(1e-10);
  diag.null_space_dimension = static_cast<int>(lu.dimensionOfKernel());
  if (diag.null_space_dimension == 1) {
    MatrixXcd a = liou;
    VectorXcd rhs = VectorXcd::Zero(d * d);
    a.row(0).setZero();
    for (int k = 0; k < d; ++k) a(0, k + k * d) = 1.0;
    rhs(0) = 1.0;
    return a.partialPivLu().solve(rhs);
  }

  // Several stationary states: evolve from the ring ground state instead.
  diag.used_time_integration = true;
  VectorXcd rho = VectorXcd::Zero(d * d);
  rho(0) = 1.0;
  const double rate = liou.cwiseAbs().maxCoeff();
  double tau = 1.0 / rate;
  MatrixXcd step = (liou * tau).exp();
  for (int iter = 0; iter < 400; ++iter) {
    rho = step * rho;
    if ((liou * rho).norm() < 1e-12) return rho;
    if (iter % 10 == 9) {
      step = step * step;  // double the step length
      tau *= 2.0;
    }
  }
  throw NumericalError("s_matrix_lindblad: time integration did not reach a steady state");
}

}  // namespace

ScatteringResult s_matrix_lindblad(const RingModel& model, double gamma, const DriveSpec& drive, int k_levels,
                                   LindbladDiagnostics* diagnostics) {
  if (!(gamma > 0.0)) throw NumericalError("s_matrix_lindblad: gamma must be positive");
  const CouplingTable c = coupling_matrix_elements(model, k_levels);
  const int d = k_levels + 1;
  const double sg = std::sqrt(gamma);

  // Rotating-frame lowering parts of q_j: ground <- excited, and excited <- excited.
  std::array<MatrixXcd, 3> lower_ground;
  std::array<MatrixXcd, 3> lower_excited;
  for (int j = 0; j < 3; ++j) {
    lower_ground[j] = MatrixXcd::Zero(d, d);
    lower_excited[j] = MatrixXcd::Zero(d, d);
    for (int k = 1; k < d; ++k) {
      lower_ground[j](0, k) = c.relaxation(j, k);
      for (int l = k + 1; l < d; ++l) lower_excited[j](k, l) = q_element(model, j, k, l);
    }
  }
  MatrixXcd h0 = MatrixXcd::Zero(d, d);
  for (int k = 1; k < d; ++k) h0(k, k) = model.eigenvalues(k) - drive.omega_d;

  const MatrixXcd id = MatrixXcd::Identity(d, d);
  LindbladDiagnostics diag;
  Eigen::Matrix3cd s;
  for (int col = 0; col < 3; ++col) {
    const Complex beta = drive.beta[col];
    if (std::abs(beta) == 0.0) {
      throw NumericalError("s_matrix_lindblad: drive amplitude for port " + std::to_string(col + 1) +
                           " is zero; S is undefined");
    }
    const MatrixXcd raise = lower_ground[col].adjoint();
    const MatrixXcd h = h0 - Complex(0.0, 0.5) * sg * (beta * raise - std::conj(beta) * lower_ground[col]);
    MatrixXcd liou = Complex(0.0, -1.0) * (Eigen::kroneckerProduct(id, h).eval() -
                                           Eigen::kroneckerProduct(h.transpose(), id).eval());
    for (int i = 0; i < 3; ++i) {
      MatrixXcd out = sg * lower_ground[i];
      if (i == col) out += beta * id;
      liou += dissipator(out);
      liou += dissipator(sg * lower_excited[i]);
    }
    LindbladDiagnostics d_col;
    const VectorXcd rho = steady_state(liou, d, d_col);
    diag.used_time_integration |= d_col.used_time_integration;
    diag.null_space_dimension = std::max(diag.null_space_dimension, d_col.null_space_dimension);
    for (int i = 0; i < 3; ++i) {
      Complex lowered = 0.0;
      for (int k = 1; k < d; ++k) lowered += c.relaxation(i, k) * rho(k);  // ρ_{k0} sits at row k, column 0
      s(i, col) = ((i == col ? beta : Complex(0.0)) + sg * lowered) / beta;
    }
  }
  if (diagnostics) *diagnostics = diag;
  return make_result(s);
}

std::array<double, 3> column_power_check(const ScatteringResult& r) {
  return {std::abs(r.column_power[0] - 1.0), std::abs(r.column_power[1] - 1.0), std::abs(r.column_power[2] - 1.0)};
}

}  // namespace circring

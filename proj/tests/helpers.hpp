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

#include <array>
#include <vector>

#include "circring/circuit_model.hpp"

namespace circring::test {

inline CircuitParams default_params() { return CircuitParams{}; }

inline CircuitParams params_035() {
  CircuitParams p;
  p.ec_over_ej = 0.35;
  return p;
}

inline BiasPoint bias(double phi_x, std::array<double, 3> nx, double omega_d = 0.8) {
  BiasPoint b;
  b.phi_x = phi_x;
  b.nx = nx;
  b.omega_d = omega_d;
  return b;
}

inline std::vector<ChargeState> square_window(int n, ChargeState centre = {0, 0}, int step = 1) {
  std::vector<ChargeState> s;
  for (int i = -n; i <= n; ++i) {
    for (int j = -n; j <= n; ++j) s.push_back({centre.m1 + step * i, centre.m2 + step * j});
  }
  return s;
}

}  // namespace circring::test

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

#include <numbers>

// SI values (exact since the 2019 redefinition).
namespace circring::physical {

inline constexpr double kElementaryCharge = 1.602176634e-19;  // C
inline constexpr double kPlanck = 6.62607015e-34;             // J s
inline constexpr double kHbar = kPlanck / (2.0 * std::numbers::pi);
inline constexpr double kBoltzmann = 1.380649e-23;  // J / K

/// von Klitzing resistance h / e^2 (about 25.8 kOhm).
inline constexpr double kResistanceQuantum = kPlanck / (kElementaryCharge * kElementaryCharge);

inline constexpr double kFemtofarad = 1e-15;
inline constexpr double kGiga = 1e9;

/// Kelvin to GHz (E / h).
inline constexpr double kelvin_to_ghz(double kelvin) { return kelvin * kBoltzmann / kPlanck / kGiga; }
inline constexpr double ghz_to_kelvin(double ghz) { return ghz * kGiga * kPlanck / kBoltzmann; }

/// Frequency in GHz (E / h) to angular frequency in rad/s.
inline constexpr double ghz_to_angular(double ghz) { return 2.0 * std::numbers::pi * ghz * kGiga; }

}  // namespace circring::physical

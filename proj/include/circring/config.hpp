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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "circring/calibrate.hpp"
#include "circring/circuit_model.hpp"
#include "circring/quasiparticle.hpp"

namespace circring {

/// Evenly spaced samples from `from` to `to` inclusive.
struct Range {
  double from = 0.0;
  double to = 0.0;
  int points = 1;

  std::vector<double> values() const;
  friend bool operator==(const Range&, const Range&) = default;
};

struct SweepBlock {
  std::optional<Range> phi_x;
  std::optional<Range> omega_d;
  friend bool operator==(const SweepBlock&, const SweepBlock&) = default;
};

enum class ScatterMethod { adiabatic, lindblad };

struct ScatterBlock {
  ScatterMethod method = ScatterMethod::adiabatic;
  double drive_factor = 1e-3;  // β / √Γ on every port
  friend bool operator==(const ScatterBlock&, const ScatterBlock&) = default;
};

enum class StartKind { random, conditions };

struct OptimizeBlock {
  int runs = 5;
  StartKind start = StartKind::random;
  OptimizerConfig optimizer;
  friend bool operator==(const OptimizeBlock&, const OptimizeBlock&) = default;
};

struct ConditionsBlock {
  bool symmetric = true;
  ConditionConfig solver;
  friend bool operator==(const ConditionsBlock&, const ConditionsBlock&) = default;
};

struct ToleranceBlock {
  Range de2{-5.0, 5.0, 21};
  Range de3{-5.0, 5.0, 21};
  double reference_omega_d = 0.70;
  /// Optimizer overrides for disorder points; other settings follow `optimize`.
  int max_steps = 300;
  int window = 15;
  double initial_step = 0.15;
  bool profile_flux = false;
  friend bool operator==(const ToleranceBlock&, const ToleranceBlock&) = default;
};

struct TransmonBlock {
  std::vector<double> ratios{0.01, 0.015, 0.02, 0.025, 0.035, 0.05, 0.075, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35};
  friend bool operator==(const TransmonBlock&, const TransmonBlock&) = default;
};

struct QpBlock {
  TotalParity total_parity = TotalParity::even;
  int levels = 3;             // eigenstates per sector entering the rate table
  double duration_s = 1.0;    // qp-jump trajectory length
  Sector initial = Sector::EE;
  std::size_t max_jumps = 10'000'000;
  friend bool operator==(const QpBlock&, const QpBlock&) = default;
};

/// Everything a subcommand needs. Energies are in units of the reference
/// E_J, temperatures in kelvin, capacitances in fF and impedances in ohm.
struct RunConfig {
  std::optional<std::uint64_t> seed;
  int threads = 0;  // 0: all hardware threads
  CircuitParams circuit;
  BiasPoint bias;
  TruncationSpec truncation{8, 4, BasisKind::cooper_pair};
  SweepBlock sweep;
  ScatterBlock scatter;
  OptimizeBlock optimize;
  ConditionsBlock conditions;
  ToleranceBlock tolerance;
  TransmonBlock transmon;
  QpBlock qp;

  /// Checks ranges and values; throws ConfigError naming the field.
  void validate() const;
  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Reads a YAML file. Energies take a bare number (units of E_J), an "EJ"
/// suffix, or an absolute "GHz"/"MHz" value normalized by circuit.ej_ref;
/// temperatures take "K" or "mK"; capacitances "fF"; impedances "ohm".
/// Throws ParseError with line and column on malformed text and
/// ConfigError naming the field on invalid content.
RunConfig parse_config(const std::string& path);
RunConfig parse_config_string(const std::string& text);

/// Canonical YAML in normalized units; parses back to an equal RunConfig.
std::string serialize_config(const RunConfig& config);

/// FNV-1a 64 of the canonical serialization, as 16 hex digits.
std::string config_hash(const RunConfig& config);

}  // namespace circring

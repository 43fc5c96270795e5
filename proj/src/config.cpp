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

#include "circring/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "circring/errors.hpp"

namespace circring {

std::vector<double> Range::values() const {
  if (points == 1) return {from};
  return linspace(from, to, points);
}

namespace {

std::string where(const YAML::Node& n) {
  const YAML::Mark m = n.Mark();
  if (m.is_null()) return "";
  return fmt::format(" (line {}, column {})", m.line + 1, m.column + 1);
}

std::string join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

void check_keys(const YAML::Node& node, const std::string& prefix, std::initializer_list<const char*> allowed) {
  if (!node.IsMap()) throw ConfigError(prefix, "expected a mapping" + where(node));
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!ok.count(key)) throw ConfigError(join(prefix, key), "unknown key" + where(kv.first));
  }
}

template <class T>
T scalar(const YAML::Node& n, const std::string& field) {
  if (!n.IsScalar()) throw ConfigError(field, "expected a scalar" + where(n));
  try {
    return n.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError(field, "cannot read '" + n.Scalar() + "'" + where(n));
  }
}

// "<number> <unit>" or a bare number; `units` maps suffixes to multipliers
// and the empty suffix is the default unit.
double with_units(const YAML::Node& n, const std::string& field,
                  std::initializer_list<std::pair<const char*, double>> units) {
  if (!n.IsScalar()) throw ConfigError(field, "expected a number" + where(n));
  const std::string s = n.Scalar();
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  while (begin < end && *begin == ' ') ++begin;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc()) throw ConfigError(field, "cannot read a number from '" + s + "'" + where(n));
  std::string unit(ptr, end);
  unit.erase(0, unit.find_first_not_of(' '));
  unit.erase(unit.find_last_not_of(' ') + 1);
  for (const auto& [name, scale] : units) {
    if (unit == name) return value * scale;
  }
  std::string known;
  for (const auto& [name, scale] : units) {
    if (*name) known += std::string(known.empty() ? "" : ", ") + name;
  }
  throw ConfigError(field, "unit '" + unit + "' not accepted here (use " + known + ")" + where(n));
}

struct Reader {
  double ej_ghz = 12.92;

  double energy(const YAML::Node& n, const std::string& field) const {
    return with_units(n, field, {{"", 1.0}, {"EJ", 1.0}, {"GHz", 1.0 / ej_ghz}, {"MHz", 1e-3 / ej_ghz}});
  }
  static double kelvin(const YAML::Node& n, const std::string& field) {
    return with_units(n, field, {{"", 1.0}, {"K", 1.0}, {"mK", 1e-3}});
  }
  static double femtofarad(const YAML::Node& n, const std::string& field) {
    return with_units(n, field, {{"", 1.0}, {"fF", 1.0}});
  }
  static double ohm(const YAML::Node& n, const std::string& field) {
    return with_units(n, field, {{"", 1.0}, {"ohm", 1.0}, {"Ohm", 1.0}});
  }
  static double seconds(const YAML::Node& n, const std::string& field) {
    return with_units(n, field, {{"", 1.0}, {"s", 1.0}, {"ms", 1e-3}, {"us", 1e-6}});
  }
  static double number(const YAML::Node& n, const std::string& field) { return scalar<double>(n, field); }

  template <class F>
  static std::vector<double> list(const YAML::Node& n, const std::string& field, F&& read) {
    if (!n.IsSequence()) throw ConfigError(field, "expected a list" + where(n));
    std::vector<double> out;
    for (std::size_t i = 0; i < n.size(); ++i) out.push_back(read(n[i], fmt::format("{}[{}]", field, i)));
    return out;
  }
  template <class F>
  static std::array<double, 3> triple(const YAML::Node& n, const std::string& field, F&& read) {
    const auto v = list(n, field, read);
    if (v.size() != 3) throw ConfigError(field, "expected three values" + where(n));
    return {v[0], v[1], v[2]};
  }
  template <class F>
  static std::pair<double, double> pair(const YAML::Node& n, const std::string& field, F&& read) {
    const auto v = list(n, field, read);
    if (v.size() != 2) throw ConfigError(field, "expected [lower, upper]" + where(n));
    return {v[0], v[1]};
  }
  template <class F>
  static Range range(const YAML::Node& n, const std::string& field, F&& read) {
    check_keys(n, field, {"from", "to", "points"});
    Range r;
    if (!n["from"] || !n["to"] || !n["points"]) throw ConfigError(field, "needs from, to and points" + where(n));
    r.from = read(n["from"], field + ".from");
    r.to = read(n["to"], field + ".to");
    r.points = scalar<int>(n["points"], field + ".points");
    return r;
  }
};

template <class T, class F>
void maybe(const YAML::Node& parent, const char* key, T& target, F&& read) {
  if (const YAML::Node n = parent[key]) target = read(n);
}

void read_circuit(const YAML::Node& n, RunConfig& c, Reader& rd) {
  const std::string p = "circuit";
  check_keys(n, p, {"ej", "ej_ref", "ec_over_ej", "cj", "cx", "cc", "z_wg", "gap", "t_base", "t_qp"});
  CircuitParams& cp = c.circuit;
  maybe(n, "ej_ref", cp.ej_ghz, [&](const YAML::Node& x) {
    return with_units(x, p + ".ej_ref", {{"", 1.0}, {"GHz", 1.0}, {"MHz", 1e-3}});
  });
  rd.ej_ghz = cp.ej_ghz;
  maybe(n, "ej", cp.ej, [&](const YAML::Node& x) { return Reader::triple(x, p + ".ej", Reader::number); });
  if (const YAML::Node x = n["ec_over_ej"]) cp.ec_over_ej = Reader::number(x, p + ".ec_over_ej");
  maybe(n, "cj", cp.cj_ff, [&](const YAML::Node& x) { return Reader::femtofarad(x, p + ".cj"); });
  maybe(n, "cx", cp.cx_ff, [&](const YAML::Node& x) { return Reader::femtofarad(x, p + ".cx"); });
  maybe(n, "cc", cp.cc_ff, [&](const YAML::Node& x) { return Reader::femtofarad(x, p + ".cc"); });
  maybe(n, "z_wg", cp.zwg_ohm, [&](const YAML::Node& x) { return Reader::ohm(x, p + ".z_wg"); });
  maybe(n, "gap", cp.gap_k, [&](const YAML::Node& x) { return Reader::kelvin(x, p + ".gap"); });
  maybe(n, "t_base", cp.t_base_k, [&](const YAML::Node& x) { return Reader::kelvin(x, p + ".t_base"); });
  maybe(n, "t_qp", cp.t_qp_k, [&](const YAML::Node& x) { return Reader::kelvin(x, p + ".t_qp"); });
}

void read_bias(const YAML::Node& n, RunConfig& c, const Reader& rd) {
  const std::string p = "bias";
  check_keys(n, p, {"phi_x", "nx", "n0", "omega_d"});
  BiasPoint& b = c.bias;
  maybe(n, "phi_x", b.phi_x, [&](const YAML::Node& x) { return Reader::number(x, p + ".phi_x"); });
  maybe(n, "nx", b.nx, [&](const YAML::Node& x) { return Reader::triple(x, p + ".nx", Reader::number); });
  maybe(n, "n0", b.n0, [&](const YAML::Node& x) { return Reader::number(x, p + ".n0"); });
  maybe(n, "omega_d", b.omega_d, [&](const YAML::Node& x) { return rd.energy(x, p + ".omega_d"); });
}

BasisKind basis_of(const YAML::Node& n, const std::string& field) {
  const auto s = scalar<std::string>(n, field);
  if (s == "cooper-pair") return BasisKind::cooper_pair;
  if (s == "single-electron") return BasisKind::single_electron;
  throw ConfigError(field, "expected cooper-pair or single-electron, got '" + s + "'" + where(n));
}

void read_truncation(const YAML::Node& n, RunConfig& c) {
  const std::string p = "truncation";
  check_keys(n, p, {"n_max", "k_levels", "basis"});
  maybe(n, "n_max", c.truncation.n_max, [&](const YAML::Node& x) { return scalar<int>(x, p + ".n_max"); });
  maybe(n, "k_levels", c.truncation.k_levels, [&](const YAML::Node& x) { return scalar<int>(x, p + ".k_levels"); });
  maybe(n, "basis", c.truncation.basis, [&](const YAML::Node& x) { return basis_of(x, p + ".basis"); });
}

void read_sweep(const YAML::Node& n, RunConfig& c, const Reader& rd) {
  const std::string p = "sweep";
  check_keys(n, p, {"phi_x", "omega_d"});
  if (const YAML::Node x = n["phi_x"]) c.sweep.phi_x = Reader::range(x, p + ".phi_x", Reader::number);
  if (const YAML::Node x = n["omega_d"]) {
    c.sweep.omega_d = Reader::range(x, p + ".omega_d", [&](const YAML::Node& y, const std::string& f) {
      return rd.energy(y, f);
    });
  }
}

void read_scatter(const YAML::Node& n, RunConfig& c) {
  const std::string p = "scatter";
  check_keys(n, p, {"method", "drive_factor"});
  if (const YAML::Node x = n["method"]) {
    const auto s = scalar<std::string>(x, p + ".method");
    if (s == "adiabatic") {
      c.scatter.method = ScatterMethod::adiabatic;
    } else if (s == "lindblad") {
      c.scatter.method = ScatterMethod::lindblad;
    } else {
      throw ConfigError(p + ".method", "expected adiabatic or lindblad, got '" + s + "'" + where(x));
    }
  }
  maybe(n, "drive_factor", c.scatter.drive_factor,
        [&](const YAML::Node& x) { return Reader::number(x, p + ".drive_factor"); });
}

void read_box(const YAML::Node& n, const std::string& p, ControlBounds& box, const Reader& rd) {
  check_keys(n, p, {"omega_d", "phi_x", "nx"});
  auto energy = [&](const YAML::Node& y, const std::string& f) { return rd.energy(y, f); };
  if (const YAML::Node x = n["omega_d"]) std::tie(box.lower[0], box.upper[0]) = Reader::pair(x, p + ".omega_d", energy);
  if (const YAML::Node x = n["phi_x"]) {
    std::tie(box.lower[1], box.upper[1]) = Reader::pair(x, p + ".phi_x", Reader::number);
  }
  if (const YAML::Node x = n["nx"]) {
    if (x.IsSequence() && x.size() == 3 && x[0].IsSequence()) {
      for (std::size_t j = 0; j < 3; ++j) {
        std::tie(box.lower[j + 2], box.upper[j + 2]) =
            Reader::pair(x[j], fmt::format("{}.nx[{}]", p, j), Reader::number);
      }
    } else {
      const auto [lo, hi] = Reader::pair(x, p + ".nx", Reader::number);
      for (std::size_t j = 2; j < 5; ++j) {
        box.lower[j] = lo;
        box.upper[j] = hi;
      }
    }
  }
}

void read_optimize(const YAML::Node& n, RunConfig& c, const Reader& rd) {
  const std::string p = "optimize";
  check_keys(n, p,
             {"runs", "start", "max_steps", "rel_tol", "window", "initial_step", "restart_on_stall", "n_max",
              "k_levels", "trap_threshold", "bounds", "init", "profile_flux", "phi_window", "phi_scan_points"});
  OptimizeBlock& o = c.optimize;
  OptimizerConfig& oc = o.optimizer;
  maybe(n, "runs", o.runs, [&](const YAML::Node& x) { return scalar<int>(x, p + ".runs"); });
  if (const YAML::Node x = n["start"]) {
    const auto s = scalar<std::string>(x, p + ".start");
    if (s == "random") {
      o.start = StartKind::random;
    } else if (s == "conditions") {
      o.start = StartKind::conditions;
    } else {
      throw ConfigError(p + ".start", "expected random or conditions, got '" + s + "'" + where(x));
    }
  }
  maybe(n, "max_steps", oc.max_steps, [&](const YAML::Node& x) { return scalar<int>(x, p + ".max_steps"); });
  maybe(n, "rel_tol", oc.rel_tol, [&](const YAML::Node& x) { return Reader::number(x, p + ".rel_tol"); });
  maybe(n, "window", oc.window, [&](const YAML::Node& x) { return scalar<int>(x, p + ".window"); });
  maybe(n, "initial_step", oc.initial_step,
        [&](const YAML::Node& x) { return Reader::number(x, p + ".initial_step"); });
  maybe(n, "restart_on_stall", oc.restart_on_stall,
        [&](const YAML::Node& x) { return scalar<bool>(x, p + ".restart_on_stall"); });
  maybe(n, "n_max", oc.n_max, [&](const YAML::Node& x) { return scalar<int>(x, p + ".n_max"); });
  maybe(n, "k_levels", oc.k_levels, [&](const YAML::Node& x) { return scalar<int>(x, p + ".k_levels"); });
  maybe(n, "trap_threshold", oc.trap_threshold,
        [&](const YAML::Node& x) { return Reader::number(x, p + ".trap_threshold"); });
  if (const YAML::Node x = n["bounds"]) read_box(x, p + ".bounds", oc.bounds, rd);
  if (const YAML::Node x = n["init"]) read_box(x, p + ".init", oc.init_ranges, rd);
  maybe(n, "profile_flux", oc.profile_flux,
        [&](const YAML::Node& x) { return scalar<bool>(x, p + ".profile_flux"); });
  if (const YAML::Node x = n["phi_window"]) {
    const auto [lo, hi] = Reader::pair(x, p + ".phi_window", Reader::number);
    oc.phi_window = {lo, hi};
  }
  maybe(n, "phi_scan_points", oc.phi_scan_points,
        [&](const YAML::Node& x) { return scalar<int>(x, p + ".phi_scan_points"); });
}

void read_conditions(const YAML::Node& n, RunConfig& c) {
  const std::string p = "conditions";
  check_keys(n, p, {"symmetric", "phi_lo", "phi_hi", "scan_points", "n_max", "k_levels"});
  ConditionConfig& s = c.conditions.solver;
  maybe(n, "symmetric", c.conditions.symmetric,
        [&](const YAML::Node& x) { return scalar<bool>(x, p + ".symmetric"); });
  maybe(n, "phi_lo", s.phi_lo, [&](const YAML::Node& x) { return Reader::number(x, p + ".phi_lo"); });
  maybe(n, "phi_hi", s.phi_hi, [&](const YAML::Node& x) { return Reader::number(x, p + ".phi_hi"); });
  maybe(n, "scan_points", s.scan_points, [&](const YAML::Node& x) { return scalar<int>(x, p + ".scan_points"); });
  maybe(n, "n_max", s.n_max, [&](const YAML::Node& x) { return scalar<int>(x, p + ".n_max"); });
  maybe(n, "k_levels", s.k_levels, [&](const YAML::Node& x) { return scalar<int>(x, p + ".k_levels"); });
}

void read_tolerance(const YAML::Node& n, RunConfig& c, const Reader& rd) {
  const std::string p = "tolerance";
  check_keys(n, p, {"de2", "de3", "reference_omega_d", "max_steps", "window", "initial_step", "profile_flux"});
  if (const YAML::Node x = n["de2"]) c.tolerance.de2 = Reader::range(x, p + ".de2", Reader::number);
  if (const YAML::Node x = n["de3"]) c.tolerance.de3 = Reader::range(x, p + ".de3", Reader::number);
  maybe(n, "reference_omega_d", c.tolerance.reference_omega_d,
        [&](const YAML::Node& x) { return rd.energy(x, p + ".reference_omega_d"); });
  maybe(n, "max_steps", c.tolerance.max_steps, [&](const YAML::Node& x) { return scalar<int>(x, p + ".max_steps"); });
  maybe(n, "window", c.tolerance.window, [&](const YAML::Node& x) { return scalar<int>(x, p + ".window"); });
  maybe(n, "initial_step", c.tolerance.initial_step,
        [&](const YAML::Node& x) { return Reader::number(x, p + ".initial_step"); });
  maybe(n, "profile_flux", c.tolerance.profile_flux,
        [&](const YAML::Node& x) { return scalar<bool>(x, p + ".profile_flux"); });
}

void read_transmon(const YAML::Node& n, RunConfig& c) {
  const std::string p = "transmon";
  check_keys(n, p, {"ratios"});
  if (const YAML::Node x = n["ratios"]) {
    c.transmon.ratios = x.IsMap() ? Reader::range(x, p + ".ratios", Reader::number).values()
                                  : Reader::list(x, p + ".ratios", Reader::number);
  }
}

Sector sector_from(const std::string& s, const std::string& field, const YAML::Node& n) {
  for (Sector k : kSectors) {
    if (sector_name(k) == s) return k;
  }
  throw ConfigError(field, "expected one of e-e, e-o, o-e, o-o, got '" + s + "'" + where(n));
}

void read_qp(const YAML::Node& n, RunConfig& c) {
  const std::string p = "qp";
  check_keys(n, p, {"total_parity", "levels", "duration", "initial", "max_jumps"});
  if (const YAML::Node x = n["total_parity"]) {
    const auto s = scalar<std::string>(x, p + ".total_parity");
    if (s == "even") {
      c.qp.total_parity = TotalParity::even;
    } else if (s == "odd") {
      c.qp.total_parity = TotalParity::odd;
    } else {
      throw ConfigError(p + ".total_parity", "expected even or odd, got '" + s + "'" + where(x));
    }
  }
  maybe(n, "levels", c.qp.levels, [&](const YAML::Node& x) { return scalar<int>(x, p + ".levels"); });
  maybe(n, "duration", c.qp.duration_s, [&](const YAML::Node& x) { return Reader::seconds(x, p + ".duration"); });
  if (const YAML::Node x = n["initial"]) c.qp.initial = sector_from(scalar<std::string>(x, p + ".initial"), p + ".initial", x);
  maybe(n, "max_jumps", c.qp.max_jumps,
        [&](const YAML::Node& x) { return scalar<std::size_t>(x, p + ".max_jumps"); });
}

RunConfig from_node(const YAML::Node& root) {
  RunConfig c;
  if (!root || root.IsNull()) {
    c.validate();
    return c;
  }
  check_keys(root, "",
             {"seed", "threads", "circuit", "bias", "truncation", "sweep", "scatter", "optimize", "conditions",
              "tolerance", "transmon", "qp"});
  Reader rd;
  if (const YAML::Node x = root["seed"]) {
    const auto s = scalar<std::string>(x, "seed");
    if (s.empty() || s[0] == '-') throw ConfigError("seed", "must be a non-negative integer" + where(x));
    c.seed = scalar<std::uint64_t>(x, "seed");
  }
  maybe(root, "threads", c.threads, [&](const YAML::Node& x) { return scalar<int>(x, "threads"); });
  if (const YAML::Node x = root["circuit"]) read_circuit(x, c, rd);
  rd.ej_ghz = c.circuit.ej_ghz;
  if (const YAML::Node x = root["bias"]) read_bias(x, c, rd);
  if (const YAML::Node x = root["truncation"]) read_truncation(x, c);
  if (const YAML::Node x = root["sweep"]) read_sweep(x, c, rd);
  if (const YAML::Node x = root["scatter"]) read_scatter(x, c);
  if (const YAML::Node x = root["optimize"]) read_optimize(x, c, rd);
  if (const YAML::Node x = root["conditions"]) read_conditions(x, c);
  if (const YAML::Node x = root["tolerance"]) read_tolerance(x, c, rd);
  if (const YAML::Node x = root["transmon"]) read_transmon(x, c);
  if (const YAML::Node x = root["qp"]) read_qp(x, c);
  c.validate();
  return c;
}

void check_range(const Range& r, const std::string& field) {
  if (r.points < 1) throw ConfigError(field + ".points", "must be at least 1");
  if (!std::isfinite(r.from) || !std::isfinite(r.to)) throw ConfigError(field, "ends must be finite");
}

}  // namespace

void RunConfig::validate() const {
  circuit.validate();
  truncation.validate();
  if (threads < 0) throw ConfigError("threads", "must be non-negative");
  if (sweep.phi_x) check_range(*sweep.phi_x, "sweep.phi_x");
  if (sweep.omega_d) {
    check_range(*sweep.omega_d, "sweep.omega_d");
    if (!(std::min(sweep.omega_d->from, sweep.omega_d->to) > 0.0)) {
      throw ConfigError("sweep.omega_d", "drive frequencies must be positive");
    }
  }
  if (!(bias.omega_d > 0.0)) throw ConfigError("bias.omega_d", "must be positive");
  if (!(scatter.drive_factor > 0.0)) throw ConfigError("scatter.drive_factor", "must be positive");
  if (optimize.runs < 1) throw ConfigError("optimize.runs", "must be at least 1");
  optimize.optimizer.validate();
  if (conditions.solver.scan_points < 2) throw ConfigError("conditions.scan_points", "must be at least 2");
  if (!(conditions.solver.phi_lo < conditions.solver.phi_hi)) {
    throw ConfigError("conditions.phi_lo", "must be below conditions.phi_hi");
  }
  check_range(tolerance.de2, "tolerance.de2");
  check_range(tolerance.de3, "tolerance.de3");
  if (!(tolerance.reference_omega_d > 0.0)) throw ConfigError("tolerance.reference_omega_d", "must be positive");
  if (tolerance.max_steps < 1) throw ConfigError("tolerance.max_steps", "must be at least 1");
  if (tolerance.window < 1) throw ConfigError("tolerance.window", "must be at least 1");
  if (!(tolerance.initial_step > 0.0 && tolerance.initial_step <= 0.5)) {
    throw ConfigError("tolerance.initial_step", "must be in (0, 0.5]");
  }
  if (transmon.ratios.empty()) throw ConfigError("transmon.ratios", "must not be empty");
  for (double r : transmon.ratios) {
    if (!(r > 0.0)) throw ConfigError("transmon.ratios", "ratios must be positive");
  }
  if (qp.levels < 1) throw ConfigError("qp.levels", "must be at least 1");
  if (!(qp.duration_s > 0.0)) throw ConfigError("qp.duration", "must be positive");
}

RunConfig parse_config_string(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ParseError(e.mark.line + 1, e.mark.column + 1, e.msg);
  }
  return from_node(root);
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_string(ss.str());
}

namespace {

std::string num(double v) { return fmt::format("{:.17g}", v); }

std::string pair_text(double lo, double hi) { return fmt::format("[{}, {}]", num(lo), num(hi)); }

std::string range_text(const Range& r) {
  return fmt::format("{{from: {}, to: {}, points: {}}}", num(r.from), num(r.to), r.points);
}

void box_text(std::ostringstream& out, const char* name, const ControlBounds& b) {
  out << "  " << name << ":\n";
  out << "    omega_d: " << pair_text(b.lower[0], b.upper[0]) << "\n";
  out << "    phi_x: " << pair_text(b.lower[1], b.upper[1]) << "\n";
  const bool same = b.lower[2] == b.lower[3] && b.lower[3] == b.lower[4] && b.upper[2] == b.upper[3] &&
                    b.upper[3] == b.upper[4];
  if (same) {
    out << "    nx: " << pair_text(b.lower[2], b.upper[2]) << "\n";
  } else {
    out << "    nx: [" << pair_text(b.lower[2], b.upper[2]) << ", " << pair_text(b.lower[3], b.upper[3]) << ", "
        << pair_text(b.lower[4], b.upper[4]) << "]\n";
  }
}

}  // namespace

std::string serialize_config(const RunConfig& c) {
  std::ostringstream out;
  auto tri = [](const std::array<double, 3>& a) {
    return fmt::format("[{}, {}, {}]", num(a[0]), num(a[1]), num(a[2]));
  };
  if (c.seed) out << "seed: " << *c.seed << "\n";
  out << "threads: " << c.threads << "\n";
  const CircuitParams& p = c.circuit;
  out << "circuit:\n";
  out << "  ej: " << tri(p.ej) << "\n";
  out << "  ej_ref: " << num(p.ej_ghz) << " GHz\n";
  if (p.ec_over_ej) out << "  ec_over_ej: " << num(*p.ec_over_ej) << "\n";
  out << "  cj: " << num(p.cj_ff) << " fF\n";
  out << "  cx: " << num(p.cx_ff) << " fF\n";
  out << "  cc: " << num(p.cc_ff) << " fF\n";
  out << "  z_wg: " << num(p.zwg_ohm) << " ohm\n";
  out << "  gap: " << num(p.gap_k) << " K\n";
  out << "  t_base: " << num(p.t_base_k) << " K\n";
  out << "  t_qp: " << num(p.t_qp_k) << " K\n";
  out << "bias:\n";
  out << "  phi_x: " << num(c.bias.phi_x) << "\n";
  out << "  nx: " << tri(c.bias.nx) << "\n";
  out << "  n0: " << num(c.bias.n0) << "\n";
  out << "  omega_d: " << num(c.bias.omega_d) << "\n";
  out << "truncation:\n";
  out << "  n_max: " << c.truncation.n_max << "\n";
  out << "  k_levels: " << c.truncation.k_levels << "\n";
  out << "  basis: " << (c.truncation.basis == BasisKind::cooper_pair ? "cooper-pair" : "single-electron") << "\n";
  if (c.sweep.phi_x || c.sweep.omega_d) {
    out << "sweep:\n";
    if (c.sweep.phi_x) out << "  phi_x: " << range_text(*c.sweep.phi_x) << "\n";
    if (c.sweep.omega_d) out << "  omega_d: " << range_text(*c.sweep.omega_d) << "\n";
  }
  out << "scatter:\n";
  out << "  method: " << (c.scatter.method == ScatterMethod::adiabatic ? "adiabatic" : "lindblad") << "\n";
  out << "  drive_factor: " << num(c.scatter.drive_factor) << "\n";
  const OptimizerConfig& o = c.optimize.optimizer;
  out << "optimize:\n";
  out << "  runs: " << c.optimize.runs << "\n";
  out << "  start: " << (c.optimize.start == StartKind::random ? "random" : "conditions") << "\n";
  out << "  max_steps: " << o.max_steps << "\n";
  out << "  rel_tol: " << num(o.rel_tol) << "\n";
  out << "  window: " << o.window << "\n";
  out << "  initial_step: " << num(o.initial_step) << "\n";
  out << "  restart_on_stall: " << (o.restart_on_stall ? "true" : "false") << "\n";
  out << "  n_max: " << o.n_max << "\n";
  out << "  k_levels: " << o.k_levels << "\n";
  out << "  trap_threshold: " << num(o.trap_threshold) << "\n";
  box_text(out, "bounds", o.bounds);
  box_text(out, "init", o.init_ranges);
  out << "  profile_flux: " << (o.profile_flux ? "true" : "false") << "\n";
  out << "  phi_window: [" << num(o.phi_window[0]) << ", " << num(o.phi_window[1]) << "]\n";
  out << "  phi_scan_points: " << o.phi_scan_points << "\n";
  const ConditionConfig& s = c.conditions.solver;
  out << "conditions:\n";
  out << "  symmetric: " << (c.conditions.symmetric ? "true" : "false") << "\n";
  out << "  phi_lo: " << num(s.phi_lo) << "\n";
  out << "  phi_hi: " << num(s.phi_hi) << "\n";
  out << "  scan_points: " << s.scan_points << "\n";
  out << "  n_max: " << s.n_max << "\n";
  out << "  k_levels: " << s.k_levels << "\n";
  out << "tolerance:\n";
  out << "  de2: " << range_text(c.tolerance.de2) << "\n";
  out << "  de3: " << range_text(c.tolerance.de3) << "\n";
  out << "  reference_omega_d: " << num(c.tolerance.reference_omega_d) << "\n";
  out << "  max_steps: " << c.tolerance.max_steps << "\n";
  out << "  window: " << c.tolerance.window << "\n";
  out << "  initial_step: " << num(c.tolerance.initial_step) << "\n";
  out << "  profile_flux: " << (c.tolerance.profile_flux ? "true" : "false") << "\n";
  out << "transmon:\n";
  out << "  ratios: [";
  for (std::size_t i = 0; i < c.transmon.ratios.size(); ++i) out << (i ? ", " : "") << num(c.transmon.ratios[i]);
  out << "]\n";
  out << "qp:\n";
  out << "  total_parity: " << (c.qp.total_parity == TotalParity::even ? "even" : "odd") << "\n";
  out << "  levels: " << c.qp.levels << "\n";
  out << "  duration: " << num(c.qp.duration_s) << " s\n";
  out << "  initial: " << sector_name(c.qp.initial) << "\n";
  out << "  max_jumps: " << c.qp.max_jumps << "\n";
  return out.str();
}

std::string config_hash(const RunConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : serialize_config(config)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("{:016x}", h);
}

}  // namespace circring

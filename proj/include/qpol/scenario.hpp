/**
 * @file scenario.hpp
 * @brief JSON scenario configs, execution, and CSV/JSON emission.
 *
 * A scenario is a JSON object
 *   { "kind": "evolve", "hbar": 1, "tolerance": 1e-9, "degrees": false,
 *     "seed": 7, "parameters": { ... } }
 * where every key except "parameters" is optional. Parameters are validated
 * field by field before any computation; violations raise SchemaError with
 * the JSON path of the offending field.
 */
#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <future>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "qpol/bloch_sphere.hpp"
#include "qpol/coherence_optimizer.hpp"
#include "qpol/errors.hpp"
#include "qpol/interference.hpp"
#include "qpol/mueller_calculus.hpp"
#include "qpol/numerics.hpp"
#include "qpol/polarization.hpp"
#include "qpol/speed_limit.hpp"
#include "qpol/version.hpp"

namespace qpol {

using ordered_json = nlohmann::ordered_json;

class SchemaError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ScenarioKind { Evolve, OptimizeCoherence, Mueller, Interference, Correspondence };

inline const char* to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::Evolve: return "evolve";
    case ScenarioKind::OptimizeCoherence: return "optimize-coherence";
    case ScenarioKind::Mueller: return "mueller";
    case ScenarioKind::Interference: return "interference";
    case ScenarioKind::Correspondence: return "correspondence";
  }
  return "unknown";
}

inline std::optional<ScenarioKind> parse_kind(const std::string& s) {
  for (auto k : {ScenarioKind::Evolve, ScenarioKind::OptimizeCoherence, ScenarioKind::Mueller,
                 ScenarioKind::Interference, ScenarioKind::Correspondence}) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr std::size_t kDefaultSamples = 101;

// Command-line overrides; unset fields fall back to the config, then defaults.
struct RunOptions {
  std::optional<double> hbar;
  std::optional<double> tolerance;
  bool degrees = false;
  std::optional<std::uint64_t> seed;
};

struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::Evolve;
  ordered_json parameters = ordered_json::object();
  double hbar = kDefaultHbar;
  double tolerance = kDefaultTolerance;
  bool degrees = false;
  std::uint64_t seed = kDefaultProbeSeed;
};

struct TrajectoryRecord {
  double t = 0.0;
  QuantumState state;
  Vec3 bloch{};
  double fidelity = 0.0;
};

using CsvCell = std::variant<double, std::string, bool>;

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<CsvCell>> rows;
};

struct ScenarioResult {
  ScenarioKind kind = ScenarioKind::Evolve;
  ordered_json document;
  CsvTable table;
};

// ---------------------------------------------------------------------------
// Number formatting

inline std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s(buf);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

namespace detail {

inline void write_json(std::ostringstream& os, const ordered_json& v, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  switch (v.type()) {
    case ordered_json::value_t::object: {
      if (v.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad << ordered_json(it.key()).dump() << ": ";
        write_json(os, it.value(), indent + 2);
      }
      os << "\n" << close << "}";
      return;
    }
    case ordered_json::value_t::array: {
      if (v.empty()) {
        os << "[]";
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",\n";
        os << pad;
        write_json(os, v[i], indent + 2);
      }
      os << "\n" << close << "]";
      return;
    }
    case ordered_json::value_t::number_float:
      os << format_double(v.get<double>());
      return;
    default:
      os << v.dump();
  }
}

}  // namespace detail

// Pretty-printed JSON, insertion-ordered keys, doubles with 17 significant digits.
inline std::string emit_json(const ordered_json& doc) {
  std::ostringstream os;
  detail::write_json(os, doc, 0);
  os << "\n";
  return os.str();
}

inline std::string emit_csv(const CsvTable& table) {
  std::ostringstream os;
  for (std::size_t i = 0; i < table.header.size(); ++i) os << (i ? "," : "") << table.header[i];
  os << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ",";
      if (const auto* d = std::get_if<double>(&row[i])) {
        os << format_double(*d);
      } else if (const auto* b = std::get_if<bool>(&row[i])) {
        os << (*b ? "true" : "false");
      } else {
        os << std::get<std::string>(row[i]);
      }
    }
    os << "\n";
  }
  return os.str();
}

inline const std::vector<std::string>& trajectory_header() {
  static const std::vector<std::string> h{"t", "re_c0", "im_c0", "re_c1", "im_c1", "bx", "by", "bz", "fidelity"};
  return h;
}

inline CsvTable trajectory_table(const std::vector<TrajectoryRecord>& records) {
  CsvTable t{trajectory_header(), {}};
  for (const auto& r : records) {
    t.rows.push_back({r.t, r.state.c0().real(), r.state.c0().imag(), r.state.c1().real(), r.state.c1().imag(),
                      r.bloch[0], r.bloch[1], r.bloch[2], r.fidelity});
  }
  return t;
}

// ---------------------------------------------------------------------------
// JSON encoding helpers

inline ordered_json to_json(cplx z) { return ordered_json::array({z.real(), z.imag()}); }

inline ordered_json to_json(const QuantumState& s) { return ordered_json::array({to_json(s.c0()), to_json(s.c1())}); }

inline ordered_json to_json(const Complex2Matrix& m) {
  return ordered_json::array({ordered_json::array({to_json(m(0, 0)), to_json(m(0, 1))}),
                              ordered_json::array({to_json(m(1, 0)), to_json(m(1, 1))})});
}

inline ordered_json to_json(const Real4Matrix& m) {
  ordered_json out = ordered_json::array();
  for (int r = 0; r < 4; ++r) out.push_back({m(r, 0), m(r, 1), m(r, 2), m(r, 3)});
  return out;
}

inline ordered_json to_json(const Vec3& v) { return ordered_json::array({v[0], v[1], v[2]}); }

inline ordered_json to_json(const StokesVector& s) { return ordered_json::array({s.s0, s.s1, s.s2, s.s3}); }

inline ordered_json to_json(const CoherencyMatrix& j) {
  return {{"jxx", j.jxx}, {"jyy", j.jyy}, {"jxy", to_json(j.jxy)}};
}

// ---------------------------------------------------------------------------
// Field-level validation

namespace schema {

inline std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

inline void check_keys(const ordered_json& obj, const std::set<std::string>& allowed, const std::string& path) {
  if (!obj.is_object()) throw SchemaError((path.empty() ? "config" : path) + ": expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) throw SchemaError(join(path, it.key()) + ": unknown field");
  }
}

inline const ordered_json& require(const ordered_json& obj, const std::string& key, const std::string& path) {
  if (!obj.contains(key)) throw SchemaError(join(path, key) + ": required field is missing");
  return obj.at(key);
}

inline double number(const ordered_json& v, const std::string& path) {
  if (!v.is_number()) throw SchemaError(path + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw SchemaError(path + ": expected a finite number");
  return x;
}

inline double positive(const ordered_json& v, const std::string& path) {
  const double x = number(v, path);
  if (!(x > 0.0)) throw SchemaError(path + ": expected a positive number");
  return x;
}

inline cplx complex_number(const ordered_json& v, const std::string& path) {
  if (v.is_number()) return {number(v, path), 0.0};
  if (!v.is_array() || v.size() != 2) throw SchemaError(path + ": expected a number or a [re, im] pair");
  return {number(v[0], path + "[0]"), number(v[1], path + "[1]")};
}

inline QuantumState state(const ordered_json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2) throw SchemaError(path + ": expected two complex amplitudes");
  const QuantumState s{complex_number(v[0], path + "[0]"), complex_number(v[1], path + "[1]")};
  if (!(s.norm() > 0.0)) throw SchemaError(path + ": state vector is zero");
  return s;
}

inline Complex2Matrix complex_matrix(const ordered_json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_array() || v[0].size() != 2 || !v[1].is_array() ||
      v[1].size() != 2) {
    throw SchemaError(path + ": expected a 2x2 array of complex numbers");
  }
  return {complex_number(v[0][0], path + "[0][0]"), complex_number(v[0][1], path + "[0][1]"),
          complex_number(v[1][0], path + "[1][0]"), complex_number(v[1][1], path + "[1][1]")};
}

inline Real4Matrix real_matrix4(const ordered_json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 4) throw SchemaError(path + ": expected a 4x4 array of numbers");
  Real4Matrix m;
  for (int r = 0; r < 4; ++r) {
    const auto& row = v[static_cast<std::size_t>(r)];
    if (!row.is_array() || row.size() != 4) throw SchemaError(path + ": expected a 4x4 array of numbers");
    for (int c = 0; c < 4; ++c) {
      m(r, c) = number(row[static_cast<std::size_t>(c)], path + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    }
  }
  return m;
}

inline std::size_t count(const ordered_json& v, const std::string& path, std::size_t min) {
  if (!v.is_number_integer() || v.get<long long>() < static_cast<long long>(min)) {
    throw SchemaError(path + ": expected an integer >= " + std::to_string(min));
  }
  return static_cast<std::size_t>(v.get<long long>());
}

// Either {"jxx", "jyy", "jxy"} or {"stokes": [s0, s1, s2, s3]}.
inline CoherencyMatrix coherency(const ordered_json& v, const std::string& path) {
  if (!v.is_object()) throw SchemaError(path + ": expected an object");
  try {
    if (v.contains("stokes")) {
      check_keys(v, {"stokes"}, path);
      const auto& s = v.at("stokes");
      if (!s.is_array() || s.size() != 4) throw SchemaError(join(path, "stokes") + ": expected four numbers");
      const std::string p = join(path, "stokes");
      return coherency_from_stokes({number(s[0], p + "[0]"), number(s[1], p + "[1]"), number(s[2], p + "[2]"),
                                    number(s[3], p + "[3]")});
    }
    check_keys(v, {"jxx", "jyy", "jxy"}, path);
    CoherencyMatrix j{number(require(v, "jxx", path), join(path, "jxx")),
                      number(require(v, "jyy", path), join(path, "jyy")),
                      complex_number(require(v, "jxy", path), join(path, "jxy"))};
    validate(j);
    if (!(j.trace() > 0.0)) throw SchemaError(path + ": zero intensity");
    return j;
  } catch (const SchemaError&) {
    throw;
  } catch (const InvalidArgument& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

// A single angle or {"start", "stop", "count"} inclusive sweep.
inline std::vector<double> angle_grid(const ordered_json& v, const std::string& path, double unit) {
  if (v.is_number()) return {unit * number(v, path)};
  check_keys(v, {"start", "stop", "count"}, path);
  const double a = unit * number(require(v, "start", path), join(path, "start"));
  const double b = unit * number(require(v, "stop", path), join(path, "stop"));
  const std::size_t n = count(require(v, "count", path), join(path, "count"), 1);
  std::vector<double> out;
  for (std::size_t k = 0; k < n; ++k) {
    out.push_back(n == 1 ? a : (k + 1 == n ? b : a + (b - a) * static_cast<double>(k) / static_cast<double>(n - 1)));
  }
  return out;
}

inline Route route(const ordered_json& obj, const std::string& path) {
  if (!obj.contains("route")) return Route::TimeMinimization;
  const auto& v = obj.at("route");
  if (v == "time_minimization") return Route::TimeMinimization;
  if (v == "uncertainty_maximization") return Route::UncertaintyMaximization;
  throw SchemaError(join(path, "route") + ": expected \"time_minimization\" or \"uncertainty_maximization\"");
}

}  // namespace schema

inline ScenarioConfig parse_config(const ordered_json& root, std::optional<ScenarioKind> expected,
                                   const RunOptions& opts = {}) {
  schema::check_keys(root, {"kind", "parameters", "hbar", "tolerance", "degrees", "seed"}, "");
  ScenarioConfig cfg;
  if (root.contains("kind")) {
    if (!root.at("kind").is_string()) throw SchemaError("kind: expected a string");
    const auto k = parse_kind(root.at("kind").get<std::string>());
    if (!k) throw SchemaError("kind: unknown scenario kind");
    if (expected && *expected != *k) {
      throw SchemaError(std::string("kind: config is '") + to_string(*k) + "' but subcommand is '" +
                        to_string(*expected) + "'");
    }
    cfg.kind = *k;
  } else if (expected) {
    cfg.kind = *expected;
  } else {
    throw SchemaError("kind: required field is missing");
  }
  cfg.parameters = schema::require(root, "parameters", "");
  if (!cfg.parameters.is_object()) throw SchemaError("parameters: expected an object");
  if (root.contains("hbar")) cfg.hbar = schema::positive(root.at("hbar"), "hbar");
  if (root.contains("tolerance")) cfg.tolerance = schema::positive(root.at("tolerance"), "tolerance");
  if (root.contains("degrees")) {
    if (!root.at("degrees").is_boolean()) throw SchemaError("degrees: expected a boolean");
    cfg.degrees = root.at("degrees").get<bool>();
  }
  if (root.contains("seed")) {
    if (!root.at("seed").is_number_unsigned()) throw SchemaError("seed: expected an unsigned integer");
    cfg.seed = root.at("seed").get<std::uint64_t>();
  }
  if (opts.hbar) {
    if (!(*opts.hbar > 0.0) || !std::isfinite(*opts.hbar)) throw SchemaError("--hbar: expected a positive number");
    cfg.hbar = *opts.hbar;
  }
  if (opts.tolerance) {
    if (!(*opts.tolerance > 0.0)) throw SchemaError("--tolerance: expected a positive number");
    cfg.tolerance = *opts.tolerance;
  }
  if (opts.degrees) cfg.degrees = true;
  if (opts.seed) cfg.seed = *opts.seed;
  return cfg;
}

// ---------------------------------------------------------------------------
// Scenario runners

namespace detail {

inline double angle_unit(const ScenarioConfig& cfg) { return cfg.degrees ? pi / 180.0 : 1.0; }

inline ordered_json header(const ScenarioConfig& cfg) {
  return {{"version", kVersion}, {"kind", to_string(cfg.kind)}};
}

inline SynthesisResult synthesize(Route route, const QuantumState& a, const QuantumState& b, double energy,
                                  double hbar) {
  return route == Route::TimeMinimization ? synthesize_min_time_rotated(a, b, energy, hbar)
                                          : synthesize_max_uncertainty(a, b, energy, hbar);
}

struct QuantumRun {
  QuantumState a;
  QuantumState b;
  SynthesisResult synthesis;
  std::vector<TrajectoryRecord> records;
  EfficiencyReport efficiency;
};

inline QuantumRun run_quantum(const ordered_json& p, const std::string& path, const ScenarioConfig& cfg) {
  schema::check_keys(p, {"a", "b", "energy", "route", "samples"}, path);
  const QuantumState a = schema::state(schema::require(p, "a", path), schema::join(path, "a")).normalized();
  const QuantumState b = schema::state(schema::require(p, "b", path), schema::join(path, "b")).normalized();
  const double energy = schema::positive(schema::require(p, "energy", path), schema::join(path, "energy"));
  const Route route = schema::route(p, path);
  const std::size_t samples =
      p.contains("samples") ? schema::count(p.at("samples"), schema::join(path, "samples"), 2) : kDefaultSamples;

  QuantumRun run{a, b, synthesize(route, a, b, energy, cfg.hbar), {}, {}};
  const auto states = evolve_samples(run.synthesis.hamiltonian, a, run.synthesis.t_min, samples, cfg.hbar);
  for (std::size_t k = 0; k < states.size(); ++k) {
    const double t = (k + 1 == states.size())
                         ? run.synthesis.t_min
                         : run.synthesis.t_min * static_cast<double>(k) / static_cast<double>(samples - 1);
    run.records.push_back({t, states[k], bloch_vector(states[k].normalized()), phase_fidelity(states[k], b)});
  }
  run.efficiency = efficiency(states);

  // Self-check before anything is emitted.
  for (std::size_t k = 1; k < run.records.size(); ++k) {
    if (!(run.records[k].t > run.records[k - 1].t)) throw NumericalGateFailure("trajectory times are not monotone");
  }
  if (!(run.records.back().fidelity >= 1.0 - cfg.tolerance)) {
    throw NumericalGateFailure("final trajectory sample misses the target state");
  }
  if (run.efficiency.eta_qm > 1.0 + 1e-9) throw NumericalGateFailure("efficiency exceeds one");
  return run;
}

inline ordered_json synthesis_json(const QuantumRun& q) {
  const auto& s = q.synthesis;
  return {{"route", to_string(s.route)},
          {"hbar", s.hbar},
          {"hamiltonian", to_json(s.hamiltonian.matrix())},
          {"e_plus", s.hamiltonian.e_plus()},
          {"e_minus", s.hamiltonian.e_minus()},
          {"t_min", s.t_min},
          {"delta_e", s.delta_e},
          {"efficiency", {{"s0", q.efficiency.s0}, {"s", q.efficiency.s}, {"eta_qm", q.efficiency.eta_qm}}}};
}

inline ScenarioResult run_evolve(const ScenarioConfig& cfg) {
  const QuantumRun q = run_quantum(cfg.parameters, "parameters", cfg);
  ScenarioResult res{cfg.kind, header(cfg), trajectory_table(q.records)};
  const ordered_json synthesis = synthesis_json(q);
  for (auto it = synthesis.begin(); it != synthesis.end(); ++it) res.document[it.key()] = it.value();
  ordered_json traj = ordered_json::array();
  for (const auto& r : q.records) {
    traj.push_back({{"t", r.t}, {"state", to_json(r.state)}, {"bloch", to_json(r.bloch)}, {"fidelity", r.fidelity}});
  }
  res.document["trajectory"] = std::move(traj);
  return res;
}

inline ordered_json rotation_json(const RotationSolution& r) {
  return {{"phi_opt", r.phi_opt}, {"j_before", r.j_before}, {"j_after", r.j_after},
          {"p", r.p},             {"chi", r.chi},           {"rotated", to_json(r.rotated)}};
}

inline ordered_json ledger_json(const ConstraintLedger& l) {
  return {{"phi", l.phi},
          {"before", to_json(l.before)},
          {"after", to_json(l.after)},
          {"i_pol_before", l.i_pol_before},
          {"i_pol_after", l.i_pol_after},
          {"s1_sq_before", l.s1_sq_before},
          {"s2_sq_before", l.s2_sq_before},
          {"s1_sq_after", l.s1_sq_after},
          {"s2_sq_after", l.s2_sq_after}};
}

inline CoherencyMatrix coherency_param(const ordered_json& p, const std::string& path) {
  return schema::coherency(schema::require(p, "j", path), schema::join(path, "j"));
}

inline ScenarioResult run_optimize(const ScenarioConfig& cfg) {
  const auto& p = cfg.parameters;
  schema::check_keys(p, {"j"}, "parameters");
  const CoherencyMatrix j = coherency_param(p, "parameters");
  const PolarizationReport pol = degree_of_polarization(j);
  const RotationSolution sol = optimal_rotation(j);
  const ConstraintLedger led = stokes_rotation_check(stokes_from_coherency(j), sol.phi_opt);
  const WienerDecomposition w = wiener_decompose(j);

  if (std::abs(sol.j_after - sol.p) > kPolarizationTol || led.s1_sq_after > kPolarizationTol * std::max(1.0, j.trace() * j.trace())) {
    throw NumericalGateFailure("optimized frame does not reach |j| = P");
  }

  ScenarioResult res{cfg.kind, header(cfg), {}};
  res.document["input"] = to_json(j);
  res.document["polarization"] = {{"p", pol.p},           {"i_tot", pol.i_tot},   {"i_pol", pol.i_pol},
                                  {"j_abs", pol.j_abs},   {"beta_xy", pol.beta_xy}};
  res.document["wiener"] = {{"d2", w.d2}, {"a2", w.a2}, {"b2", w.b2}, {"ab", w.ab}, {"chi", w.chi}};
  res.document["rotation"] = rotation_json(sol);
  res.document["ledger"] = ledger_json(led);
  res.document["optical_efficiency_before"] = std::min(1.0, pol.j_abs / pol.p);
  res.document["optical_efficiency_after"] = std::min(1.0, sol.j_after / sol.p);

  res.table.header = {"phi_opt", "j_before", "j_after", "p", "chi", "i_pol_before", "i_pol_after", "s1_sq_after",
                      "s2_sq_after"};
  res.table.rows.push_back({sol.phi_opt, sol.j_before, sol.j_after, sol.p, sol.chi, led.i_pol_before,
                            led.i_pol_after, led.s1_sq_after, led.s2_sq_after});
  return res;
}

inline ScenarioResult run_mueller(const ScenarioConfig& cfg) {
  const auto& p = cfg.parameters;
  schema::check_keys(p, {"jones", "rotator", "mueller"}, "parameters");
  const int given = static_cast<int>(p.contains("jones")) + static_cast<int>(p.contains("rotator")) +
                    static_cast<int>(p.contains("mueller"));
  if (given != 1) throw SchemaError("parameters: exactly one of 'jones', 'rotator', 'mueller' is required");

  ScenarioResult res{cfg.kind, header(cfg), {}};
  MuellerMatrix m;
  if (p.contains("jones")) {
    const Complex2Matrix j = schema::complex_matrix(p.at("jones"), "parameters.jones");
    m = mueller_from_jones(j);
    res.document["source"] = "jones";
    res.document["jones"] = to_json(j);
    const bool unitary = is_unitary(j, 1e-10);
    res.document["unitary"] = unitary;
    if (unitary) {
      const MuellerMatrix w = wigner_rotation(j);
      res.document["wigner_rotation"] = to_json(w);
      res.document["wigner_max_abs_diff"] = max_abs_diff(m, w);
      if (max_abs_diff(m, w) > 1e-10) throw NumericalGateFailure("Jones lifting disagrees with the Wigner rotation");
    }
  } else if (p.contains("rotator")) {
    const double phi = detail::angle_unit(cfg) * schema::number(p.at("rotator"), "parameters.rotator");
    m = mueller_rotator(phi);
    res.document["source"] = "rotator";
    res.document["phi"] = phi;
  } else {
    m = schema::real_matrix4(p.at("mueller"), "parameters.mueller");
    res.document["source"] = "mueller";
  }
  const MuellerClass cls = classify_mueller(m, cfg.seed);
  if (res.document["source"] != "mueller" && cls != MuellerClass::Nondepolarizing) {
    throw NumericalGateFailure("a Jones-derived Mueller matrix was classified as depolarizing");
  }
  res.document["mueller"] = to_json(m);
  res.document["classification"] = to_string(cls);
  res.document["seed"] = cfg.seed;

  res.table.header = {"row", "m0", "m1", "m2", "m3"};
  for (int r = 0; r < 4; ++r) res.table.rows.push_back({std::to_string(r), m(r, 0), m(r, 1), m(r, 2), m(r, 3)});
  return res;
}

inline ScenarioResult run_interference(const ScenarioConfig& cfg) {
  const auto& p = cfg.parameters;
  schema::check_keys(p, {"j", "theta", "epsilon"}, "parameters");
  const CoherencyMatrix j = coherency_param(p, "parameters");
  const double unit = angle_unit(cfg);
  const auto thetas = schema::angle_grid(schema::require(p, "theta", "parameters"), "parameters.theta", unit);
  const auto epsilons = schema::angle_grid(schema::require(p, "epsilon", "parameters"), "parameters.epsilon", unit);

  ScenarioResult res{cfg.kind, header(cfg), {}};
  res.document["input"] = to_json(j);
  res.table.header = {"theta", "epsilon", "ix", "iy", "intensity", "visibility"};
  ordered_json sweep = ordered_json::array();
  for (double th : thetas) {
    for (double ep : epsilons) {
      const ClassicalInterferenceInput in{j, th, ep};
      const AnalyzerIntensities ai = analyzer_intensities(in);
      const double intensity = classical_intensity(in);
      const double vis = ai.ix + ai.iy > 0.0 ? fringe_visibility(in) : 0.0;
      if (intensity < -1e-12 * std::max(1.0, j.trace())) throw NumericalGateFailure("negative interference intensity");
      res.table.rows.push_back({th, ep, ai.ix, ai.iy, intensity, vis});
      sweep.push_back({{"theta", th}, {"epsilon", ep}, {"ix", ai.ix}, {"iy", ai.iy}, {"intensity", intensity},
                       {"visibility", vis}});
    }
  }
  res.document["sweep"] = std::move(sweep);
  return res;
}

inline ScenarioResult run_correspondence(const ScenarioConfig& cfg) {
  const auto& p = cfg.parameters;
  schema::check_keys(p, {"quantum", "optical"}, "parameters");
  const QuantumRun q = run_quantum(schema::require(p, "quantum", "parameters"), "parameters.quantum", cfg);
  const auto& op = schema::require(p, "optical", "parameters");
  schema::check_keys(op, {"j", "phi"}, "parameters.optical");
  const CoherencyMatrix j = coherency_param(op, "parameters.optical");
  const OpticalScenario optical =
      op.contains("phi")
          ? make_optical_scenario(j, angle_unit(cfg) * schema::number(op.at("phi"), "parameters.optical.phi"))
          : make_optical_scenario(j);

  const QuantumScenario quantum{q.a, q.b, q.synthesis, q.efficiency};
  const CorrespondenceReport rep = correspondence_report(quantum, optical);

  ScenarioResult res{cfg.kind, header(cfg), {}};
  res.document["quantum"] = synthesis_json(q);
  res.document["optical"] = {{"input", to_json(j)}, {"rotation", rotation_json(optical.rotation)},
                             {"ledger", ledger_json(optical.ledger)}};
  ordered_json rows = ordered_json::array();
  res.table.header = {"table", "name", "quantum_value", "optical_value", "target", "quantum_pass", "optical_pass",
                      "pass"};
  for (const auto& r : rep.rows) {
    rows.push_back({{"table", r.table},
                    {"name", r.name},
                    {"quantum_relation", r.quantum_relation},
                    {"optical_relation", r.optical_relation},
                    {"quantum_value", r.quantum_value},
                    {"optical_value", r.optical_value},
                    {"target", r.target},
                    {"quantum_pass", r.quantum_pass},
                    {"optical_pass", r.optical_pass},
                    {"pass", r.pass()}});
    res.table.rows.push_back(
        {r.table, r.name, r.quantum_value, r.optical_value, r.target, r.quantum_pass, r.optical_pass, r.pass()});
  }
  res.document["rows"] = std::move(rows);
  res.document["all_pass"] = rep.all_pass();
  return res;
}

}  // namespace detail

inline ScenarioResult run(const ScenarioConfig& cfg) {
  switch (cfg.kind) {
    case ScenarioKind::Evolve: return detail::run_evolve(cfg);
    case ScenarioKind::OptimizeCoherence: return detail::run_optimize(cfg);
    case ScenarioKind::Mueller: return detail::run_mueller(cfg);
    case ScenarioKind::Interference: return detail::run_interference(cfg);
    case ScenarioKind::Correspondence: return detail::run_correspondence(cfg);
  }
  throw SchemaError("kind: unknown scenario kind");
}

// Runs every scenario of a batch concurrently; results keep the input order.
inline std::vector<ScenarioResult> run_batch(const std::vector<ScenarioConfig>& configs) {
  std::vector<std::future<ScenarioResult>> jobs;
  jobs.reserve(configs.size());
  for (const auto& c : configs) jobs.push_back(std::async(std::launch::async, [&c] { return run(c); }));
  std::vector<ScenarioResult> out;
  out.reserve(configs.size());
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

// Single result, or a batch rendered as a JSON array / CSV with a leading scenario column.
inline std::string render(const std::vector<ScenarioResult>& results, bool batch, bool csv) {
  if (!batch) return csv ? emit_csv(results.front().table) : emit_json(results.front().document);
  if (!csv) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : results) arr.push_back(r.document);
    return emit_json(arr);
  }
  CsvTable merged;
  merged.header.push_back("scenario");
  if (!results.empty()) {
    merged.header.insert(merged.header.end(), results.front().table.header.begin(), results.front().table.header.end());
  }
  for (std::size_t i = 0; i < results.size(); ++i) {
    for (const auto& row : results[i].table.rows) {
      std::vector<CsvCell> r{std::to_string(i)};
      r.insert(r.end(), row.begin(), row.end());
      merged.rows.push_back(std::move(r));
    }
  }
  return emit_csv(merged);
}

}  // namespace qpol

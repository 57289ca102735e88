// Copyright 2026 The tprs Authors
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

// Experiment configs, the commands behind the CLI, and CSV / JSON reports.
// Everything here is deterministic in (config, seed); only wall_time_s
// differs between reruns.

#pragma once

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "tprs/bounds.hpp"
#include "tprs/distinguishers.hpp"
#include "tprs/ensembles.hpp"
#include "tprs/errors.hpp"
#include "tprs/growth.hpp"
#include "tprs/limits.hpp"
#include "tprs/resources.hpp"

#ifndef TPRS_VERSION
#define TPRS_VERSION "0.0.0"
#endif

namespace tprs {

struct ExperimentConfig {
  std::string command = "advise";
  int n = 3;
  int t = 2;
  std::vector<std::uint64_t> m;  // subset sizes; empty means advised from `growth`
  std::vector<int> mexp;         // alternative to m: log2 of the subset sizes
  std::string kind = "subset";   // build / distance: subset or subset-phase
  std::vector<std::uint64_t> members;
  std::vector<int> phases;       // build: phase bit per member, zero when empty
  std::string growth = "log";
  std::vector<std::string> classes = {"log", "polylog", "linear", "nlogn", "poly"};
  std::vector<int> ns = {8};
  std::string measure = "coherence";
  int alpha = 3;
  int n_a = 0;                   // partition size of subsystem A; 0 = balanced
  std::string e1 = "haar";
  std::string e2 = "subset-phase-keyed";
  std::string prop = "coherence";
  std::string eta = "2^(-n)";
  std::string repeat;            // negl-check: repetition class, empty to skip
  std::uint64_t samples = 10000;
  std::uint64_t seed = 1;
  int threads = 1;
  bool fit = true;
  double c = 1.0;
  double c1 = 1.0;
  double c2 = 1.0;
  double kappa = 1.0;
  double budget_c = kDefaultBudgetConstant;
  double abs_tol = kBoundAbsTol;  // slack added to the 3-sigma pass rule
  std::uint64_t dim_cap = default_limits().dim_cap;
  std::uint64_t table_cap = default_limits().table_cap;
  double enumeration_budget = default_limits().enumeration_budget;
  int max_pauli_qubits = default_limits().max_pauli_qubits;
  std::string out;
  std::string format = "csv";

  Limits limits() const {
    Limits l;
    l.dim_cap = dim_cap;
    l.table_cap = table_cap;
    l.enumeration_budget = enumeration_budget;
    l.max_pauli_qubits = max_pauli_qubits;
    return l;
  }
};

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(ExperimentConfig, command, n, t, m, mexp, kind, members, phases,
                                                growth, classes, ns, measure, alpha, n_a, e1, e2, prop, eta, repeat,
                                                samples, seed, threads, fit, c, c1, c2, kappa, budget_c, abs_tol,
                                                dim_cap, table_cap, enumeration_budget, max_pauli_qubits, out, format)

inline nlohmann::json config_to_json(const ExperimentConfig& cfg) { return cfg; }

/// Fields missing from `j` keep their defaults; unknown fields are rejected.
inline ExperimentConfig config_from_json(const nlohmann::json& j) {
  require(j.is_object(), ErrorKind::InvalidArgument, "config must be a JSON object");
  const nlohmann::json known = ExperimentConfig{};
  for (const auto& [key, value] : j.items())
    require(known.contains(key), ErrorKind::InvalidArgument, "unknown config field '" + key + "'");
  try {
    return j.get<ExperimentConfig>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::InvalidArgument, std::string("bad config: ") + e.what());
  }
}

inline ExperimentConfig parse_config(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::InvalidArgument, std::string("config is not valid JSON: ") + e.what());
  }
  return config_from_json(j);
}

using Row = nlohmann::ordered_json;

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<Row> rows;
  bool bound_failure = false;  // some bound or ordering check failed
  std::vector<std::string> notes;
  double wall_time_s = 0.0;
};

namespace detail {

inline std::string format_csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string csv_cell(const nlohmann::ordered_json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number_float()) return format_csv_number(v.get<double>());
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

// JSON has no NaN; non-finite values become null.
inline nlohmann::ordered_json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

inline std::string bit_string(std::uint64_t x, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int i = 0; i < n; ++i)
    if ((x >> (n - 1 - i)) & 1U) s[static_cast<std::size_t>(i)] = '1';
  return s;
}

inline std::vector<std::uint64_t> subset_sizes(const ExperimentConfig& cfg) {
  require(cfg.m.empty() || cfg.mexp.empty(), ErrorKind::InvalidArgument, "give either m or mexp, not both");
  std::vector<std::uint64_t> sizes = cfg.m;
  for (int e : cfg.mexp) {
    require(e >= 0 && e < 63, ErrorKind::BadSubsetExponent, "subset exponent out of range");
    sizes.push_back(std::uint64_t{1} << e);
  }
  return sizes;
}

/// The configured subset size, or the advised one for the growth class.
inline std::uint64_t subset_size_or_advised(const ExperimentConfig& cfg) {
  const auto sizes = subset_sizes(cfg);
  if (!sizes.empty()) return sizes.front();
  return advise_subset_size(GrowthClass::parse(cfg.growth), cfg.n).m;
}

inline std::optional<PartitionSpec> partition_of(const ExperimentConfig& cfg) {
  if (cfg.n_a <= 0) return std::nullopt;
  return PartitionSpec{cfg.n_a, cfg.n - cfg.n_a};
}

inline ResourceMeasure measure_of(const ExperimentConfig& cfg) {
  ResourceMeasure m = ResourceMeasure::parse(cfg.measure, cfg.alpha);
  m.partition = partition_of(cfg);
  return m;
}

inline TableMeasure table_measure_of(const ResourceMeasure& m) {
  switch (m.kind) {
    case MeasureKind::CoherenceRE:
    case MeasureKind::CoherenceHS: return TableMeasure::Coherence;
    case MeasureKind::Entanglement:
    case MeasureKind::CollisionEntanglement: return TableMeasure::Entanglement;
    case MeasureKind::StabilizerRenyi: return TableMeasure::Magic;
  }
  return TableMeasure::Coherence;
}

/// Table value, or null where the table has no row (n < 4 or an exotic class).
inline nlohmann::ordered_json table_bound_or_null(const GrowthClass& T, TableMeasure measure, int n, double kappa,
                                                  int alpha) {
  try {
    return number(table_lower_bound(T, measure, n, kappa, alpha));
  } catch (const Error&) {
    return nullptr;
  }
}

inline EnsembleSpec ensemble_of(const std::string& kind, const ExperimentConfig& cfg, std::uint64_t m, int t,
                                RngSeed seed) {
  EnsembleSpec e;
  e.kind = parse_ensemble_kind(kind);
  e.n = cfg.n;
  e.m = is_subset_kind(e.kind) ? m : 0;
  e.t = t;
  e.seed = seed;
  return e;
}

inline void run_build(const ExperimentConfig& cfg, ExperimentReport& rep) {
  const Limits limits = cfg.limits();
  require(cfg.kind == "subset" || cfg.kind == "subset-phase", ErrorKind::InvalidArgument,
          "build kind must be subset or subset-phase");
  const SubsetSpec spec(cfg.n, cfg.members);
  std::optional<PureState> psi;
  if (cfg.kind == "subset") {
    require(cfg.phases.empty(), ErrorKind::InvalidArgument, "phases apply to subset-phase states only");
    psi = build_subset_state(spec, limits);
  } else {
    require(cfg.phases.empty() || cfg.phases.size() == cfg.members.size(), ErrorKind::InvalidArgument,
            "need one phase bit per member");
    std::vector<std::uint8_t> table(dim_of(cfg.n), 0);
    for (std::size_t i = 0; i < cfg.phases.size(); ++i) {
      require(cfg.phases[i] == 0 || cfg.phases[i] == 1, ErrorKind::InvalidArgument, "phase bits must be 0 or 1");
      table[cfg.members[i]] = static_cast<std::uint8_t>(cfg.phases[i]);
    }
    psi = build_subset_phase_state(spec, PhaseFunction::from_table(cfg.n, std::move(table)), limits);
  }
  for (std::uint64_t x = 0; x < psi->dim(); ++x) {
    const Complex a = (*psi)[x];
    if (std::abs(a) == 0.0) continue;
    Row r;
    r["index"] = x;
    r["bits"] = bit_string(x, cfg.n);
    r["re"] = a.real();
    r["im"] = a.imag();
    r["abs"] = std::abs(a);
    rep.rows.push_back(std::move(r));
  }
  rep.notes.push_back("norm " + format_csv_number(psi->amplitudes().norm()));
  rep.notes.push_back("support " + std::to_string(psi->support_size()));
}

inline void run_distance(const ExperimentConfig& cfg, ExperimentReport& rep) {
  const DistanceKind kind = parse_distance_kind(cfg.kind);
  const auto sizes = subset_sizes(cfg);
  require(!sizes.empty(), ErrorKind::InvalidArgument, "distance needs subset sizes (m or mexp)");
  const DistanceBoundReport r =
      verify_distance_bound(kind, cfg.n, sizes, cfg.t, cfg.fit, {cfg.c, cfg.c1, cfg.c2}, cfg.limits(), cfg.abs_tol);
  for (const auto& row : r.rows) {
    Row o;
    o["kind"] = to_string(kind);
    o["n"] = cfg.n;
    o["t"] = cfg.t;
    o["m"] = row.m;
    o["lhs"] = row.lhs;
    o["rhs"] = number(row.rhs);
    o["margin"] = number(row.margin);
    o["passed"] = row.passed;
    o["window_ok"] = row.window_ok;
    o["fitted"] = r.fitted;
    o["c"] = r.constants.c;
    o["c1"] = r.constants.c1;
    o["c2"] = r.constants.c2;
    o["slope_all"] = number(r.slope_all);
    o["slope_dominated"] = number(r.slope_dominated);
    o["strictly_decreasing"] = r.strictly_decreasing;
    o["abs_tol"] = cfg.abs_tol;
    rep.rows.push_back(std::move(o));
  }
  rep.bound_failure = !r.all_passed;
}

inline void run_gap(const ExperimentConfig& cfg, ExperimentReport& rep) {
  const Limits limits = cfg.limits();
  const GrowthClass T = GrowthClass::parse(cfg.growth);
  const ResourceMeasure measure = measure_of(cfg);
  const auto k1 = parse_ensemble_kind(cfg.e1);
  const auto k2 = parse_ensemble_kind(cfg.e2);
  const std::uint64_t m = is_subset_kind(k1) || is_subset_kind(k2) ? subset_size_or_advised(cfg) : 0;
  const RngSeed seed{cfg.seed};
  const EnsembleSpec e1 = ensemble_of(cfg.e1, cfg, m, 1, derive_seed(seed, 20, 0));
  const EnsembleSpec e2 = ensemble_of(cfg.e2, cfg, m, 1, derive_seed(seed, 21, 0));
  const GapReport g = estimate_gap(measure, e1, e2, cfg.samples, cfg.threads, limits);
  Row o;
  o["measure"] = measure.name();
  o["n"] = cfg.n;
  o["T"] = T.name();
  o["seed"] = cfg.seed;
  o["samples"] = cfg.samples;
  o["e1"] = to_string(e1.kind);
  o["e2"] = to_string(e2.kind);
  o["m"] = m;
  o["e1_mean"] = g.e_high.mean;
  o["e1_std_error"] = g.e_high.std_error;
  o["e2_mean"] = g.e_low.mean;
  o["e2_std_error"] = g.e_low.std_error;
  o["delta"] = g.delta;
  o["delta_std_error"] = g.delta_std_error;
  o["table_lower_bound"] = table_bound_or_null(T, table_measure_of(measure), cfg.n, cfg.kappa, cfg.alpha);
  o["kappa"] = cfg.kappa;
  o["alpha"] = cfg.alpha;
  rep.rows.push_back(std::move(o));
}

inline void run_sweep(const ExperimentConfig& cfg, ExperimentReport& rep) {
  const Limits limits = cfg.limits();
  require(!cfg.classes.empty() && !cfg.ns.empty(), ErrorKind::InvalidArgument, "sweep needs classes and ns");
  std::vector<GrowthClass> classes;
  for (const auto& s : cfg.classes) classes.push_back(GrowthClass::parse(s));
  // The dominance chain is checked in table order, whatever order was given.
  const auto order = table_classes();
  const auto rank = [&](const GrowthClass& T) {
    for (std::size_t i = 0; i < order.size(); ++i)
      if (order[i] == T) return static_cast<int>(i);
    fail(ErrorKind::UnsupportedGrowthClass, "no table row for growth class " + T.name());
  };
  for (const auto& T : classes) rank(T);

  for (int n : cfg.ns) {
    ExperimentConfig at = cfg;
    at.n = n;
    const ResourceMeasure measure = measure_of(at);
    const TableMeasure tm = table_measure_of(measure);
    AnalyticValue haar = haar_expected(measure, n);
    if (haar.unit == "nats") haar.value /= std::numbers::ln2;

    std::vector<std::pair<int, double>> ranked;
    std::vector<Row> block;
    for (std::size_t i = 0; i < classes.size(); ++i) {
      const GrowthClass& T = classes[i];
      const double bound = table_lower_bound(T, tm, n, cfg.kappa, cfg.alpha);
      const std::uint64_t m = advise_subset_size(T, n).m;
      const EnsembleSpec low = ensemble_of("subset-phase-keyed", at, m, 1, derive_seed(RngSeed{cfg.seed}, 30, i));
      const Estimate est = expected_resource(measure, low, cfg.samples, cfg.threads, limits);
      ranked.emplace_back(rank(T), bound);
      Row o;
      o["T"] = T.name();
      o["n"] = n;
      o["measure"] = measure.name();
      o["table_lower_bound"] = bound;
      o["m"] = m;
      o["low_resource"] = est.mean;
      o["low_std_error"] = est.std_error;
      o["haar_reference"] = haar.value;
      o["delta"] = haar.value - est.mean;
      o["kappa"] = cfg.kappa;
      o["alpha"] = cfg.alpha;
      block.push_back(std::move(o));
    }
    std::sort(ranked.begin(), ranked.end());
    bool chain_ok = true;
    for (std::size_t i = 1; i < ranked.size(); ++i) chain_ok = chain_ok && ranked[i - 1].second <= ranked[i].second;
    if (!chain_ok) rep.bound_failure = true;
    for (auto& o : block) {
      o["chain_ok"] = chain_ok;
      rep.rows.push_back(std::move(o));
    }
  }
}

inline void run_hybrid(const ExperimentConfig& cfg, ExperimentReport& rep) {
  const GrowthClass T = GrowthClass::parse(cfg.growth);
  const std::uint64_t m = subset_size_or_advised(cfg);
  const auto reports = hybrid_experiment(cfg.n, m, cfg.t, RngSeed{cfg.seed}, cfg.samples, T, cfg.threads, cfg.c,
                                         cfg.budget_c, cfg.limits());
  require(!reports.empty(), ErrorKind::CopyMismatch,
          "no registered distinguisher uses t = " + std::to_string(cfg.t) + " copies");
  for (const auto& h : reports) {
    const std::pair<const char*, const AdvantageReport*> pairs[] = {
        {"keyed-vs-random", &h.keyed_vs_random}, {"random-vs-haar", &h.random_vs_haar}, {"keyed-vs-haar", &h.keyed_vs_haar}};
    for (const auto& [pair, a] : pairs) {
      Row o;
      o["distinguisher"] = h.distinguisher;
      o["pair"] = pair;
      o["n"] = cfg.n;
      o["m"] = m;
      o["t"] = cfg.t;
      o["T"] = T.name();
      o["accept1"] = a->accept1.mean;
      o["accept2"] = a->accept2.mean;
      o["adv"] = a->adv;
      o["std_error"] = a->std_error;
      o["cost"] = a->cost;
      o["budget"] = a->budget;
      o["budget_ok"] = a->budget_ok;
      o["threshold"] = a->threshold;
      o["bound"] = h.bound;
      o["triangle_ok"] = h.triangle_ok;
      o["within_bound"] = h.within_bound;
      o["c"] = cfg.c;
      o["budget_c"] = cfg.budget_c;
      rep.rows.push_back(std::move(o));
    }
    if (!h.triangle_ok) rep.bound_failure = true;
  }
}

inline void run_negl_check(const ExperimentConfig& cfg, ExperimentReport& rep) {
  const GrowthClass T = GrowthClass::parse(cfg.growth);
  const auto base_row = [&](const std::string& check) {
    Row o;
    o["check"] = check;
    o["T"] = T.name();
    return o;
  };
  if (!cfg.eta.empty()) {
    const BoundExpr eta = BoundExpr::parse(cfg.eta);
    const NegligibilityResult r = is_negligible(eta, T);
    Row o = base_row("negligible");
    o["subject"] = eta.to_string();
    o["verdict"] = to_string(r.verdict);
    o["rule"] = r.rule;
    o["grid_all"] = r.witness.holds_everywhere();
    o["grid_tail"] = r.witness.holds_on_tail();
    o["counterexample_n"] = nullptr;
    o["counterexample_value"] = nullptr;
    rep.rows.push_back(std::move(o));
  }
  if (!cfg.repeat.empty()) {
    const GrowthClass R = GrowthClass::parse(cfg.repeat);
    const std::pair<const char*, RuleVerdict> checks[] = {{"closure", check_closure(T, R)},
                                                          {"repetition", check_repetition_consistency(T, R)}};
    for (const auto& [name, v] : checks) {
      Row o = base_row(name);
      o["subject"] = R.name();
      o["verdict"] = v.holds ? "holds" : "fails";
      o["rule"] = v.rule;
      o["grid_all"] = nullptr;
      o["grid_tail"] = nullptr;
      o["counterexample_n"] = v.counterexample_n ? number(*v.counterexample_n) : nullptr;
      o["counterexample_value"] = v.counterexample_value ? number(*v.counterexample_value) : nullptr;
      rep.rows.push_back(std::move(o));
    }
  }
  require(!rep.rows.empty(), ErrorKind::InvalidArgument, "negl-check needs eta or repeat");
}

inline void run_advise(const ExperimentConfig& cfg, ExperimentReport& rep) {
  const GrowthClass T = GrowthClass::parse(cfg.growth);
  const Limits limits = cfg.limits();
  for (int n : cfg.ns) {
    const SubsetAdvice s = advise_subset_size(T, n);
    const CopyAdvice c = advise_copies(T, n, limits);
    Row o;
    o["T"] = T.name();
    o["n"] = n;
    o["m"] = s.m;
    o["m_exp"] = s.m_exp;
    o["rule_t"] = c.rule_t;
    o["t"] = c.t;
    o["clipped"] = c.clipped;
    o["coherence_bound"] = table_bound_or_null(T, TableMeasure::Coherence, n, cfg.kappa, cfg.alpha);
    o["entanglement_bound"] = table_bound_or_null(T, TableMeasure::Entanglement, n, cfg.kappa, cfg.alpha);
    o["magic_bound"] = table_bound_or_null(T, TableMeasure::Magic, n, cfg.kappa, cfg.alpha);
    o["kappa"] = cfg.kappa;
    o["alpha"] = cfg.alpha;
    o["dim_cap"] = limits.dim_cap;
    rep.rows.push_back(std::move(o));
  }
}

inline void run_prop(const ExperimentConfig& cfg, ExperimentReport& rep) {
  const GrowthClass T = GrowthClass::parse(cfg.growth);
  const PropKind prop = parse_prop_kind(cfg.prop);
  const auto k1 = parse_ensemble_kind(cfg.e1);
  const auto k2 = parse_ensemble_kind(cfg.e2);
  const std::uint64_t m = is_subset_kind(k1) || is_subset_kind(k2) ? subset_size_or_advised(cfg) : 0;
  const RngSeed seed{cfg.seed};
  const EnsembleSpec high = ensemble_of(cfg.e1, cfg, m, 1, derive_seed(seed, 40, 0));
  const EnsembleSpec low = ensemble_of(cfg.e2, cfg, m, 1, derive_seed(seed, 41, 0));
  const PropCheckReport r =
      empirical_prop_check(prop, high, low, T, cfg.samples, cfg.threads, cfg.alpha, partition_of(cfg), cfg.limits(), cfg.abs_tol);
  Row o;
  o["check"] = r.check.label;
  o["n"] = cfg.n;
  o["T"] = T.name();
  o["e_high"] = to_string(high.kind);
  o["e_low"] = to_string(low.kind);
  o["m"] = m;
  o["eta_hat"] = r.eta_hat;
  o["eta_std_error"] = r.eta_std_error;
  o["scale"] = r.scale;
  o["low_resource"] = r.check.lhs;
  o["bound"] = number(r.check.rhs);
  o["margin"] = number(r.check.margin);
  o["std_error"] = r.check.std_error;
  o["premise_margin"] = r.premise_margin;
  o["verdict"] = to_string(r.verdict);
  o["threshold"] = r.threshold;
  o["eta_below_threshold"] = r.eta_below_threshold;
  o["alpha"] = cfg.alpha;
  o["abs_tol"] = cfg.abs_tol;
  rep.rows.push_back(std::move(o));
  rep.bound_failure = r.verdict == Verdict::Failed;
}

}  // namespace detail

inline std::vector<std::string> command_names() {
  return {"build", "distance", "gap", "sweep", "hybrid", "negl-check", "advise", "prop"};
}

/// Runs the configured command. Throws tprs::Error on invalid input or
/// exceeded resource limits.
inline ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  require(cfg.samples >= 2, ErrorKind::InvalidArgument, "need at least two samples");
  require(cfg.threads >= 1, ErrorKind::InvalidArgument, "threads must be positive");
  require(cfg.format == "csv" || cfg.format == "json", ErrorKind::InvalidArgument, "format must be csv or json");
  ExperimentReport rep;
  rep.config = cfg;
  const auto start = std::chrono::steady_clock::now();
  const std::string& c = cfg.command;
  if (c == "build") detail::run_build(cfg, rep);
  else if (c == "distance") detail::run_distance(cfg, rep);
  else if (c == "gap") detail::run_gap(cfg, rep);
  else if (c == "sweep") detail::run_sweep(cfg, rep);
  else if (c == "hybrid") detail::run_hybrid(cfg, rep);
  else if (c == "negl-check") detail::run_negl_check(cfg, rep);
  else if (c == "advise") detail::run_advise(cfg, rep);
  else if (c == "prop") detail::run_prop(cfg, rep);
  else fail(ErrorKind::InvalidArgument, "unknown command '" + c + "'");
  rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

/// Header from the first row; every row of a command has the same columns.
inline std::string to_csv(const ExperimentReport& rep) {
  std::ostringstream os;
  if (rep.rows.empty()) return "";
  bool first = true;
  for (const auto& [key, value] : rep.rows.front().items()) {
    os << (first ? "" : ",") << detail::csv_cell(key);
    first = false;
  }
  os << '\n';
  for (const auto& row : rep.rows) {
    first = true;
    for (const auto& [key, value] : row.items()) {
      os << (first ? "" : ",") << detail::csv_cell(value);
      first = false;
    }
    os << '\n';
  }
  return os.str();
}

inline std::string to_json(const ExperimentReport& rep) {
  nlohmann::ordered_json j;
  j["tool"] = "tprs";
  j["version"] = TPRS_VERSION;
  j["config"] = nlohmann::ordered_json::parse(config_to_json(rep.config).dump());
  j["rows"] = rep.rows;
  j["notes"] = rep.notes;
  j["bound_failure"] = rep.bound_failure;
  j["wall_time_s"] = rep.wall_time_s;
  return j.dump(2) + "\n";
}

}  // namespace tprs

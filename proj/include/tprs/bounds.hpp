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

// Trace-distance bounds of the subset and subset-phase constructions, the
// resource lower bounds for coherence, entanglement and magic, and
// empirical pipelines that plug measured advantages into them.

#pragma once

#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "tprs/distinguishers.hpp"
#include "tprs/ensembles.hpp"
#include "tprs/errors.hpp"
#include "tprs/growth.hpp"
#include "tprs/linalg.hpp"
#include "tprs/montecarlo.hpp"
#include "tprs/resources.hpp"

namespace tprs {

/// Absolute slack added to the 3-sigma rule, for checks that hold with
/// equality in exact arithmetic.
inline constexpr double kBoundAbsTol = 1e-9;

struct BoundCheckReport {
  std::string label;
  double lhs = 0.0;
  double std_error = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs for upper bounds, lhs - rhs for lower bounds
  bool passed = false;
  std::map<std::string, double> constants;
};

inline bool within_noise(double margin, double std_error, double abs_tol = kBoundAbsTol) {
  return margin >= -(3.0 * std_error + abs_tol);
}

// ---------------------------------------------------------------------------
// Trace-distance bounds

/// c t^2 / 2^m_exp without checking the parameter window.
inline double subset_phase_distance_bound_raw(int m_exp, int t, double c) { return c * t * t / std::exp2(m_exp); }

/// c t^2 / 2^m_exp, valid for t < 2^m_exp < 2^n.
inline double subset_phase_distance_bound(int n, int m_exp, int t, double c) {
  require(t >= 1, ErrorKind::InvalidArgument, "copy count must be positive");
  require(static_cast<double>(t) < std::exp2(m_exp) && m_exp < n, ErrorKind::ParameterOrderViolated,
          "need t < 2^m < 2^n, got t=" + std::to_string(t) + ", m=" + std::to_string(m_exp) + ", n=" +
              std::to_string(n));
  return subset_phase_distance_bound_raw(m_exp, t, c);
}

/// c1 t m / 2^n + c2 t^2 / m.
inline double subset_distance_bound(int n, double m, int t, double c1, double c2) {
  require(m >= 1 && m <= std::exp2(n), ErrorKind::InvalidArgument, "subset size must lie in 1..2^n");
  return c1 * t * m / std::exp2(n) + c2 * t * t / m;
}

/// Minimizer of subset_distance_bound over real m: sqrt(c2 t 2^n / c1).
inline double subset_distance_argmin(int n, int t, double c1, double c2) {
  require(c1 > 0 && c2 > 0, ErrorKind::InvalidArgument, "constants must be positive");
  return std::sqrt(c2 / c1 * t * std::exp2(n));
}

enum class DistanceKind { SubsetPhase, Subset };

inline std::string to_string(DistanceKind k) { return k == DistanceKind::Subset ? "subset" : "subset-phase"; }

inline DistanceKind parse_distance_kind(const std::string& s) {
  if (s == "subset") return DistanceKind::Subset;
  if (s == "subset-phase") return DistanceKind::SubsetPhase;
  fail(ErrorKind::InvalidArgument, "unknown distance kind '" + s + "'");
}

/// Exact d_Tr between the ensemble's t-copy moment and the Haar moment.
inline double exact_distance_to_haar(DistanceKind kind, int n, std::uint64_t m, int t,
                                     const Limits& limits = default_limits()) {
  const DensityOperator moment = kind == DistanceKind::Subset ? exact_subset_moment(n, m, t, limits)
                                                               : exact_subset_phase_moment(n, m, t, limits);
  return trace_distance(moment, haar_moment(n, t, limits));
}

struct DistanceConstants {
  double c = 1.0;   // subset-phase
  double c1 = 1.0;  // subset, t m / 2^n term
  double c2 = 1.0;  // subset, t^2 / m term
};

struct DistanceRow {
  std::uint64_t m = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool passed = false;
  bool window_ok = true;  // subset-phase: t < m < 2^n
};

struct DistanceBoundReport {
  DistanceKind kind = DistanceKind::Subset;
  int n = 0;
  int t = 0;
  bool fitted = false;
  DistanceConstants constants;
  std::vector<DistanceRow> rows;
  double slope_all = std::numeric_limits<double>::quiet_NaN();
  /// Slope over the rows where the t^2/m shape dominates (m <= sqrt(t 2^n)
  /// for the subset bound, all rows for the subset-phase bound).
  double slope_dominated = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::uint64_t> dominated_ms;
  bool all_passed = false;
  bool strictly_decreasing = false;
};

namespace detail {
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  const double k = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}
}  // namespace detail

/// Exact distances for each subset size, checked against the bound. With
/// `fit`, constants are fitted at the first size (each term saturating the
/// distance on its own for the subset bound) and held fixed for the rest.
inline DistanceBoundReport verify_distance_bound(DistanceKind kind, int n, const std::vector<std::uint64_t>& sizes,
                                                 int t, bool fit, DistanceConstants constants = {},
                                                 const Limits& limits = default_limits(),
                                                 double abs_tol = kBoundAbsTol) {
  require(!sizes.empty(), ErrorKind::InvalidArgument, "need at least one subset size");
  DistanceBoundReport r;
  r.kind = kind;
  r.n = n;
  r.t = t;
  r.fitted = fit;
  std::vector<double> lhs;
  for (auto m : sizes) {
    if (kind == DistanceKind::SubsetPhase)
      require(std::has_single_bit(m), ErrorKind::BadSubsetExponent, "subset-phase sizes must be powers of two");
    lhs.push_back(exact_distance_to_haar(kind, n, m, t, limits));
  }
  const double two_n = std::exp2(n);
  if (fit) {
    const double m0 = static_cast<double>(sizes.front());
    if (kind == DistanceKind::SubsetPhase) {
      constants.c = lhs.front() / (t * t / m0);
    } else {
      constants.c1 = lhs.front() / (t * m0 / two_n);
      constants.c2 = lhs.front() / (t * t / m0);
    }
  }
  r.constants = constants;
  r.all_passed = true;
  r.strictly_decreasing = sizes.size() > 1;
  std::vector<double> xs, ys, dx, dy;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    DistanceRow row;
    row.m = sizes[i];
    row.lhs = lhs[i];
    const double m = static_cast<double>(row.m);
    if (kind == DistanceKind::SubsetPhase) {
      const int m_exp = std::countr_zero(row.m);
      row.window_ok = t < m && m < two_n;
      row.rhs = subset_phase_distance_bound_raw(m_exp, t, constants.c);
    } else {
      row.rhs = subset_distance_bound(n, m, t, constants.c1, constants.c2);
    }
    row.margin = row.rhs - row.lhs;
    row.passed = row.margin >= -abs_tol;
    r.all_passed = r.all_passed && row.passed;
    if (i > 0 && !(row.lhs < lhs[i - 1])) r.strictly_decreasing = false;
    if (row.lhs > 0) {
      xs.push_back(m);
      ys.push_back(row.lhs);
      const bool dominated = kind == DistanceKind::SubsetPhase || m <= subset_distance_argmin(n, t, 1.0, 1.0) + 1e-9;
      if (dominated) {
        dx.push_back(m);
        dy.push_back(row.lhs);
        r.dominated_ms.push_back(row.m);
      }
    }
    r.rows.push_back(row);
  }
  r.slope_all = detail::loglog_slope(xs, ys);
  r.slope_dominated = detail::loglog_slope(dx, dy);
  return r;
}

// ---------------------------------------------------------------------------
// Resource lower bounds

/// -log2(2^{-gamma} + eta); also the entanglement bound with xi for gamma.
inline double coherence_lower_bound(double gamma, double eta) {
  const double arg = std::exp2(-gamma) + eta;
  require(arg > 0 && arg < 1, ErrorKind::BoundDegenerate,
          "2^-gamma + eta = " + detail::format_number(arg) + " is not in (0, 1)");
  return -std::log2(arg);
}

inline double entanglement_lower_bound(double xi, double eta) { return coherence_lower_bound(xi, eta); }

/// -(log2 eta + 2^{-(alpha-1) tau} / eta) / (alpha - 1).
inline double magic_lower_bound(double tau, double eta, int alpha) {
  require(alpha >= 3 && alpha % 2 == 1, ErrorKind::InvalidArgument, "alpha must be an odd integer >= 3");
  require(eta > 0 && eta < 1, ErrorKind::BoundDegenerate, "eta = " + detail::format_number(eta) + " is not in (0, 1)");
  return -(std::log2(eta) + std::exp2(-(alpha - 1) * tau) / eta) / (alpha - 1);
}

struct ResourceBound {
  double bound = 0.0;
  std::optional<double> gap;  // E_high - bound, when E_high is supplied
};

inline ResourceBound coherence_bound_check(const BoundExpr& gamma, const BoundExpr& eta, double n,
                                           std::optional<double> high_expectation = std::nullopt) {
  ResourceBound b;
  b.bound = coherence_lower_bound(gamma.eval(n), eta.eval(n));
  if (high_expectation) b.gap = *high_expectation - b.bound;
  return b;
}

inline ResourceBound entanglement_bound_check(const BoundExpr& xi, const BoundExpr& eta, double n,
                                              std::optional<double> high_expectation = std::nullopt) {
  return coherence_bound_check(xi, eta, n, high_expectation);
}

inline ResourceBound magic_bound_check(const BoundExpr& tau, const BoundExpr& eta, int alpha, double n,
                                       std::optional<double> high_expectation = std::nullopt) {
  ResourceBound b;
  b.bound = magic_lower_bound(tau.eval(n), eta.eval(n), alpha);
  if (high_expectation) b.gap = *high_expectation - b.bound;
  return b;
}

// ---------------------------------------------------------------------------
// Empirical pipelines

enum class PropKind { Coherence = 7, Entanglement = 8, Magic = 9 };

inline PropKind parse_prop_kind(const std::string& s) {
  if (s == "7" || s == "coherence") return PropKind::Coherence;
  if (s == "8" || s == "entanglement") return PropKind::Entanglement;
  if (s == "9" || s == "magic") return PropKind::Magic;
  fail(ErrorKind::InvalidArgument, "unknown proposition check '" + s + "'");
}

enum class Verdict { Passed, Failed, PremiseViolated };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Passed: return "passed";
    case Verdict::Failed: return "failed";
    case Verdict::PremiseViolated: return "premise-violated";
  }
  return "?";
}

struct PropCheckReport {
  PropKind prop = PropKind::Coherence;
  BoundCheckReport check;
  Verdict verdict = Verdict::Failed;
  double eta_hat = 0.0;              // measured advantage of the test
  double eta_std_error = 0.0;
  double scale = 0.0;                // gamma, xi or tau derived from the high ensemble
  Estimate low_premise;              // low ensemble's H2 / C2-scale / M_alpha estimate
  double premise_margin = 0.0;       // scale - low premise value
  double threshold = 0.0;            // 1 / T(n)
  bool eta_below_threshold = false;
};

/// Measures the test statistic of the chosen proposition on both ensembles,
/// derives the scale parameter (gamma, xi or tau) from the high ensemble's
/// mean statistic, plugs the measured advantage into the lower bound and
/// checks the low ensemble's mean resource against it.
///
/// The purity-scale advantage 2 * eta is used for entanglement and magic,
/// since the SWAP and Hadamard acceptance probabilities are (1 + x) / 2.
inline PropCheckReport empirical_prop_check(PropKind prop, const EnsembleSpec& e_high, const EnsembleSpec& e_low,
                                            const GrowthClass& T, std::size_t samples, int threads = 1,
                                            int alpha = 3, std::optional<PartitionSpec> part = std::nullopt,
                                            const Limits& limits = default_limits(),
                                            double abs_tol = kBoundAbsTol) {
  require(e_high.n == e_low.n, ErrorKind::DimensionMismatch, "ensembles must have the same qubit count");
  e_high.validate(limits);
  e_low.validate(limits);
  require(samples >= 2, ErrorKind::InvalidArgument, "need at least two samples");
  const int n = e_high.n;
  const PartitionSpec partition = part.value_or(PartitionSpec::balanced(n));
  if (prop == PropKind::Entanglement) partition.check(n);
  if (prop == PropKind::Magic)
    require(alpha >= 3 && alpha % 2 == 1, ErrorKind::InvalidArgument, "alpha must be an odd integer >= 3");

  // Per sample: statistic on high, statistic on low, resource on low, premise quantity on low.
  const auto observe = [&](std::size_t i) -> std::vector<double> {
    const PureState hi = sample_state(e_high, i, limits);
    const PureState lo = sample_state(e_low, i, limits);
    switch (prop) {
      case PropKind::Coherence: {
        const auto ph = diagonal_probabilities(hi);
        const auto pl = diagonal_probabilities(lo);
        const double c_low = shannon_entropy(pl);
        return {diagonal_purity(ph), diagonal_purity(pl), c_low, -std::log2(diagonal_purity(pl))};
      }
      case PropKind::Entanglement: {
        const DensityOperator rh = reduced_state(hi, partition, Keep::A);
        const DensityOperator rl = reduced_state(lo, partition, Keep::A);
        return {purity(rh), purity(rl), von_neumann_entropy(rl), collision_entropy(rl)};
      }
      case PropKind::Magic: {
        const auto eh = pauli_expectations(hi, limits);
        const auto el = pauli_expectations(lo, limits);
        const double ml = pauli_moment(el, n, alpha);
        return {pauli_moment(eh, n, alpha), ml, std::log2(ml) / (1.0 - alpha), std::log2(ml) / (1.0 - alpha)};
      }
    }
    return {};
  };
  const auto est = mc_estimate(samples, 4, threads, observe);
  const Estimate stat_high = est[0], stat_low = est[1], resource_low = est[2];

  PropCheckReport r;
  r.prop = prop;
  r.low_premise = est[3];
  r.threshold = 1.0 / T.value(std::max(2, n));
  // Acceptance probability is p itself for coherence and (1 + x)/2 otherwise.
  const double accept_scale = prop == PropKind::Coherence ? 1.0 : 0.5;
  r.eta_hat = accept_scale * std::abs(stat_low.mean - stat_high.mean);
  r.eta_std_error = accept_scale * std::hypot(stat_low.std_error, stat_high.std_error);
  r.eta_below_threshold = r.eta_hat < r.threshold;
  const double plug_eta = r.eta_hat / accept_scale;  // eta for coherence, 2 eta otherwise

  BoundCheckReport& c = r.check;
  c.lhs = resource_low.mean;
  c.constants["samples"] = static_cast<double>(samples);
  c.constants["eta_hat"] = r.eta_hat;
  c.constants["eta_plugged"] = plug_eta;
  c.constants["abs_tol"] = abs_tol;
  const double x = stat_high.mean + plug_eta;  // argument of the logarithm
  // Delta-method error of the bound: x is (up to sign) the low-ensemble mean statistic.
  const double se_x = std::hypot(stat_low.std_error, stat_high.std_error);
  switch (prop) {
    case PropKind::Coherence:
    case PropKind::Entanglement: {
      r.scale = -std::log2(stat_high.mean);
      c.label = prop == PropKind::Coherence ? "coherence" : "entanglement";
      c.constants[prop == PropKind::Coherence ? "gamma" : "xi"] = r.scale;
      c.rhs = coherence_lower_bound(r.scale, plug_eta);
      c.std_error = std::hypot(resource_low.std_error, se_x / (x * std::numbers::ln2));
      break;
    }
    case PropKind::Magic: {
      r.scale = -std::log2(stat_high.mean) / (alpha - 1);
      c.label = "magic";
      c.constants["tau"] = r.scale;
      c.constants["alpha"] = alpha;
      c.rhs = magic_lower_bound(r.scale, plug_eta, alpha);
      const double deriv = (1.0 / (plug_eta * std::numbers::ln2) - stat_high.mean / (plug_eta * plug_eta)) / (alpha - 1);
      c.std_error = std::hypot(resource_low.std_error, std::abs(deriv) * se_x);
      break;
    }
  }
  c.margin = c.lhs - c.rhs;
  c.passed = within_noise(c.margin, c.std_error, abs_tol);
  // Premise: the high ensemble's scale is at least the low ensemble's value.
  // For coherence it reads E_low[p] >= E_high[p] on the projector statistic.
  bool premise_ok = false;
  if (prop == PropKind::Coherence) {
    r.low_premise = stat_low;
    r.premise_margin = stat_low.mean - stat_high.mean;
    premise_ok = within_noise(r.premise_margin, se_x, abs_tol);
  } else {
    r.premise_margin = r.scale - r.low_premise.mean;
    const double premise_se = std::hypot(r.low_premise.std_error, se_x / (stat_high.mean * std::numbers::ln2));
    premise_ok = within_noise(r.premise_margin, premise_se, abs_tol);
  }
  r.verdict = !premise_ok ? Verdict::PremiseViolated : (c.passed ? Verdict::Passed : Verdict::Failed);
  return r;
}

}  // namespace tprs

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

// Acceptance checks. Prints one PASS/FAIL line per check; `--only N` runs a
// single check and exits nonzero when it fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "tprs/tprs.hpp"

namespace {

using namespace tprs;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool within_3se(double value, double target, double se) { return std::abs(value - target) <= 3.0 * se; }

Outcome haar_moment_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  const EnsembleSpec haar{EnsembleKind::Haar, 1, 0, 2, RngSeed{1}};
  const auto est = mc_ensemble_moment(haar, 100000);
  const Matrix expected = symmetric_projector(1, 2) / 3.0;
  const double err = (est.mean.matrix() - expected).cwiseAbs().maxCoeff();
  const double dt = seconds_since(t0);
  return {err <= 0.02 && dt < 30, fmt("max entry error %.4g (tol 0.02), %.2f s (limit 30)", err, dt)};
}

Outcome subset_phase_trend() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = verify_distance_bound(DistanceKind::SubsetPhase, 3, {2, 4}, 2, true);
  const double dt = seconds_since(t0);
  const bool pass = r.strictly_decreasing && r.all_passed && dt < 60;
  return {pass, fmt("d(m=2)=%.6f d(m=4)=%.6f, c=%.4f, bound at m=4 %.6f, decreasing=%d, %.2f s", r.rows[0].lhs,
                    r.rows[1].lhs, r.constants.c, r.rows[1].rhs, int(r.strictly_decreasing), dt)};
}

Outcome subset_trend() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = verify_distance_bound(DistanceKind::Subset, 3, {2, 4, 6}, 2, true);
  const double dt = seconds_since(t0);
  const bool slope_ok = std::abs(r.slope_dominated + 1.0) <= 0.3;
  std::string lhs;
  for (const auto& row : r.rows)
    lhs += fmt("%sd(m=%llu)=%.4f", lhs.empty() ? "" : " ", static_cast<unsigned long long>(row.m), row.lhs);
  return {r.all_passed && slope_ok && dt < 60,
          fmt("%s, bound held=%d, dominated slope %.3f (want -1 +/- 0.3), %.2f s", lhs.c_str(), int(r.all_passed),
              r.slope_dominated, dt)};
}

Outcome haar_coherence() {
  const EnsembleSpec haar{EnsembleKind::Haar, 2, 0, 1, RngSeed{4}};
  ResourceMeasure re = ResourceMeasure::parse("coherence");
  re.natural_units = true;
  const auto c = expected_resource(re, haar, 10000);
  const auto c2 = expected_resource(ResourceMeasure::parse("coherence-hs"), haar, 10000);
  const double c_ref = 13.0 / 12.0;
  const bool pass = within_3se(c.mean, c_ref, c.std_error) && within_3se(c2.mean, 0.6, c2.std_error);
  return {pass, fmt("C=%.5f+/-%.5f nats vs %.5f; C2=%.5f+/-%.5f vs 0.6", c.mean, c.std_error, c_ref, c2.mean,
                    c2.std_error)};
}

Outcome haar_collision_entanglement() {
  const EnsembleSpec haar{EnsembleKind::Haar, 2, 0, 1, RngSeed{5}};
  const auto e = expected_resource(ResourceMeasure::parse("collision-entanglement"), haar, 10000);
  const double ref = std::log2(5.0 / 4.0);
  return {within_3se(e.mean, ref, e.std_error),
          fmt("E[H2]=%.5f+/-%.5f vs %.5f (%.1f se)", e.mean, e.std_error, ref, (e.mean - ref) / e.std_error)};
}

Outcome coherence_relation_mixed() {
  std::mt19937_64 rng(6);
  int violations = 0;
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const int n = 1 + i % 3;
    const int d = 1 << n;
    const Matrix m = i % 2 ? oracle::random_density(d, rng) : oracle::random_low_rank_density(d, 1 + i % d, rng);
    const DensityOperator rho(n, m);
    const double v = coherence_relative_entropy(rho) + std::log2(1.0 - coherence_hs_distance(rho));
    if (v < -1e-9) ++violations;
    worst = std::min(worst, v);
  }
  return {violations == 0, fmt("%d of 1000 violations, worst %.4f", violations, worst)};
}

Outcome hadamard_identity() {
  std::mt19937_64 rng(7);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const int n = 1 + i % 2;
    const PureState psi(n, oracle::random_vector(1 << n, rng));
    const double direct = stabilizer_renyi_entropy(psi, 3);
    const double via_test = std::log2(2.0 * hadamard_test_prob(psi, 3) - 1.0) / (1.0 - 3.0);
    worst = std::max(worst, std::abs(direct - via_test));
  }
  return {worst <= 1e-8, fmt("max |difference| %.3g over 200 states (tol 1e-8)", worst)};
}

Outcome magic_point_values() {
  const double r = std::numbers::sqrt2 / 2;
  Vector t(2);
  t << r, std::polar(r, std::numbers::pi / 4);
  const PureState ts(1, t);
  const double m2 = stabilizer_renyi_entropy(ts, 2), m3 = stabilizer_renyi_entropy(ts, 3);
  double err = std::max(std::abs(m2 - std::log2(4.0 / 3)), std::abs(m3 - 0.5 * std::log2(8.0 / 5)));
  err = std::max({err, std::abs(m2 - oracle::stabilizer_renyi(t, 2)), std::abs(m3 - oracle::stabilizer_renyi(t, 3))});

  const Complex i(0, 1);
  double stab = 0.0;
  for (auto [a, b] : std::vector<std::pair<Complex, Complex>>{{1, 0}, {0, 1}, {r, r}, {r, -r}, {r, r * i}, {r, -r * i}})
    for (int alpha = 2; alpha <= 5; ++alpha) {
      Vector v(2);
      v << a, b;
      stab = std::max(stab, std::abs(stabilizer_renyi_entropy(PureState(1, v), alpha)));
    }
  return {err <= 1e-10 && stab <= 1e-10, fmt("T-state error %.3g, stabilizer max %.3g (tol 1e-10)", err, stab)};
}

Outcome haar_magic_band() {
  std::vector<double> x, y;
  std::string pts;
  for (int n : {2, 3, 4}) {
    const EnsembleSpec haar{EnsembleKind::Haar, n, 0, 1, RngSeed{static_cast<std::uint64_t>(90 + n)}};
    const auto e = expected_resource(ResourceMeasure::parse("magic", 2), haar, 10000);
    x.push_back(n);
    y.push_back(e.mean);
    pts += fmt("%sn=%d:%.4f", pts.empty() ? "" : " ", n, e.mean);
  }
  const double mx = (x[0] + x[1] + x[2]) / 3, my = (y[0] + y[1] + y[2]) / 3;
  double sxy = 0, sxx = 0;
  for (int k = 0; k < 3; ++k) {
    sxy += (x[k] - mx) * (y[k] - my);
    sxx += (x[k] - mx) * (x[k] - mx);
  }
  const double slope = sxy / sxx, intercept = my - slope * mx;
  const bool pass = std::abs(slope - 1.0) <= 0.15 && std::abs(intercept + 2.0) <= 0.5;
  return {pass, fmt("%s; slope %.3f (want 1 +/- 0.15), intercept %.3f (want -2 +/- 0.5)", pts.c_str(), slope,
                    intercept)};
}

Outcome prop_pipeline() {
  const int n = 3;
  const GrowthClass T = GrowthClass::log();
  const auto m = advise_subset_size(T, n).m;
  const EnsembleSpec high{EnsembleKind::Haar, n, 0, 1, RngSeed{10}};
  const EnsembleSpec low{EnsembleKind::SubsetPhaseKeyed, n, m, 1, RngSeed{11}};
  bool pass = true;
  std::string detail = fmt("m=%llu", static_cast<unsigned long long>(m));
  for (PropKind p : {PropKind::Coherence, PropKind::Entanglement}) {
    const auto r = empirical_prop_check(p, high, low, T, 10000);
    const bool ok = within_noise(r.check.margin, r.check.std_error);
    pass = pass && ok;
    detail += fmt("; %s: measured %.4f, bound %.4f, eta %.4f, verdict %s", r.check.label.c_str(), r.check.lhs,
                  r.check.rhs, r.eta_hat, to_string(r.verdict).c_str());
  }
  return {pass, detail};
}

Outcome table_ordering() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto classes = table_classes();
  int breaks = 0;
  for (auto measure : {TableMeasure::Coherence, TableMeasure::Entanglement, TableMeasure::Magic})
    for (double n : {16.0, 64.0, 256.0, 1024.0})
      for (std::size_t i = 0; i + 1 < classes.size(); ++i)
        breaks += table_lower_bound(classes[i], measure, n) > table_lower_bound(classes[i + 1], measure, n);
  const double dt = seconds_since(t0);
  return {breaks == 0 && dt < 1, fmt("%d order breaks over %zu classes, %.4f s", breaks, classes.size(), dt)};
}

Outcome growth_algebra() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  for (const auto& T : {GrowthClass::log(), GrowthClass::linear(), GrowthClass::poly()}) {
    ok = ok && check_closure(T, GrowthClass::constant()).holds;
    ok = ok && check_repetition_consistency(T, GrowthClass::constant()).holds;
  }
  ok = ok && check_closure(GrowthClass::poly(), GrowthClass::poly()).holds;
  ok = ok && check_closure(GrowthClass::parse("polyf:log"), GrowthClass::polylog()).holds;
  ok = ok && check_repetition_consistency(GrowthClass::poly(), GrowthClass::poly()).holds;
  ok = ok && check_repetition_consistency(GrowthClass::parse("polyf:log"), GrowthClass::polylog()).holds;
  const bool rejects = !check_repetition_consistency(GrowthClass::linear(), GrowthClass::linear()).holds;
  const double dt = seconds_since(t0);
  return {ok && rejects && dt < 1, fmt("constant and poly-repeat rules hold=%d, linear/linear rejected=%d, %.4f s",
                                       int(ok), int(rejects), dt)};
}

Outcome reproducibility() {
  int mismatches = 0;
  std::string checked;
  for (const char* command : {"gap", "hybrid", "prop", "sweep", "distance"}) {
    ExperimentConfig c;
    c.command = command;
    c.samples = 2000;
    c.ns = {8, 9};
    c.m = {2, 4, 6};
    c.measure = std::string(command) == "sweep" ? "entanglement" : "coherence";
    const std::string one = to_csv(run_experiment(c));
    const std::string again = to_csv(run_experiment(c));
    c.threads = 4;
    const std::string four = to_csv(run_experiment(c));
    c.threads = 3;
    const std::string three = to_csv(run_experiment(c));
    mismatches += (one != again) + (one != four) + (one != three);
    checked += (checked.empty() ? "" : ",") + std::string(command);
  }
  return {mismatches == 0, fmt("%d mismatches across reruns and threads 1/3/4 for %s", mismatches, checked.c_str())};
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {"haar two-copy moment", haar_moment_oracle},
      {"subset-phase distance trend", subset_phase_trend},
      {"subset distance trend", subset_trend},
      {"haar coherence", haar_coherence},
      {"haar collision entanglement", haar_collision_entanglement},
      {"coherence relation on mixed states", coherence_relation_mixed},
      {"hadamard test identity", hadamard_identity},
      {"magic point values", magic_point_values},
      {"haar magic linear band", haar_magic_band},
      {"lower-bound pipeline", prop_pipeline},
      {"table ordering", table_ordering},
      {"growth algebra", growth_algebra},
      {"reproducibility", reproducibility},
  };
  return all;
}

bool run_one(std::size_t k) {
  const auto& c = criteria()[k];
  Outcome o;
  try {
    o = c.run();
  } catch (const std::exception& e) {
    o = {false, std::string("error: ") + e.what()};
  }
  std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", k + 1, c.name, o.detail.c_str());
  std::fflush(stdout);
  return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t count = criteria().size();
  if (argc == 3 && std::string(argv[1]) == "--only") {
    const long k = std::strtol(argv[2], nullptr, 10);
    if (k < 1 || static_cast<std::size_t>(k) > count) {
      std::fprintf(stderr, "--only expects 1..%zu\n", count);
      return 2;
    }
    return run_one(static_cast<std::size_t>(k - 1)) ? 0 : 1;
  }
  if (argc != 1) {
    std::fprintf(stderr, "usage: %s [--only N]\n", argv[0]);
    return 2;
  }
  int failed = 0;
  for (std::size_t k = 0; k < count; ++k) failed += !run_one(k);
  return failed == 0 ? 0 : 1;
}

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

// Concrete distinguishers (SWAP, subsystem SWAP, coherence projector,
// Hadamard/Pauli test), their declared costs, and Monte-Carlo advantage
// estimation between ensembles. Acceptance is analytic: each distinguisher
// is a linear functional on t-copy operators, with a fast path for pure
// product inputs.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "tprs/ensembles.hpp"
#include "tprs/errors.hpp"
#include "tprs/growth.hpp"
#include "tprs/linalg.hpp"
#include "tprs/montecarlo.hpp"
#include "tprs/resources.hpp"

namespace tprs {

// ---------------------------------------------------------------------------
// Single-state acceptance probabilities

/// (1 + Tr rho^2) / 2.
inline double swap_test_prob(const DensityOperator& rho) { return 0.5 * (1.0 + purity(rho)); }

/// sum_x <x|rho|x>^2 = Tr(rho^{(x)2} Pi_c2).
inline double coherence_projector_prob(const DensityOperator& rho) {
  const auto p = diagonal_probabilities(rho);
  return diagonal_purity(p);
}

/// (1 + 2^{-n} sum_P Tr(P rho)^{2 alpha}) / 2, through Pauli expectations.
inline double hadamard_test_prob(const DensityOperator& rho, int alpha, const Limits& limits = default_limits()) {
  require(alpha >= 2, ErrorKind::InvalidArgument, "Hadamard test needs alpha >= 2");
  const auto e = pauli_expectations(rho, limits);
  return 0.5 * (1.0 + pauli_moment(e, rho.qubits(), alpha));
}

inline double hadamard_test_prob(const PureState& psi, int alpha, const Limits& limits = default_limits()) {
  require(alpha >= 2, ErrorKind::InvalidArgument, "Hadamard test needs alpha >= 2");
  const auto e = pauli_expectations(psi, limits);
  return 0.5 * (1.0 + pauli_moment(e, psi.qubits(), alpha));
}

namespace detail {
inline Matrix single_pauli(int which) {
  Matrix p = Matrix::Zero(2, 2);
  switch (which) {
    case 0: p << 1, 0, 0, 1; break;
    case 1: p << 0, 1, 1, 0; break;
    case 2: p << 0, Complex(0, -1), Complex(0, 1), 0; break;
    default: p << 1, 0, 0, -1; break;
  }
  return p;
}

/// Pauli string with factor codes (0=I, 1=X, 2=Y, 3=Z) read from `code` in
/// base 4, qubit 1 most significant.
inline Matrix pauli_string(int qubits, std::uint64_t code) {
  Matrix out = Matrix::Identity(1, 1);
  for (int q = qubits - 1; q >= 0; --q) out = kron(out, single_pauli(static_cast<int>((code >> (2 * q)) & 3U)));
  return out;
}
}  // namespace detail

/// 2^{-n} sum_P P^{(x)2 alpha} as a dense operator on 2 alpha copies.
inline Matrix pauli_projector(int qubits, int alpha, const Limits& limits = default_limits()) {
  require(alpha >= 2, ErrorKind::InvalidArgument, "alpha must be at least 2");
  require_dim(2 * alpha * qubits, limits, "pauli_projector");
  const auto total = static_cast<Eigen::Index>(dim_of(2 * alpha * qubits));
  Matrix out = Matrix::Zero(total, total);
  for (std::uint64_t code = 0; code < dim_of(2 * qubits); ++code) {
    const Matrix p = detail::pauli_string(qubits, code);
    Matrix power = p;
    for (int k = 1; k < 2 * alpha; ++k) power = kron(power, p);
    out += power;
  }
  return out / static_cast<double>(dim_of(qubits));
}

/// Projector route for the Hadamard test: (1 + Tr(Pi rho^{(x)2 alpha})) / 2.
inline double hadamard_test_prob_projector(const DensityOperator& rho, int alpha,
                                           const Limits& limits = default_limits()) {
  const Matrix pi = pauli_projector(rho.qubits(), alpha, limits);
  const DensityOperator copies = tensor_power(rho, 2 * alpha, limits);
  return 0.5 * (1.0 + (pi * copies.matrix()).trace().real());
}

// ---------------------------------------------------------------------------
// Linear functionals on two-copy operators

namespace detail {
/// Tr(SWAP_A M) for M on two copies of (A, B), SWAP_A exchanging the A parts.
inline double swap_trace(const Matrix& m, int n_a, int n_b) {
  const std::uint64_t da = dim_of(n_a);
  const std::uint64_t db = dim_of(n_b);
  const std::uint64_t d = da * db;
  double s = 0.0;
  for (std::uint64_t j = 0; j < d * d; ++j) {
    const std::uint64_t c1 = j / d;
    const std::uint64_t c2 = j % d;
    const std::uint64_t a1 = c1 / db, b1 = c1 % db, a2 = c2 / db, b2 = c2 % db;
    const std::uint64_t sj = (a2 * db + b1) * d + (a1 * db + b2);
    s += m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(sj)).real();
  }
  return s;
}

inline void check_copy_operator(const Matrix& m, int qubits, int copies) {
  require(static_cast<std::uint64_t>(m.rows()) == dim_of(qubits * copies) && m.rows() == m.cols(),
          ErrorKind::CopyMismatch,
          "expected an operator on " + std::to_string(copies) + " copies of " + std::to_string(qubits) + " qubits");
}
}  // namespace detail

// ---------------------------------------------------------------------------
// Descriptors and registry

struct DistinguisherDescriptor {
  std::string name;
  int copies_required = 2;
  /// Abstract gate count for n qubits per copy and t copies.
  std::function<double(int n, int t)> declared_cost;
  /// Acceptance probability on a t-copy operator (linear in the operator).
  std::function<double(const Matrix& copies_op, int n)> accept_prob;
  /// Same value for the t-copy input |psi><psi|^{(x)t}, without building it.
  std::function<double(const PureState& psi)> accept_pure;
};

inline DistinguisherDescriptor swap_distinguisher() {
  DistinguisherDescriptor d;
  d.name = "swap";
  d.copies_required = 2;
  d.declared_cost = [](int n, int t) { return 3.0 * n * (t - 1) + 2.0; };
  d.accept_prob = [](const Matrix& m, int n) {
    detail::check_copy_operator(m, n, 2);
    return 0.5 * (m.trace().real() + detail::swap_trace(m, n, 0));
  };
  d.accept_pure = [](const PureState& psi) { return swap_test_prob(DensityOperator::from_pure(psi)); };
  return d;
}

/// SWAP test on subsystem A only: (1 + Tr rho_A^2) / 2. The partition is
/// balanced (n_A = floor(n/2)) unless given.
inline DistinguisherDescriptor swap_subsystem_distinguisher(std::optional<PartitionSpec> part = std::nullopt) {
  DistinguisherDescriptor d;
  d.name = "swap-a";
  d.copies_required = 2;
  d.declared_cost = [part](int n, int t) {
    const int n_a = part ? part->n_a : n / 2;
    return 3.0 * std::max(n_a, 1) * (t - 1) + 2.0;
  };
  d.accept_prob = [part](const Matrix& m, int n) {
    detail::check_copy_operator(m, n, 2);
    const PartitionSpec p = part.value_or(PartitionSpec::balanced(n));
    p.check(n);
    return 0.5 * (m.trace().real() + detail::swap_trace(m, p.n_a, p.n_b));
  };
  d.accept_pure = [part](const PureState& psi) {
    const PartitionSpec p = part.value_or(PartitionSpec::balanced(psi.qubits()));
    return 0.5 * (1.0 + purity(reduced_state(psi, p, Keep::A)));
  };
  return d;
}

inline DistinguisherDescriptor coherence_distinguisher() {
  DistinguisherDescriptor d;
  d.name = "coherence";
  d.copies_required = 2;
  d.declared_cost = [](int n, int t) { return static_cast<double>(n) * t; };
  d.accept_prob = [](const Matrix& m, int n) {
    detail::check_copy_operator(m, n, 2);
    const std::uint64_t dim = dim_of(n);
    double s = 0.0;
    for (std::uint64_t x = 0; x < dim; ++x) {
      const auto i = static_cast<Eigen::Index>(x * dim + x);
      s += m(i, i).real();
    }
    return s;
  };
  d.accept_pure = [](const PureState& psi) {
    const auto p = diagonal_probabilities(psi);
    return diagonal_purity(p);
  };
  return d;
}

inline DistinguisherDescriptor hadamard_distinguisher(int alpha = 3, const Limits& limits = default_limits()) {
  require(alpha >= 2, ErrorKind::InvalidArgument, "alpha must be at least 2");
  DistinguisherDescriptor d;
  d.name = "hadamard";
  d.copies_required = 2 * alpha;
  d.declared_cost = [](int n, int t) { return 2.0 * n * t + 2.0; };
  d.accept_prob = [alpha, limits](const Matrix& m, int n) {
    detail::check_copy_operator(m, n, 2 * alpha);
    const Matrix pi = pauli_projector(n, alpha, limits);
    return 0.5 * (m.trace().real() + (pi * m).trace().real());
  };
  d.accept_pure = [alpha, limits](const PureState& psi) { return hadamard_test_prob(psi, alpha, limits); };
  return d;
}

inline std::vector<std::string> distinguisher_names() { return {"swap", "swap-a", "coherence", "hadamard"}; }

inline DistinguisherDescriptor find_distinguisher(const std::string& name, int alpha = 3,
                                                  const Limits& limits = default_limits()) {
  if (name == "swap") return swap_distinguisher();
  if (name == "swap-a") return swap_subsystem_distinguisher();
  if (name == "coherence") return coherence_distinguisher();
  if (name == "hadamard") return hadamard_distinguisher(alpha, limits);
  fail(ErrorKind::InvalidArgument, "unknown distinguisher '" + name + "'");
}

// ---------------------------------------------------------------------------
// Advantage estimation

struct AdvantageReport {
  std::string distinguisher;
  Estimate accept1;
  Estimate accept2;
  double adv = 0.0;
  double std_error = 0.0;
  double cost = 0.0;
  double budget = 0.0;     // c * T(n)
  bool budget_ok = false;  // cost <= budget
  double threshold = 0.0;  // 1 / T(n)
};

inline constexpr double kDefaultBudgetConstant = 10.0;

/// |E_1[accept] - E_2[accept]| with standard error sqrt(se1^2 + se2^2).
inline AdvantageReport estimate_advantage(const DistinguisherDescriptor& d, const EnsembleSpec& e1,
                                          const EnsembleSpec& e2, std::size_t samples, const GrowthClass& T,
                                          int threads = 1, double budget_constant = kDefaultBudgetConstant,
                                          const Limits& limits = default_limits()) {
  require(e1.n == e2.n, ErrorKind::DimensionMismatch, "ensembles must have the same qubit count");
  require(e1.t == d.copies_required && e2.t == d.copies_required, ErrorKind::CopyMismatch,
          d.name + " needs t = " + std::to_string(d.copies_required) + ", got " + std::to_string(e1.t) + " and " +
              std::to_string(e2.t));
  e1.validate(limits);
  e2.validate(limits);
  require(samples >= 2, ErrorKind::InvalidArgument, "need at least two samples");
  const auto est = mc_estimate(samples, 2, threads, [&](std::size_t i) {
    return std::vector<double>{d.accept_pure(sample_state(e1, i, limits)), d.accept_pure(sample_state(e2, i, limits))};
  });
  AdvantageReport r;
  r.distinguisher = d.name;
  r.accept1 = est[0];
  r.accept2 = est[1];
  r.adv = std::abs(est[0].mean - est[1].mean);
  r.std_error = std::hypot(est[0].std_error, est[1].std_error);
  r.cost = d.declared_cost(e1.n, e1.t);
  const double n = std::max(2, e1.n);
  r.budget = budget_constant * T.value(n);
  r.budget_ok = r.cost <= r.budget;
  r.threshold = 1.0 / T.value(n);
  return r;
}

struct HybridReport {
  std::string distinguisher;
  AdvantageReport keyed_vs_random;  // hybrid 0 vs 1
  AdvantageReport random_vs_haar;   // hybrid 1 vs 2
  AdvantageReport keyed_vs_haar;    // hybrid 0 vs 2
  double bound = 0.0;               // c t^2 / m, the statistical bound on hybrid 1 vs 2
  bool triangle_ok = false;
  bool within_bound = false;
};

/// Keyed subset-phase, truly random subset-phase and Haar ensembles compared
/// pairwise under every registered two-copy distinguisher matching t.
inline std::vector<HybridReport> hybrid_experiment(int n, std::uint64_t m, int t, RngSeed seed, std::size_t samples,
                                                   const GrowthClass& T, int threads = 1,
                                                   double bound_constant = 1.0,
                                                   double budget_constant = kDefaultBudgetConstant,
                                                   const Limits& limits = default_limits()) {
  const EnsembleSpec keyed{EnsembleKind::SubsetPhaseKeyed, n, m, t, derive_seed(seed, 10, 0)};
  const EnsembleSpec random{EnsembleKind::SubsetPhaseTrueRandom, n, m, t, derive_seed(seed, 11, 0)};
  const EnsembleSpec haar{EnsembleKind::Haar, n, 0, t, derive_seed(seed, 12, 0)};
  keyed.validate(limits);
  std::vector<HybridReport> out;
  for (const auto& name : distinguisher_names()) {
    const DistinguisherDescriptor d = find_distinguisher(name, 3, limits);
    if (d.copies_required != t) continue;
    HybridReport h;
    h.distinguisher = name;
    h.keyed_vs_random = estimate_advantage(d, keyed, random, samples, T, threads, budget_constant, limits);
    h.random_vs_haar = estimate_advantage(d, random, haar, samples, T, threads, budget_constant, limits);
    h.keyed_vs_haar = estimate_advantage(d, keyed, haar, samples, T, threads, budget_constant, limits);
    const double se = std::max({h.keyed_vs_random.std_error, h.random_vs_haar.std_error, h.keyed_vs_haar.std_error});
    h.triangle_ok = h.keyed_vs_haar.adv <= h.keyed_vs_random.adv + h.random_vs_haar.adv + 9.0 * se;
    h.bound = bound_constant * t * t / static_cast<double>(m);
    const double allowance = std::max(h.bound, 3.0 * se);
    h.within_bound = h.keyed_vs_random.adv <= allowance && h.random_vs_haar.adv <= allowance &&
                     h.keyed_vs_haar.adv <= allowance;
    out.push_back(std::move(h));
  }
  return out;
}

}  // namespace tprs

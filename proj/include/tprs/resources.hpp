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

// Coherence, entanglement and magic measures, their Haar expectations and
// Monte-Carlo resource gaps between ensembles. All values are in bits
// unless a measure asks for natural units.

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tprs/ensembles.hpp"
#include "tprs/errors.hpp"
#include "tprs/limits.hpp"
#include "tprs/linalg.hpp"
#include "tprs/montecarlo.hpp"

namespace tprs {

// ---------------------------------------------------------------------------
// Coherence

inline std::vector<double> diagonal_probabilities(const DensityOperator& rho) {
  std::vector<double> p(static_cast<std::size_t>(rho.dim()));
  for (Eigen::Index i = 0; i < rho.dim(); ++i) p[static_cast<std::size_t>(i)] = rho.matrix()(i, i).real();
  return p;
}

inline std::vector<double> diagonal_probabilities(const PureState& psi) {
  std::vector<double> p(static_cast<std::size_t>(psi.dim()));
  for (Eigen::Index i = 0; i < psi.dim(); ++i) p[static_cast<std::size_t>(i)] = std::norm(psi[i]);
  return p;
}

/// H(diag rho) - H(rho).
inline double coherence_relative_entropy(const DensityOperator& rho) {
  const auto p = diagonal_probabilities(rho);
  return shannon_entropy(p) - von_neumann_entropy(rho);
}

inline double coherence_relative_entropy(const PureState& psi) {
  const auto p = diagonal_probabilities(psi);
  return shannon_entropy(p);
}

/// sum_x <x|rho|x>^2, the acceptance probability of the two-copy coherence
/// projector.
inline double diagonal_purity(std::span<const double> p) {
  double s = 0.0;
  for (double v : p) s += v * v;
  return s;
}

/// 1 - sum_x <x|rho|x>^2.
inline double coherence_hs_distance(const DensityOperator& rho) {
  const auto p = diagonal_probabilities(rho);
  return 1.0 - diagonal_purity(p);
}

inline double coherence_hs_distance(const PureState& psi) {
  const auto p = diagonal_probabilities(psi);
  return 1.0 - diagonal_purity(p);
}

// ---------------------------------------------------------------------------
// Entanglement

inline double entanglement_entropy(const PureState& psi, const PartitionSpec& part) {
  return von_neumann_entropy(reduced_state(psi, part, Keep::A));
}

/// Collision entropy of the reduced state on A.
inline double collision_entanglement(const PureState& psi, const PartitionSpec& part) {
  return collision_entropy(reduced_state(psi, part, Keep::A));
}

// ---------------------------------------------------------------------------
// Pauli expectations and stabilizer Renyi entropy

namespace detail {
/// In-place Walsh-Hadamard transform: a_z <- sum_j (-1)^{z.j} a_j.
inline void walsh_hadamard(std::vector<Complex>& a) {
  for (std::size_t h = 1; h < a.size(); h <<= 1)
    for (std::size_t i = 0; i < a.size(); i += h << 1)
      for (std::size_t j = i; j < i + h; ++j) {
        const Complex u = a[j];
        const Complex v = a[j + h];
        a[j] = u + v;
        a[j + h] = u - v;
      }
}

inline Complex i_power(int k) {
  switch (k & 3) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

/// Tr(P_{x,z} rho) for every Pauli P_{x,z} = i^{|x&z|} X^x Z^z, indexed
/// x * 2^n + z, given a callback entry(j, k) = rho_{j,k}.
template <class Entry>
std::vector<double> pauli_expectations_impl(int qubits, Entry&& entry) {
  const std::size_t d = dim_of(qubits);
  std::vector<double> out(d * d);
  std::vector<Complex> a(d);
  for (std::size_t x = 0; x < d; ++x) {
    for (std::size_t j = 0; j < d; ++j) a[j] = entry(j, j ^ x);
    walsh_hadamard(a);
    for (std::size_t z = 0; z < d; ++z)
      out[x * d + z] = (i_power(std::popcount(x & z)) * a[z]).real();
  }
  return out;
}

inline void check_pauli_size(int qubits, const Limits& limits) {
  require(qubits <= limits.max_pauli_qubits, ErrorKind::DimensionCapExceeded,
          "Pauli enumeration over 4^" + std::to_string(qubits) + " operators exceeds the cap of " +
              std::to_string(limits.max_pauli_qubits) + " qubits");
}
}  // namespace detail

/// Tr(P rho) for all 4^n Paulis, indexed x * 2^n + z.
inline std::vector<double> pauli_expectations(const DensityOperator& rho, const Limits& limits = default_limits()) {
  detail::check_pauli_size(rho.qubits(), limits);
  const Matrix& m = rho.matrix();
  return detail::pauli_expectations_impl(rho.qubits(), [&](std::size_t j, std::size_t k) {
    return m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
  });
}

inline std::vector<double> pauli_expectations(const PureState& psi, const Limits& limits = default_limits()) {
  detail::check_pauli_size(psi.qubits(), limits);
  const Vector& v = psi.amplitudes();
  return detail::pauli_expectations_impl(psi.qubits(), [&](std::size_t j, std::size_t k) {
    return v(static_cast<Eigen::Index>(j)) * std::conj(v(static_cast<Eigen::Index>(k)));
  });
}

/// 2^{-n} sum_P Tr(P rho)^{2 alpha}.
inline double pauli_moment(std::span<const double> expectations, int qubits, int alpha) {
  double s = 0.0;
  for (double e : expectations) s += std::pow(e * e, alpha);
  return s / static_cast<double>(dim_of(qubits));
}

/// M_alpha = log2(2^{-n} sum_P Tr(P rho)^{2 alpha}) / (1 - alpha). Defined
/// for pure states; mixed inputs are accepted and give the same formula.
inline double stabilizer_renyi_entropy(const DensityOperator& rho, int alpha, const Limits& limits = default_limits()) {
  require(alpha >= 2, ErrorKind::InvalidArgument, "stabilizer Renyi entropy needs alpha >= 2");
  const auto e = pauli_expectations(rho, limits);
  return std::log2(pauli_moment(e, rho.qubits(), alpha)) / (1.0 - alpha);
}

inline double stabilizer_renyi_entropy(const PureState& psi, int alpha, const Limits& limits = default_limits()) {
  require(alpha >= 2, ErrorKind::InvalidArgument, "stabilizer Renyi entropy needs alpha >= 2");
  const auto e = pauli_expectations(psi, limits);
  return std::log2(pauli_moment(e, psi.qubits(), alpha)) / (1.0 - alpha);
}

// ---------------------------------------------------------------------------
// Measures as values

enum class MeasureKind { CoherenceRE, CoherenceHS, Entanglement, CollisionEntanglement, StabilizerRenyi };

struct ResourceMeasure {
  MeasureKind kind = MeasureKind::CoherenceRE;
  std::optional<PartitionSpec> partition;  // entanglement kinds; balanced when unset
  int alpha = 2;                            // stabilizer Renyi only
  bool natural_units = false;               // report coherence-RE in nats

  std::string name() const {
    switch (kind) {
      case MeasureKind::CoherenceRE: return "coherence-re";
      case MeasureKind::CoherenceHS: return "coherence-hs";
      case MeasureKind::Entanglement: return "entanglement";
      case MeasureKind::CollisionEntanglement: return "collision-entanglement";
      case MeasureKind::StabilizerRenyi: return "magic";
    }
    return "?";
  }

  PartitionSpec partition_for(int qubits) const {
    const PartitionSpec p = partition.value_or(PartitionSpec::balanced(qubits));
    p.check(qubits);
    return p;
  }

  /// Accepts "coherence" or "coherence-re", "coherence-hs", "entanglement",
  /// "collision-entanglement" and "magic" or "stabilizer-renyi".
  static ResourceMeasure parse(const std::string& s, int alpha = 2) {
    ResourceMeasure m;
    m.alpha = alpha;
    if (s == "coherence" || s == "coherence-re") m.kind = MeasureKind::CoherenceRE;
    else if (s == "coherence-hs") m.kind = MeasureKind::CoherenceHS;
    else if (s == "entanglement" || s == "entanglement-entropy") m.kind = MeasureKind::Entanglement;
    else if (s == "collision-entanglement") m.kind = MeasureKind::CollisionEntanglement;
    else if (s == "magic" || s == "stabilizer-renyi") m.kind = MeasureKind::StabilizerRenyi;
    else fail(ErrorKind::InvalidArgument, "unknown resource measure '" + s + "'");
    return m;
  }

  double operator()(const PureState& psi, const Limits& limits = default_limits()) const {
    switch (kind) {
      case MeasureKind::CoherenceRE: {
        const double c = coherence_relative_entropy(psi);
        return natural_units ? c * std::numbers::ln2 : c;
      }
      case MeasureKind::CoherenceHS: return coherence_hs_distance(psi);
      case MeasureKind::Entanglement: return entanglement_entropy(psi, partition_for(psi.qubits()));
      case MeasureKind::CollisionEntanglement: return collision_entanglement(psi, partition_for(psi.qubits()));
      case MeasureKind::StabilizerRenyi: return stabilizer_renyi_entropy(psi, alpha, limits);
    }
    return 0.0;
  }
};

struct AnalyticValue {
  double value = 0.0;
  double lower = 0.0;  // band for asymptotic forms; equals value when exact
  double upper = 0.0;
  std::string unit;
};

/// Closed-form Haar expectation. Exact for coherence-HS and collision
/// entanglement; the harmonic sum for coherence-RE is returned as-is (its
/// natural-log form); entanglement and magic are leading forms with bands.
inline AnalyticValue haar_expected(const ResourceMeasure& measure, int n) {
  require(n >= 1 && n <= 62, ErrorKind::InvalidArgument, "qubit count out of range");
  const double d = std::exp2(n);
  AnalyticValue a;
  switch (measure.kind) {
    case MeasureKind::CoherenceRE: {
      require(n <= 30, ErrorKind::NoAnalyticForm, "harmonic sum only evaluated for n <= 30");
      double s = 0.0;
      for (std::uint64_t k = dim_of(n); k >= 2; --k) s += 1.0 / static_cast<double>(k);
      a = {s, s, s, "nats"};
      break;
    }
    case MeasureKind::CoherenceHS: {
      const double v = 1.0 - 2.0 / (d + 1.0);
      a = {v, v, v, "bits"};
      break;
    }
    case MeasureKind::CollisionEntanglement: {
      const PartitionSpec p = measure.partition_for(n);
      const double v = -std::log2((std::exp2(p.n_a) + std::exp2(p.n_b)) / (d + 1.0));
      a = {v, v, v, "bits"};
      break;
    }
    case MeasureKind::Entanglement: {
      const PartitionSpec p = measure.partition_for(n);
      const double v = std::min(p.n_a, p.n_b);
      a = {v, v - 1.0, v, "bits"};
      break;
    }
    case MeasureKind::StabilizerRenyi: {
      const double v = measure.alpha == 2 ? n - 2.0 : n / (measure.alpha - 1.0);
      const double band = 1.0 / d;
      a = {v, v - band, v + band, "bits"};
      break;
    }
  }
  return a;
}

struct GapReport {
  Estimate e_high;
  Estimate e_low;
  double delta = 0.0;
  double delta_std_error = 0.0;
};

/// Monte-Carlo expectations of `measure` over two ensembles. Sample i of
/// both ensembles is drawn in the same task, so both sides share one
/// deterministic index stream.
inline GapReport estimate_gap(const ResourceMeasure& measure, const EnsembleSpec& e1, const EnsembleSpec& e2,
                              std::size_t samples, int threads = 1, const Limits& limits = default_limits()) {
  require(e1.n == e2.n, ErrorKind::DimensionMismatch, "ensembles must have the same qubit count");
  e1.validate(limits);
  e2.validate(limits);
  require(samples >= 2, ErrorKind::InvalidArgument, "need at least two samples");
  const auto est = mc_estimate(samples, 2, threads, [&](std::size_t i) {
    return std::vector<double>{measure(sample_state(e1, i, limits), limits),
                               measure(sample_state(e2, i, limits), limits)};
  });
  GapReport g;
  g.e_high = est[0];
  g.e_low = est[1];
  g.delta = std::abs(g.e_high.mean - g.e_low.mean);
  g.delta_std_error = std::hypot(g.e_high.std_error, g.e_low.std_error);
  return g;
}

/// Monte-Carlo expectation of a measure over one ensemble.
inline Estimate expected_resource(const ResourceMeasure& measure, const EnsembleSpec& e, std::size_t samples,
                                  int threads = 1, const Limits& limits = default_limits()) {
  e.validate(limits);
  require(samples >= 2, ErrorKind::InvalidArgument, "need at least two samples");
  return mc_mean(samples, threads, [&](std::size_t i) { return measure(sample_state(e, i, limits), limits); });
}

}  // namespace tprs

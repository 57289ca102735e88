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

// Subset and subset-phase state ensembles, their exact and Monte-Carlo
// t-copy moment operators, and parameter advice per growth class.

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tprs/errors.hpp"
#include "tprs/growth.hpp"
#include "tprs/limits.hpp"
#include "tprs/linalg.hpp"
#include "tprs/montecarlo.hpp"
#include "tprs/random.hpp"

namespace tprs {

/// A nonempty set of distinct n-bit strings, kept sorted.
class SubsetSpec {
 public:
  SubsetSpec(int qubits, std::vector<std::uint64_t> members) : n_(qubits), members_(std::move(members)) {
    require(qubits >= 1 && qubits <= 62, ErrorKind::InvalidArgument, "qubit count must be in 1..62");
    require(!members_.empty(), ErrorKind::EmptySubset, "subset must have at least one member");
    std::sort(members_.begin(), members_.end());
    for (std::size_t i = 0; i < members_.size(); ++i) {
      require(members_[i] < dim_of(n_), ErrorKind::DomainOverflow,
              "member " + std::to_string(members_[i]) + " is not a " + std::to_string(n_) + "-bit string");
      require(i == 0 || members_[i] != members_[i - 1], ErrorKind::InvalidArgument,
              "duplicate subset member " + std::to_string(members_[i]));
    }
  }

  int qubits() const { return n_; }
  std::size_t size() const { return members_.size(); }
  const std::vector<std::uint64_t>& members() const { return members_; }

 private:
  int n_;
  std::vector<std::uint64_t> members_;
};

/// (1/sqrt|S|) sum_{x in S} (-1)^{f(x)} |x>.
inline PureState build_subset_phase_state(const SubsetSpec& spec, const PhaseFunction& f,
                                          const Limits& limits = default_limits()) {
  require_dim(spec.qubits(), limits, "build_subset_phase_state");
  require(f.bits() == spec.qubits(), ErrorKind::InvalidArgument, "phase function width must equal n");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim_of(spec.qubits())));
  const double amp = 1.0 / std::sqrt(static_cast<double>(spec.size()));
  for (auto x : spec.members()) v(static_cast<Eigen::Index>(x)) = f(x) ? -amp : amp;
  return PureState::normalized(spec.qubits(), std::move(v));
}

inline PureState build_subset_state(const SubsetSpec& spec, const Limits& limits = default_limits()) {
  return build_subset_phase_state(spec, PhaseFunction::zero(spec.qubits()), limits);
}

/// Subset-phase state over the image of `base` under a string permutation.
template <class Permutation>
PureState build_permuted_state(int qubits, const std::vector<std::uint64_t>& base, const Permutation& sigma,
                               const PhaseFunction& f, const Limits& limits = default_limits()) {
  require_dim(qubits, limits, "build_permuted_state");
  std::vector<std::uint64_t> image;
  image.reserve(base.size());
  for (auto x : base) image.push_back(sigma(x));
  return build_subset_phase_state(SubsetSpec(qubits, std::move(image)), f, limits);
}

/// Strings x 0^{n - m_exp} for x in {0,1}^{m_exp}.
inline std::vector<std::uint64_t> padded_prefix_strings(int qubits, int m_exp) {
  require(m_exp >= 0 && m_exp <= qubits, ErrorKind::BadSubsetExponent,
          "subset exponent " + std::to_string(m_exp) + " must lie in 0..n");
  std::vector<std::uint64_t> base(dim_of(m_exp));
  for (std::uint64_t x = 0; x < base.size(); ++x) base[x] = x << (qubits - m_exp);
  return base;
}

/// (1/sqrt(2^m_exp)) sum_x (-1)^{f(sigma(x0..0))} |sigma(x0..0)>, with sigma
/// acting on whole n-bit strings.
template <class Permutation>
PureState build_permuted_subset_phase_state(int qubits, int m_exp, const Permutation& sigma, const PhaseFunction& f,
                                            const Limits& limits = default_limits()) {
  return build_permuted_state(qubits, padded_prefix_strings(qubits, m_exp), sigma, f, limits);
}

// ---------------------------------------------------------------------------
// Exact moments

inline DensityOperator haar_moment(int qubits, int copies, const Limits& limits = default_limits()) {
  Matrix p = symmetric_projector(qubits, copies, limits);
  const double norm = binomial(static_cast<double>(dim_of(qubits)) + copies - 1, copies);
  return DensityOperator::trusted(qubits * copies, p / norm);
}

namespace detail {
/// Calls visit(subset) for every size-m subset of {0..N-1} in
/// lexicographic order.
template <class Visit>
void for_each_combination(std::uint64_t universe, std::size_t m, Visit&& visit) {
  std::vector<std::uint64_t> idx(m);
  for (std::size_t i = 0; i < m; ++i) idx[i] = i;
  for (;;) {
    visit(static_cast<const std::vector<std::uint64_t>&>(idx));
    std::size_t i = m;
    while (i > 0 && idx[i - 1] == universe - m + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < m; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Adds weight * |v><v| over the support of v only.
inline void add_sparse_outer(Matrix& acc, const Vector& v, double weight) {
  std::vector<Eigen::Index> support;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v(i) != Complex(0.0)) support.push_back(i);
  for (auto i : support) {
    const Complex vi = weight * v(i);
    for (auto j : support) acc(i, j) += vi * std::conj(v(j));
  }
}

inline void check_subset_size(int qubits, std::uint64_t m) {
  require(m >= 1, ErrorKind::EmptySubset, "subset size must be at least 1");
  require(m <= dim_of(qubits), ErrorKind::InvalidArgument,
          "subset size " + std::to_string(m) + " exceeds 2^" + std::to_string(qubits));
}
}  // namespace detail

/// Exact average of |S><S|^{(x)t} over all size-m subsets.
inline DensityOperator exact_subset_moment(int qubits, std::uint64_t m, int copies,
                                           const Limits& limits = default_limits()) {
  require(qubits >= 1, ErrorKind::InvalidArgument, "need at least one qubit");
  detail::check_subset_size(qubits, m);
  require_dim(qubits * copies, limits, "exact_subset_moment");
  const double count = binomial(static_cast<double>(dim_of(qubits)), static_cast<double>(m));
  require(count <= limits.enumeration_budget, ErrorKind::EnumerationBudgetExceeded,
          "C(2^" + std::to_string(qubits) + ", " + std::to_string(m) + ") subsets exceed the enumeration budget");
  const auto total = static_cast<Eigen::Index>(dim_of(qubits * copies));
  Matrix acc = Matrix::Zero(total, total);
  detail::for_each_combination(dim_of(qubits), m, [&](const std::vector<std::uint64_t>& s) {
    const PureState psi = build_subset_state(SubsetSpec(qubits, s), limits);
    detail::add_sparse_outer(acc, tensor_power(psi, copies, limits), 1.0 / count);
  });
  return DensityOperator::trusted(qubits * copies, std::move(acc));
}

/// Exact average over all size-m subsets and all 2^m sign patterns on them.
inline DensityOperator exact_subset_phase_moment(int qubits, std::uint64_t m, int copies,
                                                 const Limits& limits = default_limits()) {
  require(qubits >= 1, ErrorKind::InvalidArgument, "need at least one qubit");
  detail::check_subset_size(qubits, m);
  require_dim(qubits * copies, limits, "exact_subset_phase_moment");
  require(m < 63, ErrorKind::EnumerationBudgetExceeded, "too many sign patterns");
  const double count = binomial(static_cast<double>(dim_of(qubits)), static_cast<double>(m)) * std::exp2(m);
  require(count <= limits.enumeration_budget, ErrorKind::EnumerationBudgetExceeded,
          "subset-phase enumeration of " + std::to_string(count) + " terms exceeds the budget");
  const auto total = static_cast<Eigen::Index>(dim_of(qubits * copies));
  Matrix acc = Matrix::Zero(total, total);
  const double amp = 1.0 / std::sqrt(static_cast<double>(m));
  const auto d = static_cast<Eigen::Index>(dim_of(qubits));
  detail::for_each_combination(dim_of(qubits), m, [&](const std::vector<std::uint64_t>& s) {
    for (std::uint64_t signs = 0; signs < (std::uint64_t{1} << m); ++signs) {
      Vector v = Vector::Zero(d);
      for (std::size_t k = 0; k < m; ++k)
        v(static_cast<Eigen::Index>(s[k])) = ((signs >> k) & 1U) ? -amp : amp;
      Vector vt = v;
      for (int c = 1; c < copies; ++c) vt = kron(vt, v);
      detail::add_sparse_outer(acc, vt, 1.0 / count);
    }
  });
  return DensityOperator::trusted(qubits * copies, std::move(acc));
}

// ---------------------------------------------------------------------------
// Samplable ensembles

enum class EnsembleKind {
  SubsetPhaseKeyed,
  SubsetPhaseTrueRandom,
  SubsetKeyed,
  SubsetTrueRandom,
  Haar,
  Basis,       // uniformly random computational-basis state
  Stabilizer,  // random Clifford circuit applied to |0...0>
};

inline std::string to_string(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::SubsetPhaseKeyed: return "subset-phase-keyed";
    case EnsembleKind::SubsetPhaseTrueRandom: return "subset-phase-true-random";
    case EnsembleKind::SubsetKeyed: return "subset-keyed";
    case EnsembleKind::SubsetTrueRandom: return "subset-true-random";
    case EnsembleKind::Haar: return "haar";
    case EnsembleKind::Basis: return "basis";
    case EnsembleKind::Stabilizer: return "stabilizer";
  }
  return "?";
}

inline EnsembleKind parse_ensemble_kind(const std::string& s) {
  for (auto k : {EnsembleKind::SubsetPhaseKeyed, EnsembleKind::SubsetPhaseTrueRandom, EnsembleKind::SubsetKeyed,
                 EnsembleKind::SubsetTrueRandom, EnsembleKind::Haar, EnsembleKind::Basis, EnsembleKind::Stabilizer})
    if (to_string(k) == s) return k;
  fail(ErrorKind::InvalidArgument, "unknown ensemble kind '" + s + "'");
}

inline bool is_subset_kind(EnsembleKind k) {
  return k == EnsembleKind::SubsetPhaseKeyed || k == EnsembleKind::SubsetPhaseTrueRandom ||
         k == EnsembleKind::SubsetKeyed || k == EnsembleKind::SubsetTrueRandom;
}

inline bool is_phase_kind(EnsembleKind k) {
  return k == EnsembleKind::SubsetPhaseKeyed || k == EnsembleKind::SubsetPhaseTrueRandom;
}

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::Haar;
  int n = 2;
  std::uint64_t m = 0;  // subset size, subset kinds only
  int t = 1;
  RngSeed seed{};

  /// log2 m for the phase kinds.
  int m_exp() const { return std::countr_zero(m); }

  void validate(const Limits& limits = default_limits()) const {
    require(n >= 1 && n <= 30, ErrorKind::InvalidArgument, "qubit count must be in 1..30");
    require(t >= 1, ErrorKind::InvalidArgument, "copy count must be positive");
    require_dim(n, limits, to_string(kind) + " ensemble");
    if (is_subset_kind(kind)) {
      detail::check_subset_size(n, m);
      if (is_phase_kind(kind))
        require(std::has_single_bit(m), ErrorKind::BadSubsetExponent,
                "subset-phase ensembles need |S| a power of two, got " + std::to_string(m));
    }
  }
};

namespace detail {
inline void apply_hadamard(Vector& v, int qubits, int q) {
  const Eigen::Index bit = Eigen::Index{1} << (qubits - 1 - q);
  const double s = 1.0 / std::sqrt(2.0);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i & bit) continue;
    const Complex a = v(i);
    const Complex b = v(i | bit);
    v(i) = s * (a + b);
    v(i | bit) = s * (a - b);
  }
}

inline void apply_phase_s(Vector& v, int qubits, int q) {
  const Eigen::Index bit = Eigen::Index{1} << (qubits - 1 - q);
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (i & bit) v(i) *= Complex(0.0, 1.0);
}

inline void apply_cnot(Vector& v, int qubits, int control, int target) {
  const Eigen::Index cb = Eigen::Index{1} << (qubits - 1 - control);
  const Eigen::Index tb = Eigen::Index{1} << (qubits - 1 - target);
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if ((i & cb) && !(i & tb)) std::swap(v(i), v(i | tb));
}

inline PureState random_clifford_state(int qubits, Rng& rng) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim_of(qubits)));
  v(0) = 1.0;
  const int gates = 20 * qubits + 10;
  for (int g = 0; g < gates; ++g) {
    const auto choice = uniform_below(rng, qubits > 1 ? 3 : 2);
    const int q = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(qubits)));
    if (choice == 0) apply_hadamard(v, qubits, q);
    else if (choice == 1) apply_phase_s(v, qubits, q);
    else {
      int r = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(qubits - 1)));
      if (r >= q) ++r;
      apply_cnot(v, qubits, q, r);
    }
  }
  return PureState::normalized(qubits, std::move(v));
}
}  // namespace detail

/// Sample `index` of the ensemble; a pure function of (spec, index).
inline PureState sample_state(const EnsembleSpec& spec, std::uint64_t index, const Limits& limits = default_limits()) {
  const RngSeed s = derive_seed(spec.seed, 1, index);
  switch (spec.kind) {
    case EnsembleKind::Haar: return sample_haar_state(spec.n, s, limits);
    case EnsembleKind::Basis: {
      Rng rng = make_rng(s);
      return PureState::basis(spec.n, uniform_below(rng, dim_of(spec.n)));
    }
    case EnsembleKind::Stabilizer: {
      Rng rng = make_rng(s);
      return detail::random_clifford_state(spec.n, rng);
    }
    case EnsembleKind::SubsetPhaseKeyed: {
      const KeyedPermutation sigma(spec.n, random_key(derive_seed(s, 2, 0)));
      const PhaseFunction f = PhaseFunction::keyed(spec.n, random_key(derive_seed(s, 3, 0)));
      return build_permuted_subset_phase_state(spec.n, spec.m_exp(), sigma, f, limits);
    }
    case EnsembleKind::SubsetPhaseTrueRandom: {
      const PermutationTable sigma = sample_true_permutation(spec.n, derive_seed(s, 2, 0), limits);
      const PhaseFunction f = sample_true_phase_function(spec.n, derive_seed(s, 3, 0), limits);
      return build_permuted_subset_phase_state(spec.n, spec.m_exp(), sigma, f, limits);
    }
    case EnsembleKind::SubsetKeyed:
    case EnsembleKind::SubsetTrueRandom: {
      std::vector<std::uint64_t> base(spec.m);
      for (std::uint64_t x = 0; x < spec.m; ++x) base[x] = x;
      const PhaseFunction zero = PhaseFunction::zero(spec.n);
      if (spec.kind == EnsembleKind::SubsetKeyed)
        return build_permuted_state(spec.n, base, KeyedPermutation(spec.n, random_key(derive_seed(s, 2, 0))), zero,
                                    limits);
      return build_permuted_state(spec.n, base, sample_true_permutation(spec.n, derive_seed(s, 2, 0), limits), zero,
                                  limits);
    }
  }
  fail(ErrorKind::InvalidArgument, "unknown ensemble kind");
}

struct MomentEstimate {
  DensityOperator mean;
  double max_std_error = 0.0;  // largest entry-wise standard error (real or imaginary part)
  std::size_t samples = 0;
};

/// Blocks per reduction chunk; fixed so early stopping does not depend on
/// the thread count.
inline constexpr std::size_t kMomentChunkBlocks = 8;

/// Sample mean of |psi><psi|^{(x)t}. Stops at the first chunk boundary where
/// the entry-wise standard error reaches `std_error_target` (if positive).
inline MomentEstimate mc_ensemble_moment(const EnsembleSpec& spec, std::size_t samples, int threads = 1,
                                         double std_error_target = 0.0, const Limits& limits = default_limits()) {
  spec.validate(limits);
  require(samples >= 2, ErrorKind::InvalidArgument, "need at least two samples");
  require_dim(spec.n * spec.t, limits, "mc_ensemble_moment");
  const auto dim = static_cast<Eigen::Index>(dim_of(spec.n * spec.t));
  struct Partial {
    Matrix sum;
    Eigen::MatrixXd sq_re;
    Eigen::MatrixXd sq_im;
  };
  const auto zero_partial = [&] {
    return Partial{Matrix::Zero(dim, dim), Eigen::MatrixXd::Zero(dim, dim), Eigen::MatrixXd::Zero(dim, dim)};
  };
  Partial total = zero_partial();
  std::size_t done = 0;
  double max_se = 0.0;
  const std::size_t blocks = (samples + kMonteCarloBlock - 1) / kMonteCarloBlock;
  for (std::size_t chunk = 0; chunk < blocks; chunk += kMomentChunkBlocks) {
    const std::size_t chunk_blocks = std::min(kMomentChunkBlocks, blocks - chunk);
    std::vector<Partial> partial(chunk_blocks, zero_partial());
    parallel_blocks(chunk_blocks, threads, [&](std::size_t b) {
      const std::size_t begin = (chunk + b) * kMonteCarloBlock;
      const std::size_t end = std::min(samples, begin + kMonteCarloBlock);
      Partial& p = partial[b];
      for (std::size_t i = begin; i < end; ++i) {
        const Vector v = tensor_power(sample_state(spec, i, limits), spec.t, limits);
        const Matrix outer = v * v.adjoint();
        p.sum += outer;
        p.sq_re += outer.real().cwiseAbs2();
        p.sq_im += outer.imag().cwiseAbs2();
      }
    });
    for (const auto& p : partial) {
      total.sum += p.sum;
      total.sq_re += p.sq_re;
      total.sq_im += p.sq_im;
    }
    done = std::min(samples, (chunk + chunk_blocks) * kMonteCarloBlock);
    const double n = static_cast<double>(done);
    const Eigen::MatrixXd mean_re = total.sum.real() / n;
    const Eigen::MatrixXd mean_im = total.sum.imag() / n;
    const Eigen::MatrixXd var_re = ((total.sq_re / n - mean_re.cwiseAbs2()) * (n / (n - 1.0))).cwiseMax(0.0);
    const Eigen::MatrixXd var_im = ((total.sq_im / n - mean_im.cwiseAbs2()) * (n / (n - 1.0))).cwiseMax(0.0);
    max_se = std::sqrt(std::max(var_re.maxCoeff(), var_im.maxCoeff()) / n);
    if (std_error_target > 0.0 && max_se <= std_error_target) break;
  }
  Matrix mean = total.sum / static_cast<double>(done);
  mean = 0.5 * (mean + mean.adjoint()).eval();
  return MomentEstimate{DensityOperator::trusted(spec.n * spec.t, std::move(mean)), max_se, done};
}

// ---------------------------------------------------------------------------
// Parameter advice

struct SubsetAdvice {
  std::uint64_t m = 0;
  int m_exp = 0;
};

/// m = min(2^{n-1}, smallest power of two >= f(n) * ceil(log2 n)), with f
/// the base function of T: a super-constant multiple of f that stays o(2^n).
inline SubsetAdvice advise_subset_size(const GrowthClass& T, int n) {
  require(n >= 2 && n <= 62, ErrorKind::InvalidArgument, "advice needs 2 <= n <= 62");
  require(T.form() != GrowthForm::Exp, ErrorKind::UnsupportedGrowthClass,
          "no subset size inside o(2^n) for exponential observers");
  const double f = T.base_function().value(n);
  const double target = f * std::ceil(std::log2(static_cast<double>(n)));
  int m_exp = std::max(0, static_cast<int>(std::ceil(std::log2(target) - 1e-12)));
  m_exp = std::min(m_exp, n - 1);
  return {std::uint64_t{1} << m_exp, m_exp};
}

struct CopyAdvice {
  int rule_t = 2;         // value of the copy rule before clipping
  int t = 2;              // largest t <= rule_t with 2^{n t} within the cap
  bool clipped = false;
};

/// Two copies for plain classes; max(2, ceil f(n)) for polynomial families.
/// The result is clipped so 2^{n t} fits the dimension cap (t = 0 when not
/// even one copy fits).
inline CopyAdvice advise_copies(const GrowthClass& T, int n, const Limits& limits = default_limits()) {
  require(n >= 2 && n <= 62, ErrorKind::InvalidArgument, "advice needs 2 <= n <= 62");
  require(T.form() != GrowthForm::Exp, ErrorKind::UnsupportedGrowthClass,
          "copy advice is defined for sub-exponential observers only");
  CopyAdvice a;
  a.rule_t = T.is_family() ? std::max(2, static_cast<int>(std::ceil(T.base_function().value(n) - 1e-12))) : 2;
  const int cap_bits = static_cast<int>(std::floor(std::log2(static_cast<double>(limits.dim_cap))));
  const int max_t = cap_bits / n;
  a.t = std::min(a.rule_t, max_t);
  a.clipped = a.t < a.rule_t;
  return a;
}

}  // namespace tprs

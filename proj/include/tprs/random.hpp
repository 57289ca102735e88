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

// Seeded randomness and keyed small-domain primitives.
//
// The keyed permutation is a 4-round Feistel network over n-bit strings and
// the keyed phase function is the low bit of a keyed mixing hash. Both are
// heuristic stand-ins for pseudorandom primitives: they are bijective and
// empirically balanced, nothing more is claimed.

#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tprs/errors.hpp"
#include "tprs/limits.hpp"
#include "tprs/linalg.hpp"

namespace tprs {

struct RngSeed {
  std::uint64_t value = 0;

  friend bool operator==(RngSeed, RngSeed) = default;
};

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

/// SplitMix64 output function.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed for sample `index` of stream `stream`. Pure function of its inputs,
/// so a Monte-Carlo sample is reproducible independent of scheduling.
constexpr RngSeed derive_seed(RngSeed seed, std::uint64_t stream, std::uint64_t index) {
  return RngSeed{mix64(mix64(seed.value + kGolden * (stream + 1)) ^ (index * 0xd1b54a32d192ed03ULL))};
}

using Rng = std::mt19937_64;

inline Rng make_rng(RngSeed seed) { return Rng(mix64(seed.value)); }

/// Uniform double in [0, 1) from the top 53 bits.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Unbiased integer in [0, bound) by rejection; bound > 0.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t r = rng();
  while (r >= limit) r = rng();
  return r % bound;
}

/// Standard normal pair by Box-Muller (kept local for bitwise-stable streams).
inline std::pair<double, double> gaussian_pair(Rng& rng) {
  double u1 = uniform01(rng);
  while (u1 <= 0.0) u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(theta), r * std::sin(theta)};
}

using Key = std::vector<std::uint8_t>;

inline Key random_key(RngSeed seed, std::size_t bytes = 16) {
  Rng rng = make_rng(seed);
  Key key(bytes);
  for (auto& b : key) b = static_cast<std::uint8_t>(rng() >> 56);
  return key;
}

inline std::uint64_t key_digest(const Key& key, std::uint64_t domain_tag) {
  std::uint64_t h = mix64(domain_tag ^ kGolden);
  for (std::uint8_t b : key) h = mix64(h ^ b) + kGolden;
  return mix64(h ^ key.size());
}

namespace detail {
inline void check_domain(int bits, std::uint64_t x) {
  require(x < dim_of(bits), ErrorKind::DomainOverflow,
          "input " + std::to_string(x) + " is not a " + std::to_string(bits) + "-bit string");
}
inline constexpr std::uint64_t low_mask(int bits) {
  return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}
}  // namespace detail

/// Explicit permutation of {0,1}^n as a lookup table.
class PermutationTable {
 public:
  PermutationTable(int bits, std::vector<std::uint64_t> forward)
      : bits_(bits), forward_(std::move(forward)), inverse_(forward_.size()) {
    require(forward_.size() == dim_of(bits_), ErrorKind::InvalidArgument,
            "permutation table must have 2^n entries");
    std::vector<bool> seen(forward_.size(), false);
    for (std::size_t x = 0; x < forward_.size(); ++x) {
      const auto y = forward_[x];
      require(y < forward_.size() && !seen[y], ErrorKind::InvalidArgument, "table is not a bijection");
      seen[y] = true;
      inverse_[y] = x;
    }
  }

  static PermutationTable identity(int bits) {
    std::vector<std::uint64_t> f(dim_of(bits));
    for (std::size_t x = 0; x < f.size(); ++x) f[x] = x;
    return PermutationTable(bits, std::move(f));
  }

  int bits() const { return bits_; }
  std::uint64_t apply(std::uint64_t x) const {
    detail::check_domain(bits_, x);
    return forward_[x];
  }
  std::uint64_t invert(std::uint64_t y) const {
    detail::check_domain(bits_, y);
    return inverse_[y];
  }
  std::uint64_t operator()(std::uint64_t x) const { return apply(x); }
  const std::vector<std::uint64_t>& table() const { return forward_; }

 private:
  int bits_;
  std::vector<std::uint64_t> forward_;
  std::vector<std::uint64_t> inverse_;
};

/// Permutation of bit positions, w -> w_{p(1)} ... w_{p(n)} with 0-based
/// `positions` (position 0 is the leading bit).
inline PermutationTable bit_position_permutation(int bits, const std::vector<int>& positions,
                                                 const Limits& limits = default_limits()) {
  require(static_cast<int>(positions.size()) == bits, ErrorKind::InvalidArgument,
          "need one source position per output bit");
  require(dim_of(bits) != 0 && dim_of(bits) <= limits.table_cap, ErrorKind::DomainCapExceeded,
          "bit-position table too large");
  std::vector<bool> used(static_cast<std::size_t>(bits), false);
  for (int p : positions) {
    require(p >= 0 && p < bits && !used[static_cast<std::size_t>(p)], ErrorKind::InvalidArgument,
            "positions must be a permutation of 0..n-1");
    used[static_cast<std::size_t>(p)] = true;
  }
  std::vector<std::uint64_t> f(dim_of(bits));
  for (std::uint64_t w = 0; w < f.size(); ++w) {
    std::uint64_t out = 0;
    for (int k = 0; k < bits; ++k) {
      const std::uint64_t bit = (w >> (bits - 1 - positions[static_cast<std::size_t>(k)])) & 1U;
      out |= bit << (bits - 1 - k);
    }
    f[w] = out;
  }
  return PermutationTable(bits, std::move(f));
}

/// Keyed Feistel permutation of n-bit strings.
///
/// The state is split into a left half of ceil(n/2) bits and a right half of
/// floor(n/2) bits. Each round maps (L, R) to (R, L xor F_i(R)), where F_i is
/// the keyed mixing hash truncated to |L| bits; the half widths swap every
/// round, so odd n is handled as an unbalanced network.
class KeyedPermutation {
 public:
  KeyedPermutation(int bits, Key key, int rounds = 4)
      : bits_(bits), key_(std::move(key)), rounds_(rounds), round_keys_(static_cast<std::size_t>(rounds > 0 ? rounds : 0)) {
    require(bits >= 1 && bits <= 62, ErrorKind::InvalidArgument, "bit width must be in 1..62");
    require(rounds >= 1, ErrorKind::InvalidArgument, "need at least one Feistel round");
    const std::uint64_t base = key_digest(key_, 0x7065726d);  // "perm"
    for (int i = 0; i < rounds_; ++i) round_keys_[static_cast<std::size_t>(i)] = mix64(base + kGolden * (i + 1));
  }

  /// Feistel skeleton with a zero round function: every round is a rotation
  /// of the bit string, so the map is a bijection that mixes nothing.
  static KeyedPermutation unkeyed(int bits, int rounds = 4) {
    KeyedPermutation p(bits, Key{}, rounds);
    p.zero_round_function_ = true;
    return p;
  }

  int bits() const { return bits_; }
  int rounds() const { return rounds_; }
  const Key& key() const { return key_; }

  std::uint64_t apply(std::uint64_t x) const {
    detail::check_domain(bits_, x);
    int left_bits = (bits_ + 1) / 2;
    int right_bits = bits_ / 2;
    std::uint64_t left = x >> right_bits;
    std::uint64_t right = x & detail::low_mask(right_bits);
    for (int i = 0; i < rounds_; ++i) {
      const std::uint64_t new_right = (left ^ round(i, right)) & detail::low_mask(left_bits);
      left = right;
      right = new_right;
      std::swap(left_bits, right_bits);
    }
    return (left << right_bits) | right;
  }

  std::uint64_t invert(std::uint64_t y) const {
    detail::check_domain(bits_, y);
    // Widths after all rounds: swapped once per round.
    int left_bits = (bits_ + 1) / 2;
    int right_bits = bits_ / 2;
    if (rounds_ % 2 == 1) std::swap(left_bits, right_bits);
    std::uint64_t left = y >> right_bits;
    std::uint64_t right = y & detail::low_mask(right_bits);
    for (int i = rounds_ - 1; i >= 0; --i) {
      // Undo (L, R) -> (R, L ^ F(R)): previous R is the current L.
      const std::uint64_t prev_right = left;
      const int prev_left_bits = right_bits;
      const std::uint64_t prev_left = (right ^ round(i, prev_right)) & detail::low_mask(prev_left_bits);
      left = prev_left;
      right = prev_right;
      std::swap(left_bits, right_bits);
    }
    return (left << right_bits) | right;
  }

  std::uint64_t operator()(std::uint64_t x) const { return apply(x); }

  PermutationTable to_table(const Limits& limits = default_limits()) const {
    require(dim_of(bits_) <= limits.table_cap, ErrorKind::DomainCapExceeded, "domain exceeds table cap");
    std::vector<std::uint64_t> f(dim_of(bits_));
    for (std::uint64_t x = 0; x < f.size(); ++x) f[x] = apply(x);
    return PermutationTable(bits_, std::move(f));
  }

 private:
  std::uint64_t round(int i, std::uint64_t half) const {
    if (zero_round_function_) return 0;
    return mix64(round_keys_[static_cast<std::size_t>(i)] ^ mix64(half + kGolden));
  }

  int bits_;
  Key key_;
  int rounds_;
  std::vector<std::uint64_t> round_keys_;
  bool zero_round_function_ = false;
};

enum class PhaseKind { Keyed, Table, Zero };

/// Binary function on n-bit strings: keyed hash, explicit table, or f = 0.
class PhaseFunction {
 public:
  static PhaseFunction keyed(int bits, Key key) {
    PhaseFunction f(bits, PhaseKind::Keyed);
    f.digest_ = key_digest(key, 0x7068617365);  // "phase"
    f.key_ = std::move(key);
    return f;
  }

  static PhaseFunction zero(int bits) { return PhaseFunction(bits, PhaseKind::Zero); }

  static PhaseFunction from_table(int bits, std::vector<std::uint8_t> table) {
    require(table.size() == dim_of(bits), ErrorKind::InvalidArgument, "phase table must have 2^n entries");
    PhaseFunction f(bits, PhaseKind::Table);
    for (auto& b : table) b &= 1U;
    f.table_ = std::move(table);
    return f;
  }

  int bits() const { return bits_; }
  PhaseKind kind() const { return kind_; }

  int eval(std::uint64_t x) const {
    detail::check_domain(bits_, x);
    switch (kind_) {
      case PhaseKind::Keyed: return static_cast<int>(mix64(digest_ ^ mix64(x * kGolden + 1)) & 1U);
      case PhaseKind::Table: return table_[x];
      case PhaseKind::Zero: return 0;
    }
    return 0;
  }

  int operator()(std::uint64_t x) const { return eval(x); }

 private:
  PhaseFunction(int bits, PhaseKind kind) : bits_(bits), kind_(kind) {
    require(bits >= 0 && bits <= 62, ErrorKind::InvalidArgument, "bit width must be in 0..62");
  }

  int bits_;
  PhaseKind kind_;
  Key key_;
  std::uint64_t digest_ = 0;
  std::vector<std::uint8_t> table_;
};

/// Uniform permutation of {0,1}^n by Fisher-Yates.
inline PermutationTable sample_true_permutation(int bits, RngSeed seed, const Limits& limits = default_limits()) {
  require(bits >= 0 && dim_of(bits) != 0 && dim_of(bits) <= limits.table_cap, ErrorKind::DomainCapExceeded,
          "2^" + std::to_string(bits) + " exceeds the permutation table cap");
  std::vector<std::uint64_t> f(dim_of(bits));
  for (std::uint64_t x = 0; x < f.size(); ++x) f[x] = x;
  Rng rng = make_rng(seed);
  for (std::uint64_t i = f.size(); i > 1; --i) std::swap(f[i - 1], f[uniform_below(rng, i)]);
  return PermutationTable(bits, std::move(f));
}

/// Uniformly random phase function as an explicit table.
inline PhaseFunction sample_true_phase_function(int bits, RngSeed seed, const Limits& limits = default_limits()) {
  require(bits >= 0 && dim_of(bits) != 0 && dim_of(bits) <= limits.table_cap, ErrorKind::DomainCapExceeded,
          "2^" + std::to_string(bits) + " exceeds the phase table cap");
  Rng rng = make_rng(seed);
  std::vector<std::uint8_t> table(dim_of(bits));
  for (auto& b : table) b = static_cast<std::uint8_t>(rng() >> 63);
  return PhaseFunction::from_table(bits, std::move(table));
}

/// Haar-random pure state: normalized vector of i.i.d. complex Gaussians.
inline PureState sample_haar_state(int qubits, RngSeed seed, const Limits& limits = default_limits()) {
  require_dim(qubits, limits, "sample_haar_state");
  Rng rng = make_rng(seed);
  Vector v(static_cast<Eigen::Index>(dim_of(qubits)));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const auto [re, im] = gaussian_pair(rng);
    v(i) = Complex(re, im);
  }
  return PureState::normalized(qubits, std::move(v));
}

}  // namespace tprs

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

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <string>

#include "tprs/errors.hpp"

namespace tprs {

/// Size caps shared by every module. Dense operators are limited to
/// `dim_cap` rows, explicit permutation tables to `table_cap` entries and
/// exact ensemble averages to `enumeration_budget` terms.
struct Limits {
  std::uint64_t dim_cap = 4096;
  std::uint64_t table_cap = std::uint64_t{1} << 20;
  double enumeration_budget = 1e6;
  /// Largest qubit count for Pauli-sum routes (4^n * n work per state).
  int max_pauli_qubits = 12;
};

/// Defaults, with `TPRS_DIM_CAP` overriding the dimension cap when set.
inline Limits default_limits() {
  Limits limits;
  if (const char* env = std::getenv("TPRS_DIM_CAP"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    require(end != env && *end == '\0' && value > 0, ErrorKind::InvalidArgument,
            std::string("TPRS_DIM_CAP must be a positive integer, got '") + env + "'");
    limits.dim_cap = value;
  }
  return limits;
}

/// 2^bits, or 0 on overflow of the 64-bit range.
constexpr std::uint64_t pow2_or_zero(int bits) {
  if (bits < 0 || bits >= 64) return 0;
  return std::uint64_t{1} << bits;
}

inline void require_dim(int qubits, const Limits& limits, const std::string& what) {
  const std::uint64_t dim = pow2_or_zero(qubits);
  require(dim != 0 && dim <= limits.dim_cap, ErrorKind::DimensionCapExceeded,
          what + ": 2^" + std::to_string(qubits) + " exceeds dimension cap " +
              std::to_string(limits.dim_cap));
}

/// Binomial coefficient in floating point; exact for the enumeration sizes
/// that fit the budget.
inline double binomial(double n, double k) {
  if (k < 0 || k > n) return 0.0;
  return std::round(std::exp(std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1)));
}

}  // namespace tprs

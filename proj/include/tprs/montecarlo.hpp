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

// Deterministic parallel Monte-Carlo accumulation.
//
// Samples are grouped into fixed-size blocks. Each block is summed in sample
// order by whichever worker claims it, and block partials are merged in block
// order, so the floating-point result does not depend on the thread count.

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace tprs {

inline constexpr std::size_t kMonteCarloBlock = 256;

/// Runs `body(block)` for every block in [0, blocks) on up to `threads`
/// workers. The first exception thrown by any block is rethrown.
template <class Body>
void parallel_blocks(std::size_t blocks, int threads, Body&& body) {
  const std::size_t workers = std::min<std::size_t>(blocks, static_cast<std::size_t>(std::max(threads, 1)));
  if (workers <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) body(b);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t b = next++; b < blocks; b = next++) {
      try {
        body(b);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = blocks;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
};

/// Running sums for a batch of scalar observables.
struct MomentSums {
  std::vector<double> sum;
  std::vector<double> sum_sq;
  std::size_t count = 0;

  explicit MomentSums(std::size_t k = 0) : sum(k, 0.0), sum_sq(k, 0.0) {}

  void add(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      sum[i] += values[i];
      sum_sq[i] += values[i] * values[i];
    }
    ++count;
  }

  void merge(const MomentSums& other) {
    for (std::size_t i = 0; i < sum.size(); ++i) {
      sum[i] += other.sum[i];
      sum_sq[i] += other.sum_sq[i];
    }
    count += other.count;
  }

  Estimate estimate(std::size_t i) const {
    Estimate e;
    e.samples = count;
    if (count == 0) return e;
    const double n = static_cast<double>(count);
    e.mean = sum[i] / n;
    if (count > 1) {
      const double var = std::max(0.0, (sum_sq[i] - sum[i] * sum[i] / n) / (n - 1.0));
      e.std_error = std::sqrt(var / n);
    }
    return e;
  }
};

/// Sample means and standard errors of `k` observables; `observe(index)`
/// returns the k values of sample `index` and must be a pure function of it.
template <class Observe>
std::vector<Estimate> mc_estimate(std::size_t samples, std::size_t k, int threads, Observe&& observe) {
  const std::size_t blocks = (samples + kMonteCarloBlock - 1) / kMonteCarloBlock;
  std::vector<MomentSums> partial(blocks, MomentSums(k));
  parallel_blocks(blocks, threads, [&](std::size_t b) {
    const std::size_t begin = b * kMonteCarloBlock;
    const std::size_t end = std::min(samples, begin + kMonteCarloBlock);
    for (std::size_t i = begin; i < end; ++i) partial[b].add(observe(i));
  });
  MomentSums total(k);
  for (const auto& p : partial) total.merge(p);
  std::vector<Estimate> out(k);
  for (std::size_t i = 0; i < k; ++i) out[i] = total.estimate(i);
  return out;
}

template <class Observe>
Estimate mc_mean(std::size_t samples, int threads, Observe&& observe) {
  return mc_estimate(samples, 1, threads, [&](std::size_t i) { return std::vector<double>{observe(i)}; })[0];
}

}  // namespace tprs

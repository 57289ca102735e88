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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "oracles.hpp"
#include "tprs/linalg.hpp"
#include "tprs/montecarlo.hpp"
#include "tprs/random.hpp"

namespace {

using tprs::ErrorKind;
using tprs::KeyedPermutation;
using tprs::PhaseFunction;
using tprs::RngSeed;

bool is_bijection(const std::vector<std::uint64_t>& image, std::uint64_t size) {
  if (image.size() != size) return false;
  std::vector<bool> seen(size, false);
  for (auto y : image) {
    if (y >= size || seen[y]) return false;
    seen[y] = true;
  }
  return true;
}

TEST(SeedTest, SameSeedSameStream) {
  auto a = tprs::make_rng(RngSeed{42});
  auto b = tprs::make_rng(RngSeed{42});
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a(), b());
  EXPECT_NE(tprs::derive_seed(RngSeed{1}, 2, 3).value, tprs::derive_seed(RngSeed{1}, 2, 4).value);
  EXPECT_NE(tprs::derive_seed(RngSeed{1}, 2, 3).value, tprs::derive_seed(RngSeed{1}, 3, 3).value);
}

TEST(KeyedPermutationTest, ExhaustiveBijectionUpToTwelveBits) {
  for (int bits = 1; bits <= 12; ++bits) {
    const KeyedPermutation p(bits, tprs::random_key(RngSeed{static_cast<std::uint64_t>(bits)}));
    std::vector<std::uint64_t> image(tprs::dim_of(bits));
    for (std::uint64_t x = 0; x < image.size(); ++x) {
      image[x] = p.apply(x);
      ASSERT_EQ(p.invert(image[x]), x) << "bits=" << bits;
    }
    EXPECT_TRUE(is_bijection(image, tprs::dim_of(bits))) << "bits=" << bits;
  }
}

TEST(KeyedPermutationTest, OddRoundCountsStillInvert) {
  for (int rounds : {1, 3, 5}) {
    const KeyedPermutation p(7, tprs::random_key(RngSeed{9}), rounds);
    for (std::uint64_t x = 0; x < 128; ++x) EXPECT_EQ(p.invert(p.apply(x)), x);
  }
}

TEST(KeyedPermutationTest, UnkeyedSkeletonIsABijection) {
  const auto p = KeyedPermutation::unkeyed(4);
  std::vector<std::uint64_t> image;
  for (std::uint64_t x = 0; x < 16; ++x) image.push_back(p(x));
  EXPECT_TRUE(is_bijection(image, 16));
}

TEST(KeyedPermutationTest, FourBitsFixedKeyPermutesAllInputs) {
  const KeyedPermutation p(4, tprs::Key{1, 2, 3, 4});
  std::set<std::uint64_t> out;
  for (std::uint64_t x = 0; x < 16; ++x) out.insert(p(x));
  EXPECT_EQ(out.size(), 16u);
  EXPECT_EQ(*out.rbegin(), 15u);
}

TEST(KeyedPermutationTest, DifferentKeysGiveDifferentMaps) {
  const KeyedPermutation a(8, tprs::Key{1});
  const KeyedPermutation b(8, tprs::Key{2});
  int differ = 0;
  for (std::uint64_t x = 0; x < 256; ++x) differ += a(x) != b(x);
  EXPECT_GT(differ, 200);
}

TEST(KeyedPermutationTest, RejectsOutOfDomainInput) {
  const KeyedPermutation p(4, tprs::Key{1});
  EXPECT_THROW(p.apply(16), tprs::Error);
  try {
    p.invert(99);
  } catch (const tprs::Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DomainOverflow);
  }
}

TEST(PhaseFunctionTest, ZeroKeyedAndTable) {
  const auto zero = PhaseFunction::zero(5);
  for (std::uint64_t x = 0; x < 32; ++x) EXPECT_EQ(zero(x), 0);

  const auto f = PhaseFunction::keyed(8, tprs::Key{7, 7});
  const auto g = PhaseFunction::keyed(8, tprs::Key{7, 7});
  double mean = 0;
  for (std::uint64_t x = 0; x < 256; ++x) {
    EXPECT_EQ(f(x), g(x));
    mean += f(x);
  }
  EXPECT_LE(std::abs(mean / 256 - 0.5), 0.1);

  const auto t1 = tprs::sample_true_phase_function(6, RngSeed{3});
  const auto t2 = tprs::sample_true_phase_function(6, RngSeed{3});
  for (std::uint64_t x = 0; x < 64; ++x) EXPECT_EQ(t1(x), t2(x));
  EXPECT_THROW(f(256), tprs::Error);
}

TEST(TruePermutationTest, SingleBitFrequencies) {
  int swaps = 0;
  const int seeds = 10000;
  for (int s = 0; s < seeds; ++s) swaps += tprs::sample_true_permutation(1, RngSeed{static_cast<std::uint64_t>(s)})(0);
  EXPECT_NEAR(swaps / static_cast<double>(seeds), 0.5, 0.02);
}

TEST(TruePermutationTest, TwoBitsCoverAllTwentyFour) {
  std::set<std::vector<std::uint64_t>> seen;
  for (std::uint64_t s = 0; s < 100000 && seen.size() < 24; ++s)
    seen.insert(tprs::sample_true_permutation(2, RngSeed{s}).table());
  EXPECT_EQ(seen.size(), 24u);
}

TEST(TruePermutationTest, ReproducibleAndCapped) {
  EXPECT_EQ(tprs::sample_true_permutation(5, RngSeed{8}).table(), tprs::sample_true_permutation(5, RngSeed{8}).table());
  tprs::Limits small;
  small.table_cap = 16;
  try {
    tprs::sample_true_permutation(5, RngSeed{1}, small);
    FAIL();
  } catch (const tprs::Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DomainCapExceeded);
  }
}

TEST(HaarSamplerTest, UnitNormAndFirstMoment) {
  double sum = 0;
  const int samples = 10000;
  for (int i = 0; i < samples; ++i) {
    const auto psi = tprs::sample_haar_state(1, RngSeed{static_cast<std::uint64_t>(i)});
    ASSERT_NEAR(psi.amplitudes().norm(), 1.0, 1e-12);
    sum += std::norm(psi[0]);
  }
  EXPECT_NEAR(sum / samples, 0.5, 0.01);
}

TEST(HaarSamplerTest, SecondMomentMatchesSymmetricSubspace) {
  const int samples = 100000;
  oracle::Matrix acc = oracle::Matrix::Zero(4, 4);
  for (int i = 0; i < samples; ++i) {
    const auto psi = tprs::sample_haar_state(1, RngSeed{static_cast<std::uint64_t>(i) + 1000000});
    const oracle::Vector v = tprs::kron(psi.amplitudes(), psi.amplitudes());
    acc += v * v.adjoint();
  }
  acc /= samples;
  EXPECT_LT(oracle::max_abs(acc - oracle::symmetrizer(2, 2) / 3.0), 0.02);
}

TEST(HaarSamplerTest, InvariantUnderFixedRotation) {
  // E|<0|phi>|^4 = 2 / (d (d + 1)) = 1/3 for d = 2, before and after H.
  oracle::Matrix h(2, 2);
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  const auto before = tprs::mc_mean(20000, 1, [](std::size_t i) {
    return std::pow(std::norm(tprs::sample_haar_state(1, RngSeed{i})[0]), 2);
  });
  const auto after = tprs::mc_mean(20000, 1, [&](std::size_t i) {
    const oracle::Vector v = h * tprs::sample_haar_state(1, RngSeed{i}).amplitudes();
    return std::pow(std::norm(v(0)), 2);
  });
  EXPECT_NEAR(before.mean, 1.0 / 3.0, 4 * before.std_error);
  EXPECT_NEAR(after.mean, 1.0 / 3.0, 4 * after.std_error);
}

TEST(MonteCarloTest, EstimateIndependentOfThreadCount) {
  const auto observe = [](std::size_t i) {
    auto rng = tprs::make_rng(tprs::derive_seed(RngSeed{5}, 0, i));
    return std::vector<double>{tprs::uniform01(rng), tprs::uniform01(rng) * 2};
  };
  const auto one = tprs::mc_estimate(5000, 2, 1, observe);
  const auto four = tprs::mc_estimate(5000, 2, 4, observe);
  for (int k = 0; k < 2; ++k) {
    EXPECT_EQ(one[k].mean, four[k].mean);
    EXPECT_EQ(one[k].std_error, four[k].std_error);
  }
  EXPECT_NEAR(one[0].mean, 0.5, 4 * one[0].std_error);
}

}  // namespace

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

#include <bit>
#include <cmath>

#include "oracles.hpp"
#include "tprs/ensembles.hpp"

namespace {

using tprs::EnsembleKind;
using tprs::EnsembleSpec;
using tprs::ErrorKind;
using tprs::GrowthClass;
using tprs::Matrix;
using tprs::PhaseFunction;
using tprs::RngSeed;
using tprs::SubsetSpec;
using tprs::Vector;

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

template <class F>
ErrorKind error_kind_of(F&& f) {
  try {
    f();
  } catch (const tprs::Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::InvariantViolation;
}

TEST(SubsetStateTest, SmallExamples) {
  const auto bell = tprs::build_subset_state(SubsetSpec(2, {0, 3}));
  EXPECT_NEAR(bell[0].real(), kInvSqrt2, 1e-15);
  EXPECT_NEAR(bell[3].real(), kInvSqrt2, 1e-15);
  EXPECT_EQ(bell.support_size(), 2u);

  const auto plus = tprs::build_subset_state(SubsetSpec(1, {1, 0}));
  EXPECT_NEAR(plus[0].real(), kInvSqrt2, 1e-15);
  EXPECT_NEAR(plus[1].real(), kInvSqrt2, 1e-15);

  const auto uniform = tprs::build_subset_state(SubsetSpec(3, {0, 1, 2, 3, 4, 5, 6, 7}));
  for (int x = 0; x < 8; ++x) EXPECT_NEAR(uniform[x].real(), 1.0 / std::sqrt(8.0), 1e-15);
}

TEST(SubsetStateTest, RejectsBadSubsets) {
  EXPECT_EQ(error_kind_of([] { SubsetSpec(2, {}); }), ErrorKind::EmptySubset);
  EXPECT_EQ(error_kind_of([] { SubsetSpec(2, {1, 1}); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(error_kind_of([] { SubsetSpec(2, {4}); }), ErrorKind::DomainOverflow);
}

TEST(SubsetPhaseStateTest, PhasesAndNormalization) {
  const SubsetSpec spec(1, {0, 1});
  const auto minus = tprs::build_subset_phase_state(spec, PhaseFunction::from_table(1, {0, 1}));
  EXPECT_NEAR(minus[0].real(), kInvSqrt2, 1e-15);
  EXPECT_NEAR(minus[1].real(), -kInvSqrt2, 1e-15);

  const SubsetSpec big(4, {1, 3, 4, 9, 12});
  const auto zero = tprs::build_subset_phase_state(big, PhaseFunction::zero(4));
  EXPECT_LT((zero.amplitudes() - tprs::build_subset_state(big).amplitudes()).norm(), 1e-15);
  for (std::uint8_t k = 0; k < 20; ++k) {
    const auto psi = tprs::build_subset_phase_state(big, PhaseFunction::keyed(4, {k}));
    EXPECT_NEAR(psi.amplitudes().norm(), 1.0, 1e-12);
  }
}

TEST(PermutedStateTest, IdentityAndSupport) {
  const auto id2 = tprs::PermutationTable::identity(2);
  const auto all = tprs::build_permuted_subset_phase_state(2, 2, id2, PhaseFunction::zero(2));
  for (int x = 0; x < 4; ++x) EXPECT_NEAR(all[x].real(), 0.5, 1e-15);

  // m_exp = 1, n = 2: strings x0 for x in {0,1}, i.e. |00> and |10>.
  const auto half = tprs::build_permuted_subset_phase_state(2, 1, id2, PhaseFunction::zero(2));
  EXPECT_NEAR(half[0b00].real(), kInvSqrt2, 1e-15);
  EXPECT_NEAR(half[0b10].real(), kInvSqrt2, 1e-15);
  EXPECT_EQ(half.support_size(), 2u);

  for (std::uint64_t s = 0; s < 20; ++s) {
    const tprs::KeyedPermutation sigma(6, tprs::random_key(RngSeed{s}));
    const auto psi = tprs::build_permuted_subset_phase_state(6, 3, sigma, PhaseFunction::keyed(6, {1}));
    EXPECT_EQ(psi.support_size(), 8u);
  }
  EXPECT_EQ(error_kind_of([&] { tprs::build_permuted_subset_phase_state(2, 3, id2, PhaseFunction::zero(2)); }),
            ErrorKind::BadSubsetExponent);
}

TEST(HaarMomentTest, ProjectorOverDimension) {
  EXPECT_LT(oracle::max_abs(tprs::haar_moment(1, 1).matrix() - Matrix::Identity(2, 2) / 2.0), 1e-15);
  EXPECT_LT(oracle::max_abs(tprs::haar_moment(1, 2).matrix() - oracle::symmetrizer(2, 2) / 3.0), 1e-15);
  for (int n = 1; n <= 3; ++n)
    for (int t = 1; n * t <= 9; ++t) {
      const auto rho = tprs::haar_moment(n, t);
      EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-12);
      EXPECT_NO_THROW(tprs::DensityOperator(n * t, rho.matrix()));
    }
  EXPECT_EQ(error_kind_of([] { tprs::haar_moment(7, 2); }), ErrorKind::DimensionCapExceeded);
}

TEST(ExactSubsetMomentTest, MatchesBitmaskEnumeration) {
  const double s = 1.0 / std::sqrt(2.0);
  Vector plus(2);
  plus << s, s;
  EXPECT_LT(oracle::max_abs(tprs::exact_subset_moment(1, 2, 1).matrix() - plus * plus.adjoint()), 1e-15);
  EXPECT_LT(oracle::max_abs(tprs::exact_subset_moment(2, 4, 1).matrix() - Matrix::Constant(4, 4, 0.25)), 1e-15);
  for (const auto& [n, m, t] : {std::tuple{2, 2, 1}, {2, 2, 2}, {2, 3, 2}, {3, 2, 2}, {3, 5, 2}, {2, 1, 3}}) {
    EXPECT_LT(oracle::max_abs(tprs::exact_subset_moment(n, m, t).matrix() - oracle::subset_moment(n, m, t, false)),
              1e-13)
        << n << " " << m << " " << t;
  }
}

TEST(ExactSubsetPhaseMomentTest, MatchesBitmaskEnumeration) {
  for (int n = 1; n <= 3; ++n) {
    const Matrix one = tprs::exact_subset_phase_moment(n, 2, 1).matrix();
    EXPECT_LT(oracle::max_abs(one - Matrix::Identity(1 << n, 1 << n) / double(1 << n)), 1e-14);
  }
  for (const auto& [n, m, t] : {std::tuple{2, 2, 2}, {3, 2, 2}, {3, 4, 2}, {2, 3, 3}}) {
    const Matrix exact = tprs::exact_subset_phase_moment(n, m, t).matrix();
    EXPECT_LT(oracle::max_abs(exact - oracle::subset_moment(n, m, t, true)), 1e-13) << n << " " << m << " " << t;
    EXPECT_LT(oracle::max_abs(exact - exact.adjoint()), 1e-14);
    EXPECT_NEAR(exact.trace().real(), 1.0, 1e-12);
  }
}

TEST(ExactMomentTest, BudgetAndSizeErrors) {
  EXPECT_EQ(error_kind_of([] { tprs::exact_subset_moment(8, 4, 1); }), ErrorKind::EnumerationBudgetExceeded);
  EXPECT_EQ(error_kind_of([] { tprs::exact_subset_phase_moment(5, 8, 1); }), ErrorKind::EnumerationBudgetExceeded);
  EXPECT_THROW(tprs::exact_subset_moment(2, 0, 1), tprs::Error);
  EXPECT_THROW(tprs::exact_subset_moment(2, 5, 1), tprs::Error);
}

TEST(MonteCarloMomentTest, HaarAndTrueRandomSubset) {
  const auto haar = tprs::mc_ensemble_moment({EnsembleKind::Haar, 1, 0, 2, RngSeed{3}}, 100000);
  EXPECT_LT(oracle::max_abs(haar.mean.matrix() - tprs::haar_moment(1, 2).matrix()), 0.02);
  EXPECT_EQ(haar.samples, 100000u);

  const auto subset = tprs::mc_ensemble_moment({EnsembleKind::SubsetTrueRandom, 2, 2, 2, RngSeed{4}}, 100000);
  EXPECT_LT(oracle::max_abs(subset.mean.matrix() - tprs::exact_subset_moment(2, 2, 2).matrix()), 0.02);
}

TEST(MonteCarloMomentTest, KeyedSubsetPhaseNearExactMoment) {
  const auto keyed = tprs::mc_ensemble_moment({EnsembleKind::SubsetPhaseKeyed, 2, 2, 2, RngSeed{5}}, 50000);
  EXPECT_LT(oracle::max_abs(keyed.mean.matrix() - tprs::exact_subset_phase_moment(2, 2, 2).matrix()), 0.02);
}

TEST(MonteCarloMomentTest, DeterministicAcrossThreadsAndStopsEarly) {
  const EnsembleSpec spec{EnsembleKind::Haar, 1, 0, 2, RngSeed{6}};
  const auto a = tprs::mc_ensemble_moment(spec, 5000, 1);
  const auto b = tprs::mc_ensemble_moment(spec, 5000, 3);
  EXPECT_EQ(oracle::max_abs(a.mean.matrix() - b.mean.matrix()), 0.0);
  EXPECT_EQ(a.max_std_error, b.max_std_error);

  const auto early = tprs::mc_ensemble_moment(spec, 1000000, 1, 0.01);
  EXPECT_LT(early.samples, 1000000u);
  EXPECT_LE(early.max_std_error, 0.01);
  EXPECT_EQ(early.samples % (tprs::kMonteCarloBlock * tprs::kMomentChunkBlocks), 0u);
}

TEST(EnsembleSpecTest, ValidatesSubsetSizes) {
  EXPECT_EQ(error_kind_of([] { EnsembleSpec{EnsembleKind::SubsetPhaseKeyed, 3, 3, 1, {}}.validate(); }),
            ErrorKind::BadSubsetExponent);
  EXPECT_THROW((EnsembleSpec{EnsembleKind::SubsetKeyed, 3, 9, 1, {}}.validate()), tprs::Error);
  EXPECT_NO_THROW((EnsembleSpec{EnsembleKind::SubsetKeyed, 3, 3, 1, {}}.validate()));
  EXPECT_EQ(tprs::parse_ensemble_kind(tprs::to_string(EnsembleKind::SubsetPhaseTrueRandom)),
            EnsembleKind::SubsetPhaseTrueRandom);
}

TEST(EnsembleSamplingTest, SampleIsPureFunctionOfSpecAndIndex) {
  for (auto kind : {EnsembleKind::SubsetPhaseKeyed, EnsembleKind::SubsetPhaseTrueRandom, EnsembleKind::SubsetKeyed,
                    EnsembleKind::SubsetTrueRandom, EnsembleKind::Haar, EnsembleKind::Basis,
                    EnsembleKind::Stabilizer}) {
    const EnsembleSpec spec{kind, 4, 4, 1, RngSeed{7}};
    const auto a = tprs::sample_state(spec, 11);
    const auto b = tprs::sample_state(spec, 11);
    EXPECT_EQ((a.amplitudes() - b.amplitudes()).norm(), 0.0) << tprs::to_string(kind);
    if (tprs::is_subset_kind(kind)) EXPECT_EQ(a.support_size(), 4u);
  }
}

TEST(AdviceTest, SubsetSizeRule) {
  EXPECT_EQ(tprs::advise_subset_size(GrowthClass::log(), 16).m, 16u);
  EXPECT_EQ(tprs::advise_subset_size(GrowthClass::linear(), 8).m, 32u);
  EXPECT_EQ(tprs::advise_subset_size(GrowthClass::linear(), 8).m_exp, 5);
  for (const auto& T : tprs::table_classes()) {
    std::uint64_t prev = 0;
    for (int n = 2; n <= 20; ++n) {
      const auto a = tprs::advise_subset_size(T, n);
      EXPECT_GE(a.m, prev) << T.name() << " n=" << n;
      EXPECT_LE(a.m, std::uint64_t{1} << (n - 1));
      EXPECT_TRUE(std::has_single_bit(a.m));
      prev = a.m;
    }
  }
  EXPECT_EQ(error_kind_of([] { tprs::advise_subset_size(GrowthClass::exp(), 8); }),
            ErrorKind::UnsupportedGrowthClass);
}

TEST(AdviceTest, CopyRuleAndClipping) {
  EXPECT_EQ(tprs::advise_copies(GrowthClass::log(), 4).t, 2);
  EXPECT_FALSE(tprs::advise_copies(GrowthClass::linear(), 6).clipped);
  const auto poly = tprs::advise_copies(GrowthClass::poly(), 3);
  EXPECT_EQ(poly.rule_t, 3);
  EXPECT_EQ(poly.t, 3);
  const auto clipped = tprs::advise_copies(GrowthClass::poly(), 5);
  EXPECT_EQ(clipped.rule_t, 5);
  EXPECT_EQ(clipped.t, 2);
  EXPECT_TRUE(clipped.clipped);
  for (const auto& T : tprs::table_classes())
    for (int n = 2; n <= 20; ++n) {
      const auto a = tprs::advise_copies(T, n);
      EXPECT_LE(std::exp2(n * a.t), 4096.0) << T.name() << " n=" << n;
    }
}

}  // namespace

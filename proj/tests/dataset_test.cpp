#include "maintlm/dataset.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "maintlm/error.hpp"

namespace maintlm {
namespace {

TEST(SplitIndices, SizesFor56And20) {
  const auto s56 = split_indices(56, 3);
  EXPECT_EQ(s56.train_idx.size(), 39u);
  EXPECT_EQ(s56.val_idx.size(), 8u);
  EXPECT_EQ(s56.test_idx.size(), 9u);
  const auto s20 = split_indices(20, 99);
  EXPECT_EQ(s20.train_idx.size(), 14u);
  EXPECT_EQ(s20.val_idx.size(), 3u);
  EXPECT_EQ(s20.test_idx.size(), 3u);
}

TEST(SplitIndices, HalfwayCasesRoundUp) {
  // 0.7 * 5 = 3.5 and 0.15 * 10 = 1.5.
  EXPECT_EQ(split_sizes(5).train, 4u);
  EXPECT_EQ(split_sizes(10).val, 2u);
  EXPECT_EQ(split_sizes(3).train, 2u);
  EXPECT_EQ(split_sizes(3).val, 0u);
  EXPECT_EQ(split_sizes(3).test, 1u);
}

TEST(SplitIndices, Deterministic) {
  const auto a = split_indices(56, 7);
  const auto b = split_indices(56, 7);
  EXPECT_EQ(a.train_idx, b.train_idx);
  EXPECT_EQ(a.val_idx, b.val_idx);
  EXPECT_EQ(a.test_idx, b.test_idx);
  EXPECT_NE(split_indices(56, 8).train_idx, a.train_idx);
}

TEST(SplitIndices, RejectsTooFew) {
  EXPECT_THROW(split_indices(2, 0), Error);
  EXPECT_THROW(split_indices(0, 0), Error);
}

TEST(SplitIndices, PartitionPropertyOverRandomSizes) {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 3 + gen() % 400;
    const auto s = split_indices(n, gen());
    std::vector<std::size_t> all;
    for (const auto* part : {&s.train_idx, &s.val_idx, &s.test_idx}) {
      all.insert(all.end(), part->begin(), part->end());
    }
    std::sort(all.begin(), all.end());
    ASSERT_EQ(all.size(), n);
    for (std::size_t i = 0; i < n; ++i) ASSERT_EQ(all[i], i);
    EXPECT_EQ(s.train_idx.size(), static_cast<std::size_t>(std::floor(0.7 * n + 0.5 + 1e-9)));
  }
}

TEST(FitNormalization, TableOneSumVariant) {
  const std::vector<SamplePair> s{{10, 25}, {20, 43}, {13, 37}, {9, 26}};
  EXPECT_EQ(fit_normalization(s), (NormParams{9, 20, 25, 43}));
  EXPECT_EQ(fit_normalization({{5, 5}}), (NormParams{5, 5, 5, 5}));
  EXPECT_EQ(fit_normalization({{2, 3}, {2, 3}}), (NormParams{2, 2, 3, 3}));
  EXPECT_THROW(fit_normalization({}), Error);
}

TEST(Normalize, EndpointsAndInterior) {
  EXPECT_DOUBLE_EQ(normalize(9, 9, 20), -1.0);
  EXPECT_DOUBLE_EQ(normalize(20, 9, 20), 1.0);
  EXPECT_NEAR(normalize(13, 9, 20), -3.0 / 11.0, 1e-15);
  EXPECT_EQ(normalize(4, 4, 4), 0.0);
  EXPECT_EQ(denormalize(0.3, 4, 4), 4.0);
  EXPECT_THROW(normalize(1, 2, 1), Error);
  EXPECT_THROW(denormalize(1, 2, 1), Error);
}

TEST(Normalize, InverseIsAffineNotClamping) {
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> u(-1000.0, 1000.0);
  for (int i = 0; i < 2000; ++i) {
    double lo = u(gen), hi = u(gen);
    if (lo > hi) std::swap(lo, hi);
    if (lo == hi) continue;
    const double v = 3.0 * u(gen);
    const double back = denormalize(normalize(v, lo, hi), lo, hi);
    EXPECT_NEAR(back, v, 1e-12 * std::max({std::abs(v), std::abs(lo), std::abs(hi)}));
  }
}

TEST(Normalize, TrainingInputsLandInUnitInterval) {
  std::mt19937_64 gen(10);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  std::vector<SamplePair> s(40);
  for (auto& p : s) p = {u(gen), u(gen)};
  const auto norm = fit_normalization(s);
  for (const auto& p : normalize_samples(s, norm)) {
    EXPECT_GE(p.x, -1.0);
    EXPECT_LE(p.x, 1.0);
    EXPECT_GE(p.y, -1.0);
    EXPECT_LE(p.y, 1.0);
  }
}

TEST(Select, PicksInIndexOrder) {
  const std::vector<SamplePair> s{{0, 0}, {1, 1}, {2, 2}};
  EXPECT_EQ(select(s, {2, 0}), (std::vector<SamplePair>{{2, 2}, {0, 0}}));
  EXPECT_THROW(select(s, {3}), Error);
}

}  // namespace
}  // namespace maintlm

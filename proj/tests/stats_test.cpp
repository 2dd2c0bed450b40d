#include "maintlm/stats.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "maintlm/error.hpp"

namespace maintlm {
namespace {

// Sum-variant rows of the published four-row table.
const std::vector<double> kX{10, 20, 13, 9};
const std::vector<double> kY{25, 43, 37, 26};

// Hand-worked sums for those rows: x mean 13, y mean 32.75,
// Sxy = 122, Sxx = 74, Syy = 228.75.
constexpr double kSxy = 122.0, kSxx = 74.0, kSyy = 228.75;

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorKind::kIo;
}

TEST(PearsonR, Examples) {
  const std::vector<double> v{1, 4, 2, 8, 5};
  EXPECT_DOUBLE_EQ(pearson_r(v, v), 1.0);
  EXPECT_NEAR(pearson_r(kX, kY), kSxy / std::sqrt(kSxx * kSyy), 1e-15);
  EXPECT_NEAR(pearson_r(kX, kY), 0.9377, 5e-5);
  std::vector<double> neg(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) neg[i] = -v[i];
  EXPECT_DOUBLE_EQ(pearson_r(v, neg), -1.0);
}

TEST(PearsonR, DistinctErrors) {
  const std::vector<double> a{1, 2, 3}, b{1, 2}, c{5, 5, 5}, one{1};
  EXPECT_EQ(kind_of([&] { pearson_r(a, b); }), ErrorKind::kLengthMismatch);
  EXPECT_EQ(kind_of([&] { pearson_r(one, one); }), ErrorKind::kTooFewSamples);
  EXPECT_EQ(kind_of([&] { pearson_r(a, c); }), ErrorKind::kZeroVariance);
  EXPECT_EQ(kind_of([&] { pearson_r(c, a); }), ErrorKind::kZeroVariance);
}

TEST(OlsFit, TableOneRows) {
  const auto s = ols_fit(kX, kY);
  const double slope = kSxy / kSxx;
  const double intercept = 32.75 - slope * 13.0;
  const double r2 = kSxy * kSxy / (kSxx * kSyy);
  const double sse = kSyy - kSxy * kSxy / kSxx;
  EXPECT_NEAR(s.slope, slope, 1e-12);
  EXPECT_NEAR(s.intercept, intercept, 1e-12);
  EXPECT_NEAR(s.r2, r2, 1e-12);
  EXPECT_NEAR(s.adj_r2, 1.0 - (1.0 - r2) * 3.0 / 2.0, 1e-12);
  EXPECT_NEAR(s.se_estimate, std::sqrt(sse / 2.0), 1e-12);
  EXPECT_EQ(s.n, 4u);
  // Rounded values as worked by hand.
  EXPECT_NEAR(s.slope, 1.6486, 1e-4);
  EXPECT_NEAR(s.intercept, 11.318, 1e-3);
  EXPECT_NEAR(s.r2, 0.8793, 1e-4);
  EXPECT_NEAR(s.adj_r2, 0.8189, 1e-4);
  EXPECT_NEAR(s.se_estimate, 3.716, 1e-3);
}

TEST(OlsFit, PerfectLine) {
  const std::vector<double> x{-2, 0, 1, 5, 7};
  std::vector<double> y;
  for (double v : x) y.push_back(2 * v + 3);
  const auto s = ols_fit(x, y);
  EXPECT_NEAR(s.slope, 2.0, 1e-14);
  EXPECT_NEAR(s.intercept, 3.0, 1e-14);
  EXPECT_NEAR(s.r2, 1.0, 1e-14);
  EXPECT_NEAR(s.adj_r2, 1.0, 1e-14);
  EXPECT_NEAR(s.se_estimate, 0.0, 1e-7);
}

TEST(OlsFit, DistinctErrors) {
  const std::vector<double> two{1, 2}, c{4, 4, 4}, a{1, 2, 3}, b{1, 2};
  EXPECT_EQ(kind_of([&] { ols_fit(two, two); }), ErrorKind::kTooFewSamples);
  EXPECT_EQ(kind_of([&] { ols_fit(c, a); }), ErrorKind::kConstantPredictor);
  EXPECT_EQ(kind_of([&] { ols_fit(a, b); }), ErrorKind::kLengthMismatch);
}

TEST(OlsFit, PublishedSummaryIdentities) {
  // Full-dataset summary reported alongside the four-row table: R = .815,
  // R2 = 0.664, adjusted 0.651, all rounded to three places. R2 = R^2 holds
  // at that rounding. The one-predictor adjustment reproduces 0.651 only for
  // n = 27 or 28, not for the 56 periods the data description mentions.
  EXPECT_NEAR(0.815 * 0.815, 0.664, 5e-4);
  std::vector<int> consistent;
  for (int n = 3; n <= 200; ++n) {
    if (std::abs(adjusted_r2(0.664, n) - 0.651) < 5e-4) consistent.push_back(n);
  }
  EXPECT_EQ(consistent, (std::vector<int>{27, 28}));
}

TEST(Mse, Examples) {
  EXPECT_EQ(mse(std::vector<double>{0, 0, 0}), 0.0);
  EXPECT_EQ(mse(std::vector<double>{3, -4}), 12.5);
  EXPECT_THROW(mse(std::vector<double>{}), Error);
  std::mt19937_64 gen(3);
  std::normal_distribution<double> g(0, 5);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> r(1 + gen() % 50);
    for (auto& v : r) v = g(gen);
    long double acc = 0.0L;
    for (double v : r) acc += static_cast<long double>(v) * v;
    EXPECT_NEAR(mse(r), static_cast<double>(acc / r.size()), 1e-12 * (1 + mse(r)));
  }
}

TEST(ErrorHistogram, Examples) {
  const auto h = error_histogram(std::vector<double>{-1, 0, 1}, 2);
  EXPECT_EQ(h.bin_edges, (std::vector<double>{-1, 0, 1}));
  EXPECT_EQ(h.counts, (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(h.zero_mark, 0.0);

  const auto flat = error_histogram(std::vector<double>{5, 5, 5}, 3);
  EXPECT_EQ(flat.counts, std::vector<std::size_t>{3});
  EXPECT_EQ(flat.bin_edges, (std::vector<double>{5, 5}));

  EXPECT_THROW(error_histogram(std::vector<double>{}, 3), Error);
  EXPECT_THROW(error_histogram(std::vector<double>{1.0}, 0), Error);
}

TEST(ErrorHistogram, ConservationAndPlacement) {
  std::mt19937_64 gen(4);
  std::normal_distribution<double> g(0, 10);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> r(1 + gen() % 100);
    for (auto& v : r) v = g(gen);
    if (trial % 7 == 0) r.push_back(r[0]);
    const std::size_t bins = 1 + gen() % 30;
    const auto h = error_histogram(r, bins);
    ASSERT_EQ(h.bin_edges.size(), h.counts.size() + 1);
    EXPECT_EQ(std::accumulate(h.counts.begin(), h.counts.end(), std::size_t{0}), r.size());
    // Recount by the stated inclusion rule.
    std::vector<std::size_t> expected(h.counts.size(), 0);
    for (double v : r) {
      for (std::size_t b = 0; b < h.counts.size(); ++b) {
        const bool last = b + 1 == h.counts.size();
        if (v >= h.bin_edges[b] && (v < h.bin_edges[b + 1] || (last && v <= h.bin_edges[b + 1]))) {
          ++expected[b];
          break;
        }
      }
    }
    EXPECT_EQ(h.counts, expected);
  }
}

// Random data sets for the identity checks.
struct Data {
  std::vector<double> x, y;
};

Data random_data(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(-50, 50);
  std::normal_distribution<double> noise(0, 1 + gen() % 20);
  const double a = u(gen), b = u(gen) / 10.0;
  Data d;
  const std::size_t n = 3 + gen() % 60;
  for (std::size_t i = 0; i < n; ++i) {
    d.x.push_back(u(gen));
    d.y.push_back(a + b * d.x.back() + noise(gen));
  }
  return d;
}

TEST(StatsProperties, PearsonSymmetricBoundedAffineInvariant) {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 500; ++trial) {
    const auto d = random_data(gen);
    const double r = pearson_r(d.x, d.y);
    EXPECT_DOUBLE_EQ(r, pearson_r(d.y, d.x));
    EXPECT_LE(std::abs(r), 1.0);
    std::vector<double> pos, neg;
    for (double v : d.x) {
      pos.push_back(3.5 * v + 12.0);
      neg.push_back(-0.25 * v - 4.0);
    }
    EXPECT_NEAR(pearson_r(pos, d.y), r, 1e-12);
    EXPECT_NEAR(pearson_r(neg, d.y), -r, 1e-12);
  }
}

TEST(StatsProperties, NormalEquationIdentities) {
  std::mt19937_64 gen(6);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto d = random_data(gen);
    const auto s = ols_fit(d.x, d.y);
    const double n = static_cast<double>(d.x.size());
    double sum = 0.0, dot = 0.0, sse = 0.0, ybar = 0.0, xscale = 0.0;
    for (double v : d.y) ybar += v / n;
    for (std::size_t i = 0; i < d.x.size(); ++i) {
      const double res = d.y[i] - (s.intercept + s.slope * d.x[i]);
      sum += res;
      dot += d.x[i] * res;
      sse += res * res;
      xscale = std::max(xscale, std::abs(d.x[i]));
    }
    const double yscale = std::max(std::abs(ybar), 1.0);
    EXPECT_LE(std::abs(sum), 1e-9 * n * yscale);
    EXPECT_LE(std::abs(dot), 1e-9 * n * yscale * std::max(xscale, 1.0));
    const double r = pearson_r(d.x, d.y);
    EXPECT_NEAR(s.r2, r * r, 1e-12);
    EXPECT_EQ(s.adj_r2, 1.0 - (1.0 - s.r2) * (n - 1.0) / (n - 2.0));
    EXPECT_NEAR(s.se_estimate, std::sqrt(sse / (n - 2.0)), 1e-9 * (1 + s.se_estimate));
    EXPECT_LE(s.adj_r2, s.r2);
  }
}

}  // namespace
}  // namespace maintlm

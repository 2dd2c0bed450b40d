#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace maintlm {

// Simple (one-predictor) least-squares regression of y on x.
struct RegressionSummary {
  double slope = 0.0;
  double intercept = 0.0;
  double r = 0.0;
  double r2 = 0.0;
  double adj_r2 = 0.0;
  double se_estimate = 0.0;
  std::size_t n = 0;
};

double pearson_r(std::span<const double> xs, std::span<const double> ys);

// Requires n >= 3 and a non-constant predictor.
RegressionSummary ols_fit(std::span<const double> xs, std::span<const double> ys);

// 1 - (1 - r2)(n - 1)/(n - 2).
double adjusted_r2(double r2, std::size_t n);

double mse(std::span<const double> residuals);

// Equal-width bins over [min, max]; bins are [e_i, e_{i+1}) except the last,
// which is closed. When every residual is equal there is one zero-width bin.
struct ErrorHistogram {
  std::vector<double> bin_edges;
  std::vector<std::size_t> counts;
  double zero_mark = 0.0;
};

inline constexpr std::size_t kDefaultBins = 20;

ErrorHistogram error_histogram(std::span<const double> residuals,
                               std::size_t bins = kDefaultBins);

}  // namespace maintlm

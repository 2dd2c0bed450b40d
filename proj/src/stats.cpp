#include "maintlm/stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "maintlm/error.hpp"

namespace maintlm {
namespace {

constexpr const char* kModule = "stats";

double mean(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

struct Moments {
  double mean_x, mean_y, sxx, syy, sxy;
};

// Centered two-pass sums.
Moments moments(std::span<const double> xs, std::span<const double> ys) {
  Moments m{mean(xs), mean(ys), 0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - m.mean_x;
    const double dy = ys[i] - m.mean_y;
    m.sxx += dx * dx;
    m.syy += dy * dy;
    m.sxy += dx * dy;
  }
  return m;
}

void require_paired(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw Error(kModule, ErrorKind::kLengthMismatch,
                "series lengths differ (" + std::to_string(xs.size()) + " vs " +
                    std::to_string(ys.size()) + ")");
  }
}

}  // namespace

double pearson_r(std::span<const double> xs, std::span<const double> ys) {
  require_paired(xs, ys);
  if (xs.size() < 2) {
    throw Error(kModule, ErrorKind::kTooFewSamples, "correlation needs at least 2 points");
  }
  const auto m = moments(xs, ys);
  if (m.sxx == 0.0 || m.syy == 0.0) {
    throw Error(kModule, ErrorKind::kZeroVariance, "correlation of a constant series");
  }
  return std::clamp(m.sxy / std::sqrt(m.sxx * m.syy), -1.0, 1.0);
}

double adjusted_r2(double r2, std::size_t n) {
  const auto nd = static_cast<double>(n);
  return 1.0 - (1.0 - r2) * (nd - 1.0) / (nd - 2.0);
}

RegressionSummary ols_fit(std::span<const double> xs, std::span<const double> ys) {
  require_paired(xs, ys);
  if (xs.size() < 3) {
    throw Error(kModule, ErrorKind::kTooFewSamples,
                "regression needs at least 3 points for adjusted R2 and standard error");
  }
  const auto m = moments(xs, ys);
  if (m.sxx == 0.0) {
    throw Error(kModule, ErrorKind::kConstantPredictor, "constant predictor");
  }
  RegressionSummary s;
  s.n = xs.size();
  s.slope = m.sxy / m.sxx;
  s.intercept = m.mean_y - s.slope * m.mean_x;

  double sse = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double res = ys[i] - (s.intercept + s.slope * xs[i]);
    sse += res * res;
  }
  // A constant response is fit exactly; report r = 0 rather than divide by zero.
  s.r = m.syy == 0.0 ? 0.0 : std::clamp(m.sxy / std::sqrt(m.sxx * m.syy), -1.0, 1.0);
  s.r2 = s.r * s.r;
  s.adj_r2 = adjusted_r2(s.r2, s.n);
  s.se_estimate = std::sqrt(sse / static_cast<double>(s.n - 2));
  return s;
}

double mse(std::span<const double> residuals) {
  if (residuals.empty()) {
    throw Error(kModule, ErrorKind::kEmptyInput, "mse of an empty residual list");
  }
  double sse = 0.0;
  for (double r : residuals) sse += r * r;
  return sse / static_cast<double>(residuals.size());
}

ErrorHistogram error_histogram(std::span<const double> residuals, std::size_t bins) {
  if (residuals.empty()) {
    throw Error(kModule, ErrorKind::kEmptyInput, "histogram of an empty residual list");
  }
  if (bins == 0) throw Error(kModule, ErrorKind::kInvalidArgument, "histogram needs >= 1 bin");
  for (double r : residuals) {
    if (!std::isfinite(r)) throw Error(kModule, ErrorKind::kNonFinite, "non-finite residual");
  }
  const auto [lo_it, hi_it] = std::minmax_element(residuals.begin(), residuals.end());
  const double lo = *lo_it;
  const double hi = *hi_it;

  ErrorHistogram h;
  if (lo == hi) {
    h.bin_edges = {lo, hi};
    h.counts = {residuals.size()};
    return h;
  }
  const double width = (hi - lo) / static_cast<double>(bins);
  h.bin_edges.resize(bins + 1);
  for (std::size_t i = 0; i < bins; ++i) h.bin_edges[i] = lo + width * static_cast<double>(i);
  h.bin_edges[bins] = hi;
  h.counts.assign(bins, 0);
  for (double r : residuals) {
    // Index from the edges themselves so placement agrees with the stated
    // [e_i, e_{i+1}) rule even where (r - lo) / width rounds badly.
    const auto it = std::upper_bound(h.bin_edges.begin(), h.bin_edges.end(), r);
    auto idx = static_cast<std::size_t>(it - h.bin_edges.begin());
    idx = idx == 0 ? 0 : idx - 1;
    if (idx >= bins) idx = bins - 1;
    ++h.counts[idx];
  }
  return h;
}

}  // namespace maintlm

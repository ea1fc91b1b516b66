#pragma once
// Small statistics toolbox: monotone piecewise-cubic interpolation
// (Fritsch-Carlson PCHIP) and Kolmogorov-Smirnov distances.

#include <betalab/errors.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace betalab {

/// Monotone piecewise-cubic Hermite interpolant (PCHIP).  Shape-preserving:
/// if the data are monotone the interpolant is monotone.  Evaluation clamps
/// to the end values outside the node range.
class pchip {
 public:
  pchip(std::vector<double> x, std::vector<double> y)
      : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n) throw validation_error("pchip: need >= 2 nodes");
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (!(x_[i] < x_[i + 1])) throw validation_error("pchip: nodes must increase");
    }
    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      h[i] = x_[i + 1] - x_[i];
      delta[i] = (y_[i + 1] - y_[i]) / h[i];
    }
    d_.assign(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (delta[i - 1] == 0.0 || delta[i] == 0.0 || (delta[i - 1] > 0) != (delta[i] > 0)) {
        d_[i] = 0.0;
      } else {
        const double w1 = 2.0 * h[i] + h[i - 1];
        const double w2 = h[i] + 2.0 * h[i - 1];
        d_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
      }
    }
    d_[0] = endpoint(h[0], n > 2 ? h[1] : h[0], delta[0], n > 2 ? delta[1] : delta[0]);
    d_[n - 1] = endpoint(h[n - 2], n > 2 ? h[n - 3] : h[n - 2], delta[n - 2],
                         n > 2 ? delta[n - 3] : delta[n - 2]);
  }

  double operator()(double q) const {
    if (q <= x_.front()) return y_.front();
    if (q >= x_.back()) return y_.back();
    const std::size_t i = static_cast<std::size_t>(
        std::upper_bound(x_.begin(), x_.end(), q) - x_.begin() - 1);
    const double h = x_[i + 1] - x_[i];
    const double s = (q - x_[i]) / h;
    const double s2 = s * s, s3 = s2 * s;
    const double h00 = 2 * s3 - 3 * s2 + 1;
    const double h10 = s3 - 2 * s2 + s;
    const double h01 = -2 * s3 + 3 * s2;
    const double h11 = s3 - s2;
    return h00 * y_[i] + h * h10 * d_[i] + h01 * y_[i + 1] + h * h11 * d_[i + 1];
  }

 private:
  // One-sided three-point endpoint derivative with the standard monotone
  // clamps.
  static double endpoint(double h0, double h1, double d0, double d1) {
    double d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (d * d0 <= 0.0) return 0.0;
    if ((d0 > 0) != (d1 > 0) && std::abs(d) > 3.0 * std::abs(d0)) return 3.0 * d0;
    return d;
  }

  std::vector<double> x_, y_, d_;
};

/// One-sample Kolmogorov-Smirnov statistic sup_x |F_n(x) - F(x)| against a
/// reference CDF.  The sample is copied and sorted internally.
inline double ks_statistic_vs_cdf(std::vector<double> sample,
                                  const std::function<double(double)>& cdf) {
  if (sample.empty()) throw validation_error("ks_statistic_vs_cdf: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double ks = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    ks = std::max(ks, std::abs(f - double(i + 1) / n));
    ks = std::max(ks, std::abs(f - double(i) / n));
  }
  return ks;
}

/// Two-sample Kolmogorov-Smirnov statistic sup_x |F_a(x) - F_b(x)|.
inline double ks_statistic_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw validation_error("ks_statistic_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  double ks = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    ks = std::max(ks, std::abs(double(i) / na - double(j) / nb));
  }
  return ks;
}

}  // namespace betalab

#pragma once
// Exact mixed moments of the beta polymer partition function.
//
// The k-point function u(t, n1..nk) = E[Z(t,n1)...Z(t,nk)] of the polymer
// with flat initial data (Z(0,n) = 1 for n >= 1, and Z(t,n) = 0 whenever
// n < 1) satisfies a closed evolution equation on the Weyl chamber
// n1 >= n2 >= ... >= nk: grouping equal coordinates into clusters of sizes
// c_i, one polymer step expands each cluster binomially and averages the
// shared beta weight,
//
//   u(t+1, nvec) = sum over (j_1..j_l), j_i in 0..c_i, of
//       prod_i C(c_i, j_i) (nu-mu)_{j_i} (mu)_{c_i - j_i} / (nu)_{c_i}
//       * u(t, nvec with the last j_i coordinates of cluster i decremented).
//
// This file implements that recursion with memoization, the beta moment
// ratio it is built from, integer partition enumeration (used by the
// single-contour moment formula), and Laplace transforms E[e^{uZ}] as
// truncated moment series with a certified remainder bound.

#include <betalab/errors.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <map>
#include <utility>
#include <vector>

namespace betalab {

/// Rising factorial (x)_n = x (x+1) ... (x+n-1); (x)_0 = 1.
inline double pochhammer(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x + i;
  return r;
}

/// Binomial coefficient as a double; exact for the small arguments used here.
inline double binomial_coefficient(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / i;
  return r;
}

/// E[(1-B)^j B^(c-j)] for B ~ Beta(mu, nu - mu):
/// (nu-mu)_j (mu)_(c-j) / (nu)_c.
inline double beta_mixed_moment(int j, int c, double mu, double nu) {
  if (!(0.0 < mu && mu < nu)) {
    throw validation_error("beta_mixed_moment: need 0 < mu < nu");
  }
  if (j < 0 || c < j) {
    throw validation_error("beta_mixed_moment: need 0 <= j <= c");
  }
  return pochhammer(nu - mu, j) * pochhammer(mu, c - j) / pochhammer(nu, c);
}

/// All integer partitions of k as weakly decreasing part vectors,
/// e.g. 3 -> {3}, {2,1}, {1,1,1}.
inline std::vector<std::vector<int>> integer_partitions(int k) {
  if (k < 0) throw validation_error("integer_partitions: k must be >= 0");
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  // Depth-first with a nonincreasing part cap keeps parts sorted.
  auto rec = [&](auto&& self, int remaining, int maxpart) -> void {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    for (int p = std::min(remaining, maxpart); p >= 1; --p) {
      cur.push_back(p);
      self(self, remaining - p, p);
      cur.pop_back();
    }
  };
  rec(rec, k, k);
  return out;
}

/// Memoized evaluator for the exact mixed-moment recursion.  One instance
/// holds one memo table; instances are independent and not thread-shared.
class moment_calculator {
 public:
  moment_calculator(double mu, double nu) : mu_(mu), nu_(nu) {
    if (!(0.0 < mu && mu < nu)) {
      throw validation_error("moment_calculator: need 0 < mu < nu");
    }
  }

  double mu() const { return mu_; }
  double nu() const { return nu_; }

  /// E[Z(t,n1)...Z(t,nk)] with flat initial data Z(0,n) = 1 for n >= 1.
  /// Coordinates may be given in any order.  Equal to the wedge polymer
  /// moments whenever every coordinate satisfies 1 <= n_i <= t+1.
  double mixed_moment(int t, std::vector<int> nvec) {
    if (t < 0) throw validation_error("mixed_moment: t must be >= 0");
    if (nvec.empty()) return 1.0;
    check_budget(t, static_cast<int>(nvec.size()));
    std::sort(nvec.begin(), nvec.end(), std::greater<int>());
    return eval(t, std::move(nvec));
  }

  /// E[Z(t,n)^k].
  double moment(int t, int n, int k) {
    if (k < 0) throw validation_error("moment: k must be >= 0");
    if (k == 0) return 1.0;
    return mixed_moment(t, std::vector<int>(static_cast<std::size_t>(k), n));
  }

 private:
  // The reachable state count is bounded by the number of weakly decreasing
  // k-vectors in a window of width t+1, i.e. C(k+t, t).  Refuse inputs whose
  // bound is large enough to exhaust memory or time.
  void check_budget(int t, int k) const {
    if (t > 12 || k > 24) {
      throw validation_error("mixed_moment: size limits exceeded (t <= 12, k <= 24)");
    }
    if (binomial_coefficient(k + t, std::min(k, t)) > 5e6) {
      throw validation_error("mixed_moment: combinatorial budget exceeded");
    }
  }

  // n is weakly decreasing.  Invariant maintained by construction below.
  double eval(int t, std::vector<int> n) {
    // Any coordinate below 1 kills the product: Z(t, n) = 0 for n < 1.
    if (!n.empty() && n.back() < 1) return 0.0;
    // Coordinates above t are deterministically 1 under flat initial data
    // (both parents in the recursion stay in that region), so drop them.
    std::size_t lead = 0;
    while (lead < n.size() && n[lead] > t) ++lead;
    if (lead > 0) n.erase(n.begin(), n.begin() + static_cast<std::ptrdiff_t>(lead));
    if (n.empty()) return 1.0;
    // Here t >= 1 and 1 <= n_i <= t for all i.
    const auto key = std::make_pair(t, n);
    if (const auto it = memo_.find(key); it != memo_.end()) return it->second;

    // Cluster equal coordinates.
    std::vector<int> value, count;
    for (std::size_t i = 0; i < n.size();) {
      std::size_t j = i;
      while (j < n.size() && n[j] == n[i]) ++j;
      value.push_back(n[i]);
      count.push_back(static_cast<int>(j - i));
      i = j;
    }
    const int nclust = static_cast<int>(value.size());

    // Per-cluster expansion weights w_i[j] for j decremented coordinates.
    std::vector<std::vector<double>> w(static_cast<std::size_t>(nclust));
    for (int i = 0; i < nclust; ++i) {
      const int c = count[static_cast<std::size_t>(i)];
      w[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(c) + 1);
      for (int j = 0; j <= c; ++j) {
        w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            binomial_coefficient(c, j) * beta_mixed_moment(j, c, mu_, nu_);
      }
    }

    // Odometer over (j_1..j_l).
    std::vector<int> jv(static_cast<std::size_t>(nclust), 0);
    std::vector<int> child;
    double total = 0.0;
    for (;;) {
      double weight = 1.0;
      for (int i = 0; i < nclust; ++i) {
        weight *= w[static_cast<std::size_t>(i)][static_cast<std::size_t>(jv[static_cast<std::size_t>(i)])];
      }
      child.clear();
      for (int i = 0; i < nclust; ++i) {
        const int m = value[static_cast<std::size_t>(i)];
        const int c = count[static_cast<std::size_t>(i)];
        const int j = jv[static_cast<std::size_t>(i)];
        for (int a = 0; a < c - j; ++a) child.push_back(m);
        for (int a = 0; a < j; ++a) child.push_back(m - 1);
      }
      total += weight * eval(t - 1, child);
      // Advance the odometer.
      int pos = 0;
      while (pos < nclust) {
        if (++jv[static_cast<std::size_t>(pos)] <= count[static_cast<std::size_t>(pos)]) break;
        jv[static_cast<std::size_t>(pos)] = 0;
        ++pos;
      }
      if (pos == nclust) break;
    }
    memo_.emplace(key, total);
    return total;
  }

  double mu_, nu_;
  std::map<std::pair<int, std::vector<int>>, double> memo_;
};

/// Convenience wrapper: a fresh calculator per call.
inline double exact_moments(int t, const std::vector<int>& nvec, double mu, double nu) {
  moment_calculator mc(mu, nu);
  return mc.mixed_moment(t, nvec);
}

/// Truncated exponential moment series for E[e^{u Z(t,n)}].
struct laplace_series {
  std::complex<double> value;    // sum_{k<=K} u^k E[Z^k] / k!
  double remainder_bound;        // certified bound on the dropped tail
  int truncation;                // K
};

/// Since 0 <= Z <= 1, every moment is in [0,1] and the dropped tail obeys
/// |sum_{k>K} u^k m_k / k!| <= |u|^{K+1}/(K+1)! * 1/(1 - |u|/(K+2)),
/// valid whenever |u| < K+2.
inline laplace_series laplace_from_moments(moment_calculator& mc, int t, int n,
                                           std::complex<double> u, int K) {
  if (K < 0) throw validation_error("laplace_from_moments: K must be >= 0");
  const double au = std::abs(u);
  if (!(au < K + 2)) {
    throw validation_error("laplace_from_moments: need |u| < K+2 for the remainder bound");
  }
  std::complex<double> sum = 1.0;
  std::complex<double> upow = 1.0;
  double kfact = 1.0;
  for (int k = 1; k <= K; ++k) {
    upow *= u;
    kfact *= k;
    sum += upow * mc.moment(t, n, k) / kfact;
  }
  double tail = 1.0;
  for (int k = 1; k <= K + 1; ++k) tail *= au / k;
  tail /= 1.0 - au / (K + 2);
  return {sum, tail, K};
}

/// Smallest K with |u|^{K+1}/(K+1)! * 1/(1-|u|/(K+2)) <= tol.
inline int laplace_truncation_order(double abs_u, double tol) {
  if (!(tol > 0.0)) throw validation_error("laplace_truncation_order: tol must be > 0");
  double term = 1.0;
  for (int K = 0; K <= 60; ++K) {
    term *= abs_u / (K + 1);  // |u|^{K+1} / (K+1)!
    if (abs_u < K + 2 && term / (1.0 - abs_u / (K + 2)) <= tol) return K;
  }
  throw validation_error("laplace_truncation_order: no admissible truncation <= 60");
}

}  // namespace betalab

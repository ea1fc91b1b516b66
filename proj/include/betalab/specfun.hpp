#pragma once
// Special functions: complex log-gamma (continuous branch), real polygamma
// functions psi_k for k = 0..4, and Gauss-Legendre quadrature nodes.
//
// log_gamma implements the standard analytic continuation of log Gamma with a
// branch cut on (-inf, 0]: exp(log_gamma(z)) == Gamma(z) and the imaginary
// part is continuous along any path avoiding the cut.  This is NOT the
// principal logarithm of Gamma(z); the two differ by multiples of 2*pi*i.

#include <betalab/errors.hpp>

#include <cassert>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace betalab {

using cplx = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;

namespace detail {

// Bernoulli numbers B_2, B_4, ..., B_20 for Stirling-type expansions.
inline constexpr double bernoulli2n[10] = {
    1.0 / 6.0,      -1.0 / 30.0,     1.0 / 42.0,      -1.0 / 30.0,
    5.0 / 66.0,     -691.0 / 2730.0, 7.0 / 6.0,       -3617.0 / 510.0,
    43867.0 / 798.0, -174611.0 / 330.0};

// Stirling series for log Gamma, valid for Re(z) large (we shift to >= 12).
// log Gamma(z) ~ (z - 1/2) Log z - z + log(2 pi)/2 + sum B_2n / (2n(2n-1) z^(2n-1)).
inline cplx log_gamma_stirling(cplx z) {
  const cplx lz = std::log(z);
  cplx s = (z - 0.5) * lz - z + 0.5 * std::log(2.0 * pi);
  const cplx z2 = z * z;
  cplx zp = z;
  for (int n = 1; n <= 10; ++n) {
    s += bernoulli2n[n - 1] / (double(2 * n) * double(2 * n - 1) * zp);
    zp *= z2;
  }
  return s;
}

// log sin(pi z), continuous for Im(z) != 0, matching the branch that makes
// the reflection formula produce the continuous log-gamma.  For Im(z) > 0,
//   sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 i pi z}),
// and |e^{2 i pi z}| < 1 keeps the principal Log of the last factor
// continuous.  Im(z) < 0 follows by conjugation.
inline cplx log_sin_pi(cplx z) {
  if (z.imag() > 0.0) {
    const cplx w = std::exp(cplx(0.0, 2.0 * pi) * z);
    return -std::log(2.0) + cplx(0.0, 0.5 * pi) - cplx(0.0, pi) * z +
           std::log(1.0 - w);
  }
  if (z.imag() < 0.0) {
    return std::conj(log_sin_pi(std::conj(z)));
  }
  // Real argument: caller guarantees sin(pi z) > 0 (i.e. z in (2k, 2k+1)).
  return std::log(std::sin(pi * z.real()));
}

} // namespace detail

/// Continuous-branch complex log-gamma.  Cut on the non-positive real axis;
/// poles of Gamma (z = 0, -1, -2, ...) are invalid inputs.
inline cplx log_gamma(cplx z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real())) {
    throw std::domain_error("log_gamma: pole at non-positive integer");
  }
  if (z.real() >= 0.5) {
    // Shift until Re >= 12, then Stirling.  Each Log is principal; for
    // Re(z) > 0 all shifted points stay in the right half-plane, so the sum
    // is continuous there.
    cplx shift(0.0, 0.0);
    while (z.real() < 12.0) {
      shift += std::log(z);
      z += 1.0;
    }
    return detail::log_gamma_stirling(z) - shift;
  }
  // Reflection: log Gamma(z) = log pi - log sin(pi z) - log Gamma(1 - z).
  return std::log(pi) - detail::log_sin_pi(z) - log_gamma(1.0 - z);
}

/// Real log-gamma for positive arguments (thin wrapper over std::lgamma).
inline double log_gamma(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("log_gamma(real): argument must be positive");
  }
  return std::lgamma(x);
}

/// Polygamma function psi_k(x) = d^(k+1)/dx^(k+1) log Gamma(x) for real
/// x > 0 and 0 <= k <= 4.  psi_0 is the digamma function.
inline double polygamma(int k, double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("polygamma: argument must be positive");
  }
  if (k < 0 || k > 4) {
    throw std::domain_error("polygamma: order must be in 0..4");
  }
  // Upward recurrence psi_k(x) = psi_k(x+1) + (-1)^(k+1) k! / x^(k+1) moves
  // the argument into the asymptotic regime.
  double acc = 0.0;
  const double sign = (k % 2 == 0) ? -1.0 : 1.0;
  double kfact = 1.0;
  for (int j = 2; j <= k; ++j) kfact *= j;
  while (x < 14.0) {
    acc += sign * kfact / std::pow(x, k + 1);
    x += 1.0;
  }
  // Asymptotic series.
  double s = 0.0;
  if (k == 0) {
    s = std::log(x) - 0.5 / x;
    double z2 = 1.0 / (x * x), zp = z2;
    for (int n = 1; n <= 10; ++n) {
      s -= detail::bernoulli2n[n - 1] / (2.0 * n) * zp;
      zp *= z2;
    }
  } else {
    // psi_k(x) ~ (-1)^(k-1) [ (k-1)!/x^k + k!/(2 x^(k+1))
    //            + sum_n B_2n (2n+k-1)! / (2n)! / x^(2n+k) ].
    double km1fact = 1.0;
    for (int j = 2; j <= k - 1; ++j) km1fact *= j;
    s = km1fact / std::pow(x, k) + kfact / (2.0 * std::pow(x, k + 1));
    for (int n = 1; n <= 10; ++n) {
      // (2n+k-1)! / (2n)!  =  (2n+1)(2n+2)...(2n+k-1)
      double r = 1.0;
      for (int j = 2 * n + 1; j <= 2 * n + k - 1; ++j) r *= j;
      s += detail::bernoulli2n[n - 1] * r / std::pow(x, 2 * n + k);
    }
    if (k % 2 == 0) s = -s;
  }
  return acc + s;
}

inline double digamma(double x) { return polygamma(0, x); }
inline double trigamma(double x) { return polygamma(1, x); }

/// log Beta(a, b) for positive real arguments.
inline double log_beta(double a, double b) {
  return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

/// Integer power of a complex number by repeated squaring (n may be
/// negative).  Exact branch handling: no logarithms involved.
inline cplx ipow(cplx z, long long n) {
  if (n < 0) return 1.0 / ipow(z, -n);
  cplx r(1.0, 0.0);
  while (n > 0) {
    if (n & 1) r *= z;
    z *= z;
    n >>= 1;
  }
  return r;
}

/// Gauss-Legendre nodes and weights on [-1, 1], computed by Newton iteration
/// on the Legendre polynomial recurrence.
struct gauss_legendre_rule {
  std::vector<double> node;
  std::vector<double> weight;

  explicit gauss_legendre_rule(int order) : node(order), weight(order) {
    assert(order >= 1);
    const int n = order;
    // Evaluates P_n(x), returning {P_n, P_{n-1}}.
    const auto legendre = [n](double x) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * x * p2 - j * p3) / (j + 1.0);
      }
      return std::pair<double, double>(p1, p2);
    };
    for (int i = 0; i < (n + 1) / 2; ++i) {
      // Chebyshev-like initial guess, refined by Newton iteration.
      double x = std::cos(pi * (i + 0.75) / (n + 0.5));
      for (int it = 0; it < 100; ++it) {
        const auto [p1, p2] = legendre(x);
        const double dp = n * (x * p1 - p2) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      const auto [p1, p2] = legendre(x);
      const double dp = n * (x * p1 - p2) / (x * x - 1.0);
      node[i] = -x;
      node[n - 1 - i] = x;
      weight[i] = 2.0 / ((1.0 - x * x) * dp * dp);
      weight[n - 1 - i] = weight[i];
    }
  }
};

/// Composite Gauss-Legendre quadrature of a complex-valued function along a
/// straight segment [a, b] in the complex plane, split into `panels` panels
/// of `order` points each.  Returns sum of f(z) dz.
template <typename F>
cplx integrate_segment(F&& f, cplx a, cplx b, int panels, int order) {
  static thread_local int cached_order = -1;
  static thread_local std::vector<double> xs, ws;
  if (order != cached_order) {
    gauss_legendre_rule rule(order);
    xs = rule.node;
    ws = rule.weight;
    cached_order = order;
  }
  const cplx step = (b - a) / double(panels);
  cplx total(0.0, 0.0);
  for (int p = 0; p < panels; ++p) {
    const cplx lo = a + step * double(p);
    const cplx mid = lo + 0.5 * step;
    const cplx half = 0.5 * step;
    for (std::size_t q = 0; q < xs.size(); ++q) {
      total += ws[q] * f(mid + half * xs[q]) * half;
    }
  }
  return total;
}

namespace detail {

/// Trapezoid nodes on the circle |z| = rho, placed at half-step angles so
/// they come in conjugate pairs (and never sit on the negative real axis for
/// even N).  w[i] is the dz weight (2 pi / N) i z[i].
inline void circle_nodes(double rho, int N, std::vector<cplx>& z, std::vector<cplx>& w) {
  z.resize(static_cast<std::size_t>(N));
  w.resize(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) {
    const double phi = 2.0 * pi * (i + 0.5) / N;
    const cplx node = rho * cplx(std::cos(phi), std::sin(phi));
    z[static_cast<std::size_t>(i)] = node;
    w[static_cast<std::size_t>(i)] = (2.0 * pi / N) * cplx(0.0, 1.0) * node;
  }
}

/// Doubling driver shared by the contour integrators.  Calls eval_at with
/// doubling node counts until two successive values agree to tol, then
/// returns the real part; rejects residual imaginary parts.
inline double stabilize(const std::function<cplx(int)>& eval_at, int start, int cap,
                        double tol, const char* what) {
  cplx prev = eval_at(start);
  for (int N = 2 * start; N <= cap; N *= 2) {
    const cplx cur = eval_at(N);
    const double scale = std::max(1.0, std::abs(cur));
    if (std::abs(cur - prev) <= tol * scale) {
      if (std::abs(cur.imag()) > 1e-9 * scale) {
        throw convergence_error(std::string(what) + ": residual imaginary part exceeds tolerance");
      }
      return cur.real();
    }
    prev = cur;
  }
  throw convergence_error(std::string(what) + ": node doubling cap reached without convergence");
}

} // namespace detail

} // namespace betalab

#pragma once
// Fredholm determinant representations of Laplace-transform and tail
// observables, evaluated by Nystrom discretization on small circular
// contours.
//
// Three families are implemented.
//
//  * Mellin-Barnes kernels (polymer partition function and walk tail):
//        E[e^{u Z}] = det(I + K_u) on L^2(C_0),
//        K_u(v,v') = (1/2 pi i) int_{1/2 - i inf}^{1/2 + i inf}
//                    Gamma(-s) Gamma(1+s) (-u)^s  g(v)/g(v+s)  ds / (s + v - v'),
//    with Gamma(-s)Gamma(1+s) = -pi / sin(pi s) = -pi / cosh(pi y) on
//    s = 1/2 + i y, u real negative (supplied as log(-u) so the transform
//    parameter may be exponentially large), and
//        g(v) = (Gamma(v)/Gamma(nu+v))^n (Gamma(nu+v)/Gamma(mu+v))^t Gamma(nu+v)
//    for the polymer partition function Z(t,n) (1 <= n <= t+1), or
//        g(v) = (Gamma(v)/Gamma(a+v))^{(t-x)/2}
//               (Gamma(a+b+v)/Gamma(a+v))^{(t+x)/2} Gamma(v)
//    for the quenched walk tail P(t,x) (x = t mod 2, |x| <= t).  C_0 is a
//    small positively oriented circle about the origin; its radius is kept
//    below 1/8th of min(nu,1) (resp. min(a+b,1)) so that the pole of the
//    s-integrand at s = v' - v stays strictly left of the integration line.
//
//  * Series kernel (|u| < 1 only): closing the s-contour to the right turns
//    the integral into sum_{k>=1} u^k g(v)/g(v+k) / (k + v - v'), and the
//    ratio g(v)/g(v+k) is the rational product f(v) f(v+1) ... f(v+k-1) with
//    f(v) = ((nu+v)/v)^n ((mu+v)/(nu+v))^t / (nu+v).  This provides an
//    independent cross-check of the Mellin-Barnes machinery (different
//    quadrature, no gamma-function evaluation).
//
//  * First-passage tail kernel:  P(T(n,m) > r) = det(I + K_r) on L^2(C_0'),
//        K_r(v,v') = (1/2 pi i) int_C  (-e^{r s}/s)  g(v)/g(v+s)  ds/(s+v-v'),
//        g(v) = ((a+v)/v)^n ((a+v)/(a+b+v))^m / v,
//    where C runs upward through 1/2 with its tails bent into the left
//    half-plane along rays of direction e^{+-3 i pi/4} (the factor e^{r s}
//    then decays exponentially); all poles of the integrand (s = 0,
//    s = v'-v, s = -a-v) lie on the inside of the bend.
//
// The determinant is the Fredholm determinant of the integral operator
// acting with measure dv/(2 pi i) on the circle; the Nystrom weights are
// v_j / N accordingly.  Circle nodes are doubled until two successive
// determinant values agree to `tolerance`.
//
// All gamma-function ratios are evaluated as exp of differences of the
// continuous-branch complex log-gamma; since only exp of such combinations
// is used, branch constants are immaterial.

#include <betalab/errors.hpp>
#include <betalab/moments.hpp>
#include <betalab/contours.hpp>
#include <betalab/specfun.hpp>

#include <Eigen/Core>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

namespace betalab {

/// Quadrature controls for the Fredholm determinants.  The defaults are the
/// operating point; the knobs exist so tests can verify invariance of the
/// results under contour deformations.
struct fredholm_options {
  double radius_scale = 1.0;   ///< multiplies the default circle radius
  double s_step = 0.04;        ///< trapezoid step on the vertical s-line
  double s_tail_threshold = 1e-14;  ///< per-row relative truncation threshold
  int s_consecutive = 50;      ///< consecutive sub-threshold nodes to stop
  int min_nodes = 16;          ///< starting circle node count
  int max_nodes = 256;         ///< doubling cap for circle nodes
  double tolerance = 1e-8;     ///< successive-doubling agreement target
  double fpp_vertical_half = 1.5;  ///< half-length of the vertical piece (tail kernel)
  double fpp_panel_length = 2.5;   ///< Gauss-Legendre panel length on the rays
  int fpp_order = 16;          ///< Gauss-Legendre order per panel
  double series_tail = 1e-16;  ///< truncation threshold for the series kernel
};

namespace detail {

inline double checked_radius(double rho_base, const fredholm_options& opt, const char* what) {
  const double rho = opt.radius_scale * rho_base;
  if (!(rho > 0.0)) throw validation_error(std::string(what) + ": contour radius must be positive");
  // The pole of the s-integrand at s = v' - v satisfies |v' - v| <= 2 rho;
  // it must stay strictly left of the vertical line Re s = 1/2.
  if (!(2.0 * rho < 0.45)) {
    throw validation_error(std::string(what) + ": contour radius too large (pole separation)");
  }
  return rho;
}

/// -pi / cosh(pi y), computed without overflow for large |y|.
inline double neg_pi_sech(double y) {
  const double e = std::exp(-pi * std::abs(y));
  return -2.0 * pi * e / (1.0 + e * e);
}

/// Nystrom matrix + determinant given per-row lists of (s-node, weighted
/// integrand factor) pairs: det(I + M), M_ij = (v_j/N) sum_k F_ik / (s_ik + v_i - v_j).
inline cplx nystrom_det(const std::vector<cplx>& v,
                        const std::vector<std::vector<cplx>>& srow,
                        const std::vector<std::vector<cplx>>& frow) {
  const int N = static_cast<int>(v.size());
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(N, N);
  for (int i = 0; i < N; ++i) {
    const auto& sl = srow[static_cast<std::size_t>(i)];
    const auto& fl = frow[static_cast<std::size_t>(i)];
    for (int j = 0; j < N; ++j) {
      cplx sum(0.0, 0.0);
      const cplx base = v[static_cast<std::size_t>(i)] - v[static_cast<std::size_t>(j)];
      for (std::size_t k = 0; k < sl.size(); ++k) {
        sum += fl[k] / (sl[k] + base);
      }
      A(i, j) += sum * (v[static_cast<std::size_t>(j)] / double(N));
    }
  }
  return Eigen::PartialPivLU<Eigen::MatrixXcd>(A).determinant();
}

/// Builds the per-row s-grid for a Mellin-Barnes kernel with the given log-g
/// function and log(-u), then evaluates the Nystrom determinant at N circle
/// nodes of radius rho.  The s-line trapezoid uses half-offset nodes
/// s = 1/2 + i (m + 1/2) h (m = 0, 1, ...) and their conjugates, truncated
/// per row once `s_consecutive` successive node pairs fall below
/// `s_tail_threshold` times the row maximum.
inline cplx mb_det_at(int N, double rho, const std::function<cplx(cplx)>& log_g,
                      double log_minus_u, const fredholm_options& opt) {
  std::vector<cplx> v, wz;
  circle_nodes(rho, N, v, wz);
  const double h = opt.s_step;
  const int m_cap = 8000;
  std::vector<std::vector<cplx>> srow(static_cast<std::size_t>(N));
  std::vector<std::vector<cplx>> frow(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) {
    const cplx vi = v[static_cast<std::size_t>(i)];
    const cplx lg_vi = log_g(vi);
    auto& sl = srow[static_cast<std::size_t>(i)];
    auto& fl = frow[static_cast<std::size_t>(i)];
    sl.reserve(1024);
    fl.reserve(1024);
    double rowmax = 0.0;
    int consec = 0;
    bool done = false;
    for (int m = 0; m < m_cap && !done; ++m) {
      const double y = (m + 0.5) * h;
      const double sech = neg_pi_sech(y);  // -pi / cosh(pi y)
      double pairmax = 0.0;
      for (int sign = 0; sign < 2; ++sign) {
        const cplx s(0.5, sign == 0 ? y : -y);
        // (h / 2 pi) * (-pi sech) * (-u)^s * g(v)/g(v+s)
        const cplx val = (h / (2.0 * pi)) * sech *
                         std::exp(s * log_minus_u + lg_vi - log_g(vi + s));
        if (!std::isfinite(val.real()) || !std::isfinite(val.imag())) {
          throw convergence_error("fredholm: kernel integrand overflow on the s-line");
        }
        sl.push_back(s);
        fl.push_back(val);
        pairmax = std::max(pairmax, std::abs(val));
      }
      rowmax = std::max(rowmax, pairmax);
      if (m >= 25 && pairmax < opt.s_tail_threshold * rowmax) {
        if (++consec >= opt.s_consecutive) done = true;
      } else {
        consec = 0;
      }
    }
    if (!done) throw convergence_error("fredholm: s-line truncation cap reached");
  }
  return nystrom_det(v, srow, frow);
}

inline double mb_det(double rho_base, const std::function<cplx(cplx)>& log_g,
                     double log_minus_u, const fredholm_options& opt, const char* what) {
  if (std::isnan(log_minus_u) || log_minus_u == std::numeric_limits<double>::infinity()) {
    throw validation_error(std::string(what) + ": log(-u) must be finite or -infinity");
  }
  if (log_minus_u == -std::numeric_limits<double>::infinity()) return 1.0;  // u = 0
  const double rho = checked_radius(rho_base, opt, what);
  return stabilize(
      [&](int N) { return mb_det_at(N, rho, log_g, log_minus_u, opt); },
      opt.min_nodes, opt.max_nodes, opt.tolerance, what);
}

}  // namespace detail

/// Laplace transform E[e^{u Z(t,n)}] of the polymer partition function,
/// 1 <= n <= t+1, as a Fredholm determinant.  The transform parameter is
/// passed as log(-u) (u real, u <= 0; -infinity means u = 0).
inline double bp_laplace_det(int t, int n, double mu, double nu, double log_minus_u,
                             const fredholm_options& opt = {}) {
  if (!(0.0 < mu && mu < nu)) throw validation_error("bp_laplace_det: need 0 < mu < nu");
  if (t < 0 || n < 1 || n > t + 1) {
    throw validation_error("bp_laplace_det: need t >= 0 and 1 <= n <= t+1");
  }
  auto log_g = [=](cplx v) {
    return double(n) * (log_gamma(v) - log_gamma(nu + v)) +
           double(t) * (log_gamma(nu + v) - log_gamma(mu + v)) + log_gamma(nu + v);
  };
  return detail::mb_det(std::min(nu, 1.0) / 8.0, log_g, log_minus_u, opt, "bp_laplace_det");
}

/// Laplace transform E[e^{u P(t,x)}] of the quenched walk tail
/// P(t,x) = P(X_t >= x), x = t mod 2, |x| <= t, as a Fredholm determinant.
inline double rw_laplace_det(int t, int x, double alpha, double beta, double log_minus_u,
                             const fredholm_options& opt = {}) {
  if (!(alpha > 0.0 && beta > 0.0)) throw validation_error("rw_laplace_det: need alpha, beta > 0");
  if (t < 0 || std::abs(x) > t || ((t + x) % 2) != 0) {
    throw validation_error("rw_laplace_det: need |x| <= t and x = t mod 2");
  }
  const int down = (t - x) / 2;  // (t-x)/2
  const int up = (t + x) / 2;    // (t+x)/2
  auto log_g = [=](cplx v) {
    return double(down) * (log_gamma(v) - log_gamma(alpha + v)) +
           double(up) * (log_gamma(alpha + beta + v) - log_gamma(alpha + v)) + log_gamma(v);
  };
  return detail::mb_det(std::min(alpha + beta, 1.0) / 8.0, log_g, log_minus_u, opt,
                        "rw_laplace_det");
}

/// Series form of E[e^{u Z(t,n)}], valid for real |u| < 1: the s-integral is
/// replaced by its residue series at s = 1, 2, 3, ...  Entirely rational
/// (no gamma functions), so it cross-checks the Mellin-Barnes evaluation.
inline double series_laplace_det(int t, int n, double mu, double nu, double u,
                                 const fredholm_options& opt = {}) {
  if (!(0.0 < mu && mu < nu)) throw validation_error("series_laplace_det: need 0 < mu < nu");
  if (t < 0 || n < 1 || n > t + 1) {
    throw validation_error("series_laplace_det: need t >= 0 and 1 <= n <= t+1");
  }
  if (!(std::abs(u) < 1.0)) throw validation_error("series_laplace_det: need |u| < 1");
  if (u == 0.0) return 1.0;
  const double rho = detail::checked_radius(std::min(nu, 1.0) / 8.0, opt, "series_laplace_det");
  const int K = std::min(400, static_cast<int>(
      std::ceil(std::log(opt.series_tail) / std::log(std::abs(u)))) + 1);
  auto eval_at = [&](int N) {
    std::vector<cplx> v, wz;
    detail::circle_nodes(rho, N, v, wz);
    std::vector<std::vector<cplx>> srow(static_cast<std::size_t>(N));
    std::vector<std::vector<cplx>> frow(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) {
      const cplx vi = v[static_cast<std::size_t>(i)];
      auto& sl = srow[static_cast<std::size_t>(i)];
      auto& fl = frow[static_cast<std::size_t>(i)];
      cplx chain(1.0, 0.0);
      double uk = 1.0;
      for (int k = 1; k <= K; ++k) {
        chain *= detail::moment_factor(vi + double(k - 1), n, t, mu, nu);
        uk *= u;
        sl.push_back(cplx(double(k), 0.0));
        fl.push_back(uk * chain);
      }
    }
    return detail::nystrom_det(v, srow, frow);
  };
  return detail::stabilize(eval_at, opt.min_nodes, opt.max_nodes, opt.tolerance,
                           "series_laplace_det");
}

/// Tail probability P(T(n,m) > r) of the first-passage time, r > 0, as a
/// Fredholm determinant with the bent s-contour described in the header.
inline double fpp_tail_det(int n, int m, double a, double b, double r,
                           const fredholm_options& opt = {}) {
  if (!(a > 0.0 && b > 0.0)) throw validation_error("fpp_tail_det: need a, b > 0");
  if (n < 0 || m < 0) throw validation_error("fpp_tail_det: need n, m >= 0");
  if (!(r > 0.0)) throw validation_error("fpp_tail_det: need r > 0");
  const double rho = detail::checked_radius(std::min(a + b, 1.0) / 8.0, opt, "fpp_tail_det");

  // Assemble the s-contour: graded Gauss-Legendre panels on the vertical
  // piece [1/2 - iY, 1/2 + iY], then panels along the two rays
  // s = (1/2 +- iY) + tau e^{+-3 i pi/4} out to where e^{r Re s} has decayed
  // below the series tail.
  const double Y = opt.fpp_vertical_half;
  gauss_legendre_rule rule(opt.fpp_order);
  std::vector<cplx> snode;
  std::vector<cplx> scoef;  // quadrature weight * direction / (2 pi i)
  const cplx inv2pii = 1.0 / cplx(0.0, 2.0 * pi);
  // vertical piece, graded toward y = 0 where the kernel pole comes closest
  const double frac[6] = {0.0, 1.0 / 12.0, 1.0 / 4.0, 1.0 / 2.0, 3.0 / 4.0, 1.0};
  std::vector<double> bounds;
  for (int q = 5; q >= 1; --q) bounds.push_back(-Y * frac[q]);
  for (int q = 0; q <= 5; ++q) bounds.push_back(Y * frac[q]);
  for (std::size_t p = 0; p + 1 < bounds.size(); ++p) {
    const double mid = 0.5 * (bounds[p] + bounds[p + 1]);
    const double half = 0.5 * (bounds[p + 1] - bounds[p]);
    if (half <= 0.0) continue;
    for (int q = 0; q < opt.fpp_order; ++q) {
      snode.push_back(cplx(0.5, mid + half * rule.node[static_cast<std::size_t>(q)]));
      scoef.push_back(rule.weight[static_cast<std::size_t>(q)] * half * cplx(0.0, 1.0) * inv2pii);
    }
  }
  // ray length: solve e^{-r tau/sqrt(2)} (1 + tau) = series_tail
  double tau_max = -std::log(opt.series_tail) * std::sqrt(2.0) / r;
  for (int it = 0; it < 3; ++it) {
    tau_max = (std::log1p(tau_max) - std::log(opt.series_tail)) * std::sqrt(2.0) / r;
  }
  const int n_panels = static_cast<int>(std::ceil(tau_max / opt.fpp_panel_length));
  if (n_panels > 600) throw convergence_error("fpp_tail_det: ray truncation too long (r too small)");
  const cplx dir_up = std::polar(1.0, 3.0 * pi / 4.0);
  const cplx dir_dn = std::conj(dir_up);
  const cplx start_up(0.5, Y);
  const cplx start_dn(0.5, -Y);
  for (int p = 0; p < n_panels; ++p) {
    const double lo = p * opt.fpp_panel_length;
    const double mid = lo + 0.5 * opt.fpp_panel_length;
    const double half = 0.5 * opt.fpp_panel_length;
    for (int q = 0; q < opt.fpp_order; ++q) {
      const double tau = mid + half * rule.node[static_cast<std::size_t>(q)];
      const double w = rule.weight[static_cast<std::size_t>(q)] * half;
      // outgoing upper ray contributes +, incoming lower ray contributes -
      snode.push_back(start_up + tau * dir_up);
      scoef.push_back(w * dir_up * inv2pii);
      snode.push_back(start_dn + tau * dir_dn);
      scoef.push_back(-w * dir_dn * inv2pii);
    }
  }

  auto gratio = [=](cplx v, cplx s) {
    // g(v)/g(v+s) for g(v) = ((a+v)/v)^n ((a+v)/(a+b+v))^m / v
    return ipow((a + v) / (a + v + s), n + m) * ipow((v + s) / v, n) *
           ipow((a + b + v + s) / (a + b + v), m) * ((v + s) / v);
  };
  auto eval_at = [&](int N) {
    std::vector<cplx> v, wz;
    detail::circle_nodes(rho, N, v, wz);
    std::vector<std::vector<cplx>> srow(static_cast<std::size_t>(N));
    std::vector<std::vector<cplx>> frow(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) {
      const cplx vi = v[static_cast<std::size_t>(i)];
      srow[static_cast<std::size_t>(i)] = snode;
      auto& fl = frow[static_cast<std::size_t>(i)];
      fl.resize(snode.size());
      for (std::size_t k = 0; k < snode.size(); ++k) {
        const cplx s = snode[k];
        fl[k] = scoef[k] * (-std::exp(r * s) / s) * gratio(vi, s);
      }
    }
    return detail::nystrom_det(v, srow, frow);
  };
  return detail::stabilize(eval_at, opt.min_nodes, opt.max_nodes, opt.tolerance, "fpp_tail_det");
}

}  // namespace betalab

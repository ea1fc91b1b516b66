#pragma once
// Limit-theorem constants for the two models, parametrized by the critical
// point theta of the steep-descent phase functions.
//
// Random walk (shape parameters alpha, beta):
//   x(theta)     asymptotic velocity of the large-deviation event {X_t >= x t},
//   I(x(theta))  quenched large-deviation rate at that velocity,
//   sigma(theta) scale of the t^{1/3} fluctuations of log P(t, x t).
// The phase function
//   h(z) = I z + (1-x)/2 * log(G(alpha+z)/G(z)) + (1+x)/2 * log(G(alpha+z)/G(alpha+beta+z))
// (G = Gamma) has a double critical point at z = theta: h'(theta) = h''(theta) = 0
// and h'''(theta) = 2 sigma^3 > 0.
//
// Percolation (rates a, b):
//   kappa(theta) lattice slope m/n,   tau(theta) passage-time constant,
//   rho(theta)   scale of the n^{1/3} fluctuations of T(n, kappa n).
// The phase function H(z) = tau z + log(z/(a+z)) + kappa log((a+b+z)/(a+z))
// satisfies H'(theta) = H''(theta) = 0 and H'''(theta) = 2 rho^3 > 0.
//
// Extreme values: for N = floor(e^{c t}) walkers in a common environment, the
// maximum endpoint fluctuates around t*x0 on scale t^{1/3} d with
// x0 = velocity at the rate-c critical point and d = sigma(theta0) / I'(x0).

#include <betalab/errors.hpp>
#include <betalab/specfun.hpp>

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace betalab {

enum class model_kind { random_walk, percolation };

/// Limit constants attached to a critical point theta.  Random-walk runs fill
/// x / rate_I / sigma, percolation runs fill kappa / tau / rho; h3 is the
/// third derivative of the matching phase function at theta (2 sigma^3 resp.
/// 2 rho^3).  `conjectural` is set when the parameters fall outside the
/// window in which the corresponding limit theorem is rigorously known
/// (random walk: uniform weights alpha = beta = 1 and theta < 1/2; the
/// percolation limit theorem has no restriction).
struct theta_constants {
  model_kind kind = model_kind::random_walk;
  double theta = 0;
  double alpha = 0;  ///< shape alpha (random walk) or rate a (percolation)
  double beta = 0;   ///< shape beta (random walk) or rate b (percolation)
  double x = 0;
  double rate_I = 0;
  double sigma = 0;
  double kappa = 0;
  double tau = 0;
  double rho = 0;
  double h3 = 0;
  bool conjectural = false;
};

/// Velocity, rate and fluctuation scale of the random walk at critical point
/// theta > 0.  All three come from digamma/trigamma/tetragamma evaluations.
inline theta_constants rwre_constants(double theta, double alpha, double beta) {
  if (!(theta > 0.0)) {
    throw validation_error("rwre_constants: theta must be positive");
  }
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw validation_error("rwre_constants: alpha and beta must be positive");
  }
  const double p1t = trigamma(theta);
  const double p1m = trigamma(theta + alpha);
  const double p1a = trigamma(theta + alpha + beta);
  const double p0t = digamma(theta);
  const double p0m = digamma(theta + alpha);
  const double p0a = digamma(theta + alpha + beta);
  const double p2t = polygamma(2, theta);
  const double p2m = polygamma(2, theta + alpha);
  const double p2a = polygamma(2, theta + alpha + beta);
  const double den = p1t - p1a;  // > 0: trigamma is strictly decreasing

  theta_constants c;
  c.kind = model_kind::random_walk;
  c.theta = theta;
  c.alpha = alpha;
  c.beta = beta;
  c.x = (p1a + p1t - 2.0 * p1m) / den;
  c.rate_I = (p1a - p1m) / den * (p0a - p0t) + p0a - p0m;
  c.h3 = p2m - p2a + (p1m - p1a) / den * (p2a - p2t);
  c.sigma = std::cbrt(0.5 * c.h3);
  c.conjectural = !(alpha == 1.0 && beta == 1.0 && theta < 0.5);
  return c;
}

/// Slope, passage-time constant and fluctuation scale of the percolation
/// model at critical point theta > 0.  Rational functions of (theta, a, b);
/// kappa and tau use cancellation-free factored forms.
inline theta_constants fpp_constants(double theta, double a, double b) {
  if (!(theta > 0.0)) {
    throw validation_error("fpp_constants: theta must be positive");
  }
  if (!(a > 0.0) || !(b > 0.0)) {
    throw validation_error("fpp_constants: a and b must be positive");
  }
  theta_constants c;
  c.kind = model_kind::percolation;
  c.theta = theta;
  c.alpha = a;
  c.beta = b;
  // kappa = (1/th^2 - 1/(a+th)^2) / (1/(a+th)^2 - 1/(a+b+th)^2)
  //       = a (2 th + a) (a+b+th)^2 / (b th^2 (2 th + 2 a + b)).
  c.kappa = a * (2.0 * theta + a) * (a + b + theta) * (a + b + theta) /
            (b * theta * theta * (2.0 * theta + 2.0 * a + b));
  // tau = 1/(a+th) - 1/th + kappa (1/(a+th) - 1/(a+b+th))
  //     = a (a+b) / (th^2 (2a + b + 2 th)).
  c.tau = a * (a + b) / (theta * theta * (2.0 * a + b + 2.0 * theta));
  const double i3t = 1.0 / (theta * theta * theta);
  const double i3m = 1.0 / std::pow(a + theta, 3);
  const double i3a = 1.0 / std::pow(a + b + theta, 3);
  const double rho3 = i3t - i3m + c.kappa * (i3a - i3m);
  c.rho = std::cbrt(rho3);
  c.h3 = 2.0 * rho3;
  c.conjectural = false;  // the percolation limit theorem has no restriction
  return c;
}

namespace detail {

/// Inverts a strictly decreasing function of theta on (0, inf): returns the
/// theta with f(theta) = target, by bracket expansion and bisection.
template <class F>
inline double invert_decreasing(F&& f, double target, const char* who) {
  double lo = 1e-9;
  if (!(f(lo) > target)) {
    throw validation_error(std::string(who) + ": target outside range");
  }
  double hi = 1.0;
  while (f(hi) > target) {
    hi *= 2.0;
    if (hi > 1e12) {
      throw validation_error(std::string(who) + ": target outside range");
    }
  }
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

/// Constants at the critical point whose walker velocity equals v.  The
/// velocity x(theta) decreases strictly from 1 (theta -> 0) to the annealed
/// drift (alpha - beta)/(alpha + beta) (theta -> infinity), so v must lie
/// strictly between those bounds.
inline theta_constants rwre_constants_at_velocity(double v, double alpha,
                                                  double beta) {
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw validation_error(
        "rwre_constants_at_velocity: alpha and beta must be positive");
  }
  const double drift = (alpha - beta) / (alpha + beta);
  if (!(v > drift) || !(v < 1.0)) {
    throw validation_error(
        "rwre_constants_at_velocity: velocity must lie strictly between the "
        "annealed drift and 1");
  }
  const double theta = detail::invert_decreasing(
      [&](double th) { return rwre_constants(th, alpha, beta).x; }, v,
      "rwre_constants_at_velocity");
  return rwre_constants(theta, alpha, beta);
}

/// Constants at the critical point whose characteristic slope equals s.  The
/// slope kappa(theta) decreases strictly from infinity (theta -> 0) to a/b
/// (theta -> infinity), so s must exceed a/b.
inline theta_constants fpp_constants_at_slope(double s, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw validation_error("fpp_constants_at_slope: a and b must be positive");
  }
  if (!(s > a / b)) {
    throw validation_error(
        "fpp_constants_at_slope: slope must exceed a/b");
  }
  const double theta = detail::invert_decreasing(
      [&](double th) { return fpp_constants(th, a, b).kappa; }, s,
      "fpp_constants_at_slope");
  return fpp_constants(theta, a, b);
}

/// Random-walk phase function h(z) for complex z off the poles of the
/// log-gamma terms.  Only differences of log-gamma values enter, so the
/// continuous-branch complex log-gamma makes h analytic away from the cut.
inline cplx rwre_phase(const theta_constants& c, cplx z) {
  const cplx lgz = log_gamma(z);
  const cplx lgm = log_gamma(c.alpha + z);
  const cplx lga = log_gamma(c.alpha + c.beta + z);
  return c.rate_I * z + 0.5 * (1.0 - c.x) * (lgm - lgz) +
         0.5 * (1.0 + c.x) * (lgm - lga);
}

inline double rwre_phase(const theta_constants& c, double z) {
  if (!(z > 0.0)) {
    throw validation_error("rwre_phase: real argument must be positive");
  }
  const double lgz = std::lgamma(z);
  const double lgm = std::lgamma(c.alpha + z);
  const double lga = std::lgamma(c.alpha + c.beta + z);
  return c.rate_I * z + 0.5 * (1.0 - c.x) * (lgm - lgz) +
         0.5 * (1.0 + c.x) * (lgm - lga);
}

/// k-th derivative of h at real z > 0, for k = 1, 2, 3:
///   h^(k)(z) = psi_{k-1}(alpha+z) - (1-x)/2 psi_{k-1}(z)
///              - (1+x)/2 psi_{k-1}(alpha+beta+z)   (+ rate_I when k = 1).
inline double rwre_phase_derivative(const theta_constants& c, int order,
                                    double z) {
  if (order < 1 || order > 3) {
    throw validation_error("rwre_phase_derivative: order must be 1, 2 or 3");
  }
  if (!(z > 0.0)) {
    throw validation_error("rwre_phase_derivative: argument must be positive");
  }
  const int k = order - 1;
  const double d = polygamma(k, c.alpha + z) -
                   0.5 * (1.0 - c.x) * polygamma(k, z) -
                   0.5 * (1.0 + c.x) * polygamma(k, c.alpha + c.beta + z);
  return order == 1 ? c.rate_I + d : d;
}

/// Percolation phase function H(z); valid for z with z, a+z, a+b+z away from
/// the negative real axis (principal logarithms).
inline cplx fpp_phase(const theta_constants& c, cplx z) {
  const double a = c.alpha, b = c.beta;
  return c.tau * z + std::log(z) - std::log(a + z) +
         c.kappa * (std::log(a + b + z) - std::log(a + z));
}

inline double fpp_phase(const theta_constants& c, double z) {
  if (!(z > 0.0)) {
    throw validation_error("fpp_phase: real argument must be positive");
  }
  const double a = c.alpha, b = c.beta;
  return c.tau * z + std::log(z / (a + z)) +
         c.kappa * std::log((a + b + z) / (a + z));
}

/// k-th derivative of H at real z > 0, for k = 1, 2, 3.
inline double fpp_phase_derivative(const theta_constants& c, int order,
                                   double z) {
  if (order < 1 || order > 3) {
    throw validation_error("fpp_phase_derivative: order must be 1, 2 or 3");
  }
  if (!(z > 0.0)) {
    throw validation_error("fpp_phase_derivative: argument must be positive");
  }
  const double a = c.alpha, b = c.beta;
  auto term = [order](double w) {
    // d^order/dz^order log(z) at w:  (-1)^(order-1) (order-1)! / w^order
    const double sign = (order % 2 == 1) ? 1.0 : -1.0;
    double fact = 1.0;
    for (int j = 2; j < order; ++j) fact *= j;
    return sign * fact / std::pow(w, order);
  };
  const double d = term(z) - term(a + z) +
                   c.kappa * (term(a + b + z) - term(a + z));
  return order == 1 ? c.tau + d : d;
}

/// Evaluation of the critical-point identities satisfied by construction:
/// first and second phase derivatives vanish at theta, the third is positive
/// and equals twice the cubed fluctuation scale.
struct critical_point_report {
  double d1 = 0;              ///< phase'(theta)
  double d2 = 0;              ///< phase''(theta)
  double d3 = 0;              ///< phase'''(theta)
  double twice_scale_cubed = 0;  ///< 2 sigma^3 (random walk) or 2 rho^3
  bool stationary = false;    ///< |d1|, |d2| <= 1e-10
  bool third_positive = false;
  bool consistent = false;    ///< |d3 - twice_scale_cubed| <= 1e-10 rel
};

inline critical_point_report critical_point_check(const theta_constants& c) {
  critical_point_report r;
  if (c.kind == model_kind::random_walk) {
    r.d1 = rwre_phase_derivative(c, 1, c.theta);
    r.d2 = rwre_phase_derivative(c, 2, c.theta);
    r.d3 = rwre_phase_derivative(c, 3, c.theta);
  } else {
    r.d1 = fpp_phase_derivative(c, 1, c.theta);
    r.d2 = fpp_phase_derivative(c, 2, c.theta);
    r.d3 = fpp_phase_derivative(c, 3, c.theta);
  }
  r.twice_scale_cubed = c.h3;
  r.stationary = std::abs(r.d1) <= 1e-10 && std::abs(r.d2) <= 1e-10;
  r.third_positive = r.d3 > 0.0;
  r.consistent = std::abs(r.d3 - r.twice_scale_cubed) <=
                 1e-10 * std::max(1.0, std::abs(r.d3));
  return r;
}

/// Steep-descent diagnostics.  Along the vertical line theta + i y the real
/// part of the phase must decrease as |y| grows (both models); along the
/// circle of radius theta (random walk, uniform weights) Re h must increase
/// with the angle phi in (0, pi).
struct steep_descent_report {
  bool line_ok = true;
  bool circle_ok = true;
  double max_line_violation = 0;    ///< largest increase of Re phase along the line
  double max_circle_violation = 0;  ///< largest decrease of Re h along the circle
};

/// `ygrid` holds strictly increasing positive offsets for the vertical line;
/// `phigrid` (optional, random walk only) holds strictly increasing angles in
/// (0, pi) for the circle of radius theta.
inline steep_descent_report steep_descent_check(
    const theta_constants& c, const std::vector<double>& ygrid,
    const std::vector<double>& phigrid = {}) {
  if (ygrid.size() < 2) {
    throw validation_error("steep_descent_check: need at least two line nodes");
  }
  steep_descent_report r;
  auto phase_re = [&c](cplx z) {
    return c.kind == model_kind::random_walk ? rwre_phase(c, z).real()
                                             : fpp_phase(c, z).real();
  };
  double prev = phase_re(cplx(c.theta, ygrid.front()));
  for (std::size_t i = 1; i < ygrid.size(); ++i) {
    const double cur = phase_re(cplx(c.theta, ygrid[i]));
    const double rise = cur - prev;
    if (rise > r.max_line_violation) r.max_line_violation = rise;
    prev = cur;
  }
  r.line_ok = r.max_line_violation <= 0.0;
  if (!phigrid.empty()) {
    if (c.kind != model_kind::random_walk) {
      throw validation_error(
          "steep_descent_check: circle grid applies to the random walk only");
    }
    if (phigrid.size() < 2) {
      throw validation_error(
          "steep_descent_check: need at least two circle nodes");
    }
    prev = phase_re(std::polar(c.theta, phigrid.front()));
    for (std::size_t i = 1; i < phigrid.size(); ++i) {
      const double cur = phase_re(std::polar(c.theta, phigrid[i]));
      const double drop = prev - cur;
      if (drop > r.max_circle_violation) r.max_circle_violation = drop;
      prev = cur;
    }
    r.circle_ok = r.max_circle_violation <= 0.0;
  }
  return r;
}

/// Constants for the maximum of N = floor(e^{c t}) walkers in a common
/// environment: the rate-c critical point theta0 (I(x(theta0)) = c), the
/// centering velocity x0 = x(theta0), and the t^{1/3} fluctuation scale
/// d = sigma(theta0) / I'(x0), with I'(x0) = (dI/dtheta) / (dx/dtheta).
struct extreme_constants_t {
  double c = 0;
  double theta0 = 0;
  double x0 = 0;
  double d = 0;
  double sigma0 = 0;
  double rate_slope = 0;  ///< I'(x0)
  bool conjectural = false;
};

inline extreme_constants_t extreme_constants(double c, double alpha,
                                             double beta) {
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw validation_error("extreme_constants: alpha and beta must be positive");
  }
  // Admissible growth rates: 0 < c < I(velocity 1) = psi(alpha+beta) - psi(alpha),
  // the rate at the edge of the walker cone.
  const double c_max = digamma(alpha + beta) - digamma(alpha);
  if (!(c > 0.0) || !(c < c_max)) {
    throw validation_error(
        "extreme_constants: c must lie strictly between 0 and the cone-edge "
        "rate psi(alpha+beta) - psi(alpha)");
  }
  const auto rate_at = [alpha, beta](double th) {
    return rwre_constants(th, alpha, beta).rate_I;
  };
  // I(x(theta)) decreases from c_max (theta -> 0) to 0 (theta -> inf):
  // bracket and bisect.
  double lo = 1e-8;
  while (rate_at(lo) < c) lo *= 0.5;  // pathological c close to c_max
  double hi = 1.0;
  while (rate_at(hi) > c) {
    hi *= 2.0;
    if (hi > 1e8) {
      throw convergence_error("extreme_constants: failed to bracket theta0");
    }
  }
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (rate_at(mid) > c) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-14 * std::max(1.0, hi)) break;
  }
  const double theta0 = 0.5 * (lo + hi);
  const theta_constants at0 = rwre_constants(theta0, alpha, beta);

  // I'(x0) by the chain rule through theta, with central differences; both
  // dI/dtheta and dx/dtheta are smooth and nonzero at theta0.
  const double step = 1e-5 * std::max(1.0, theta0);
  const theta_constants up = rwre_constants(theta0 + step, alpha, beta);
  const theta_constants dn = rwre_constants(theta0 - step, alpha, beta);
  const double dI = (up.rate_I - dn.rate_I) / (2.0 * step);
  const double dx = (up.x - dn.x) / (2.0 * step);

  extreme_constants_t e;
  e.c = c;
  e.theta0 = theta0;
  e.x0 = at0.x;
  e.sigma0 = at0.sigma;
  e.rate_slope = dI / dx;
  e.d = e.sigma0 / e.rate_slope;
  e.conjectural = !(alpha == 1.0 && beta == 1.0 && c > 0.4 && c < 1.0);
  return e;
}

}  // namespace betalab

#pragma once
// Two-walker collision structure in a shared Beta environment.
//
// Run two independent walkers in one environment and let P_t be the
// probability that they occupy the same site at time t.  For symmetric
// shapes (beta = alpha) the site-difference Y = X1 - X2 is itself a Markov
// chain: from 0 it jumps +-2 with probability r = E[B(1-B)] = alpha/(4a+2)
// each and stays with probability 1-2r, while away from 0 it jumps +-2 with
// probability 1/4 each and stays with probability 1/2.  A first-return
// decomposition of that chain yields exact convolution recurrences
//   Q_t = 1/2 Q_{t-1} + sum_{i=2}^{t} 1/16 Q_{i-2} Q_{t-i},        Q_0 = 1,
//   P_t = (1-2r) P_{t-1} + 2 sum_{i=2}^{t} (r/4) Q_{i-2} P_{t-i},  P_0 = 1,
// whose generating functions close to
//   Q(z) = (8 - 4z - 8 sqrt(1-z)) / z^2,
//   G(z) = sum_t P_t z^t = 1 / (1 + z(4r-1) + 4r(sqrt(1-z) - 1)),
// so that sqrt(t) P_t -> (2a+1)/(2a sqrt(pi)).
//
// Collisions control the endpoint covariance for every (alpha, beta):
//   E[X1 X2] = mean^2 + c * sum_{s=0}^{t-1} P_s,
//   c = 4 alpha beta / ((alpha+beta)^2 (alpha+beta+1)),
// and the uncentered correlation E[X1 X2]/sqrt(E[X1^2] E[X2^2]) equals the
// expected proportion of shared sites divided by (alpha+beta+1) in the
// driftless case.

#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "betalab/errors.hpp"
#include "betalab/mc.hpp"
#include "betalab/rwre.hpp"

namespace betalab {

/// Exact collision-probability series for the driftless model (beta = alpha).
struct overlap_series {
  double alpha = 0.0;     // environment shape; the model uses Beta(alpha, alpha)
  double r = 0.0;         // E[B(1-B)] = alpha / (4 alpha + 2)
  std::vector<double> P;  // P[t]: the walkers share a site at time t
  std::vector<double> Q;  // Q[t]: first-return building block of the series
};

/// Builds P_0..P_T and Q_0..Q_T by the convolution recurrences.  All terms
/// are positive, so the sums accumulate without cancellation.
inline overlap_series collision_series(double alpha, int T) {
  if (!(alpha > 0.0)) {
    throw validation_error("collision_series: alpha must be positive");
  }
  if (T < 0 || T > 100000) {
    throw validation_error("collision_series: T must lie in [0, 100000]");
  }
  overlap_series out;
  out.alpha = alpha;
  out.r = alpha / (4.0 * alpha + 2.0);
  const double r = out.r;
  out.P.assign(T + 1, 0.0);
  out.Q.assign(T + 1, 0.0);
  out.P[0] = 1.0;
  out.Q[0] = 1.0;
  if (T >= 1) {
    out.P[1] = 1.0 - 2.0 * r;
    out.Q[1] = 0.5;
  }
  for (int t = 2; t <= T; ++t) {
    double qconv = 0.0;
    double pconv = 0.0;
    for (int i = 2; i <= t; ++i) {
      qconv += out.Q[i - 2] * out.Q[t - i];
      pconv += out.Q[i - 2] * out.P[t - i];
    }
    out.Q[t] = 0.5 * out.Q[t - 1] + qconv / 16.0;
    out.P[t] = (1.0 - 2.0 * r) * out.P[t - 1] + 0.5 * r * pconv;
  }
  return out;
}

/// Limit of sqrt(t) * P_t: (2 alpha + 1) / (2 alpha sqrt(pi)).
inline double collision_asymptote(double alpha) {
  if (!(alpha > 0.0)) {
    throw validation_error("collision_asymptote: alpha must be positive");
  }
  return (2.0 * alpha + 1.0) /
         (2.0 * alpha * std::sqrt(3.141592653589793238462643383279502884));
}

namespace detail {

/// Power-series coefficients s_0..s_T of sqrt(1-z), from the exact
/// self-convolution identity (sum_k s_k z^k)^2 = 1 - z:
///   s_0 = 1, s_1 = -1/2, s_k = -(1/2) sum_{j=1}^{k-1} s_j s_{k-j}.
/// Every product in the sum is positive, so there is no cancellation.
inline std::vector<double> sqrt_one_minus_z_series(int T) {
  std::vector<double> s(static_cast<std::size_t>(T) + 1, 0.0);
  s[0] = 1.0;
  if (T >= 1) s[1] = -0.5;
  for (int k = 2; k <= T; ++k) {
    double acc = 0.0;
    for (int j = 1; j <= k - 1; ++j) acc += s[j] * s[k - j];
    s[k] = -0.5 * acc;
  }
  return s;
}

}  // namespace detail

/// Q_0..Q_T extracted from the closed generating function
/// Q(z) = (8 - 4z - 8 sqrt(1-z)) / z^2, i.e. Q_t = -8 s_{t+2}.
inline std::vector<double> q_series_from_generating_function(int T) {
  if (T < 0 || T > 100000) {
    throw validation_error(
        "q_series_from_generating_function: T must lie in [0, 100000]");
  }
  const std::vector<double> s = detail::sqrt_one_minus_z_series(T + 2);
  std::vector<double> q(static_cast<std::size_t>(T) + 1);
  for (int t = 0; t <= T; ++t) q[t] = -8.0 * s[t + 2];
  return q;
}

/// P_0..P_T extracted from the closed generating function
/// G(z) = 1 / (1 + z(4r-1) + 4r(sqrt(1-z) - 1)) by the reciprocal
/// convolution: with denominator coefficients d_0 = 1, d_1 = 2r - 1,
/// d_k = 4 r s_k (k >= 2), the coefficients satisfy
/// g_0 = 1, g_k = -sum_{j=1}^{k} d_j g_{k-j}.  All d_j with j >= 1 are
/// negative and all g_k positive, so again no cancellation occurs.
inline std::vector<double> p_series_from_generating_function(double alpha,
                                                             int T) {
  if (!(alpha > 0.0)) {
    throw validation_error(
        "p_series_from_generating_function: alpha must be positive");
  }
  if (T < 0 || T > 100000) {
    throw validation_error(
        "p_series_from_generating_function: T must lie in [0, 100000]");
  }
  const double r = alpha / (4.0 * alpha + 2.0);
  const std::vector<double> s = detail::sqrt_one_minus_z_series(T);
  std::vector<double> d(static_cast<std::size_t>(T) + 1, 0.0);
  d[0] = 1.0;
  if (T >= 1) d[1] = 2.0 * r - 1.0;
  for (int k = 2; k <= T; ++k) d[k] = 4.0 * r * s[k];
  std::vector<double> g(static_cast<std::size_t>(T) + 1, 0.0);
  g[0] = 1.0;
  for (int k = 1; k <= T; ++k) {
    double acc = 0.0;
    for (int j = 1; j <= k; ++j) acc += d[j] * g[k - j];
    g[k] = -acc;
  }
  return g;
}

/// One joint draw of two independent walkers sharing an environment.
/// Walker randomness matches sample_path with walker ids 1 and 2, so the
/// pair is exactly two single-walker paths evaluated together; when the
/// walkers coincide the shared site is read once.
struct two_walker_sample_t {
  std::int64_t x1 = 0;
  std::int64_t x2 = 0;
  int collisions = 0;  // number of times s in [0, t) with X1_s == X2_s
};

inline two_walker_sample_t two_walker_sample(const beta_environment& env,
                                             int t, std::uint64_t walk_seed) {
  if (t < 0) {
    throw validation_error("two_walker_sample: t must be >= 0");
  }
  two_walker_sample_t out;
  for (int s = 0; s < t; ++s) {
    double b1;
    double b2;
    if (out.x1 == out.x2) {
      ++out.collisions;
      b1 = b2 = env.b(out.x1, s);
    } else {
      b1 = env.b(out.x1, s);
      b2 = env.b(out.x2, s);
    }
    keyed_stream s1(walk_seed, stream_id::walker, 1, s);
    keyed_stream s2(walk_seed, stream_id::walker, 2, s);
    out.x1 += s1.uniform() < b1 ? 1 : -1;
    out.x2 += s2.uniform() < b2 ? 1 : -1;
  }
  return out;
}

/// Monte-Carlo estimate of the probability that two walkers share a site at
/// time t.  Each sample uses a fresh derived seed for both the environment
/// and the walker pair.
struct collision_mc_t {
  double frequency = 0.0;
  double se = 0.0;  // binomial standard error
  int samples = 0;
};

inline collision_mc_t collision_frequency_mc(double alpha, double beta, int t,
                                             int samples, std::uint64_t seed) {
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw validation_error("collision_frequency_mc: shapes must be positive");
  }
  if (t < 0) throw validation_error("collision_frequency_mc: t must be >= 0");
  if (samples < 1) {
    throw validation_error("collision_frequency_mc: samples must be >= 1");
  }
  const auto total = blocked_monte_carlo<1>(
      samples, [&](int i, std::array<double, 1>& acc) {
        const std::uint64_t s_i = derive_seed(seed, std::uint64_t(i));
        const beta_environment env(alpha, beta, s_i);
        const two_walker_sample_t tw = two_walker_sample(env, t, s_i);
        if (tw.x1 == tw.x2) acc[0] += 1.0;
      });
  collision_mc_t out;
  out.samples = samples;
  out.frequency = total[0] / samples;
  out.se = std::sqrt(out.frequency * (1.0 - out.frequency) / samples);
  return out;
}

/// Monte-Carlo moment report for the endpoint pair (X1, X2), with the exact
/// annealed counterparts.  The identity residual estimates
/// E[X1 X2] - c E[#collisions] - mean^2, which is exactly zero for every
/// (alpha, beta); exact_cross_moment is available in the driftless case
/// beta == alpha, where the collision series is exact.
struct covariance_report_t {
  double alpha = 0.0;
  double beta = 0.0;
  int t = 0;
  int samples = 0;
  std::uint64_t seed = 0;
  double mean_x = 0.0;
  double mean_x_se = 0.0;
  double second_moment = 0.0;
  double second_moment_se = 0.0;
  double cross_moment = 0.0;
  double cross_moment_se = 0.0;
  double overlap_proportion = 0.0;  // mean of (1/t) #collisions
  double overlap_proportion_se = 0.0;
  double correlation = 0.0;  // uncentered: cross_moment / second_moment
  double identity_residual = 0.0;
  double identity_residual_se = 0.0;
  double exact_mean_x = 0.0;
  double exact_second_moment = 0.0;
  double exact_cross_moment = std::numeric_limits<double>::quiet_NaN();
  bool exact_cross_available = false;
  double correlation_from_overlap = 0.0;  // overlap / (alpha + beta + 1)
};

inline covariance_report_t covariance_report(double alpha, double beta, int t,
                                             int samples, std::uint64_t seed) {
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw validation_error("covariance_report: shapes must be positive");
  }
  if (t < 1) throw validation_error("covariance_report: t must be >= 1");
  if (samples < 2) {
    throw validation_error("covariance_report: samples must be >= 2");
  }
  const double mean = annealed_mean(alpha, beta, t);
  const double ab = alpha + beta;
  const double c = 4.0 * alpha * beta / (ab * ab * (ab + 1.0));

  // Ordered block reduction over per-sample statistics: for each of
  // {mean, second moment, cross moment, overlap proportion, identity
  // residual} accumulate the sum and the sum of squares.
  const auto total = blocked_monte_carlo<10>(
      samples, [&](int i, std::array<double, 10>& acc) {
        const std::uint64_t s_i = derive_seed(seed, std::uint64_t(i));
        const beta_environment env(alpha, beta, s_i);
        const two_walker_sample_t tw = two_walker_sample(env, t, s_i);
        const double x1 = double(tw.x1);
        const double x2 = double(tw.x2);
        const double mx = 0.5 * (x1 + x2);
        const double sx = 0.5 * (x1 * x1 + x2 * x2);
        const double cx = x1 * x2;
        const double ov = double(tw.collisions) / t;
        const double res = cx - c * tw.collisions - mean * mean;
        acc[0] += mx;
        acc[1] += mx * mx;
        acc[2] += sx;
        acc[3] += sx * sx;
        acc[4] += cx;
        acc[5] += cx * cx;
        acc[6] += ov;
        acc[7] += ov * ov;
        acc[8] += res;
        acc[9] += res * res;
      });

  covariance_report_t rep;
  rep.alpha = alpha;
  rep.beta = beta;
  rep.t = t;
  rep.samples = samples;
  rep.seed = seed;
  const double n = samples;
  const auto finish = [n](double s1, double s2, double& out_mean,
                          double& out_se) {
    out_mean = s1 / n;
    const double var = (s2 - n * out_mean * out_mean) / (n - 1.0);
    out_se = std::sqrt((var > 0.0 ? var : 0.0) / n);
  };
  finish(total[0], total[1], rep.mean_x, rep.mean_x_se);
  finish(total[2], total[3], rep.second_moment, rep.second_moment_se);
  finish(total[4], total[5], rep.cross_moment, rep.cross_moment_se);
  finish(total[6], total[7], rep.overlap_proportion, rep.overlap_proportion_se);
  finish(total[8], total[9], rep.identity_residual, rep.identity_residual_se);
  rep.correlation = rep.cross_moment / rep.second_moment;
  rep.correlation_from_overlap = rep.overlap_proportion / (ab + 1.0);
  rep.exact_mean_x = mean;
  rep.exact_second_moment = annealed_second_moment(alpha, beta, t);
  if (alpha == beta) {
    const overlap_series series = collision_series(alpha, t - 1);
    double sum_p = 0.0;
    for (double p : series.P) sum_p += p;
    rep.exact_cross_moment = mean * mean + c * sum_p;
    rep.exact_cross_available = true;
  }
  return rep;
}

}  // namespace betalab

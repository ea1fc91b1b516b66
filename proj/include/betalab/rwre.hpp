#pragma once
// Random walk in a Beta-distributed random environment.
//
// The environment attaches an independent B(x, t) ~ Beta(alpha, beta) to each
// space-time site.  A walker at (x, t) steps to x+1 with probability B(x, t)
// and to x-1 otherwise.  The quenched endpoint law p(t, .) of a walker
// started at the origin satisfies the forward recursion
//   p(t+1, x) = p(t, x-1) B(x-1, t) + p(t, x+1) (1 - B(x+1, t)),
// and the quenched tail is P(t, x) = sum_{y >= x} p(t, y).
//
// Sites are evaluated lazily from the counter-based RNG, so environments of
// any size cost no memory, and the same (seed, x, t) always yields the same
// variate on any thread.

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "betalab/rng.hpp"

namespace betalab {

namespace stream_id {
inline constexpr std::uint64_t env_role_a = 1;
inline constexpr std::uint64_t env_role_b = 2;
inline constexpr std::uint64_t walker = 3;
inline constexpr std::uint64_t fpp_vertex = 4;
} // namespace stream_id

/// Derives an independent sub-seed (e.g. one per Monte-Carlo sample).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return detail::mix64(seed ^ (0x5851f42d4c957f2dULL * (index + 1)));
}

inline constexpr double neg_inf = -std::numeric_limits<double>::infinity();

/// Beta environment over space-time sites (x, t).  Exposes the jump
/// probability both linearly and as the exact joint pair
/// (log B, log(1 - B)), which stays finite-precision even when B underflows
/// toward 0 or 1 (small-shape regimes).
class beta_environment {
 public:
  beta_environment(double alpha, double beta, std::uint64_t seed,
                   bool antithetic = false)
      : alpha_(alpha), beta_(beta), seed_(seed), antithetic_(antithetic) {
    if (!(alpha > 0.0) || !(beta > 0.0)) {
      throw std::domain_error("beta_environment: shapes must be positive");
    }
  }

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  std::uint64_t seed() const { return seed_; }

  /// Joint (log B, log(1-B)) at a site.
  log_beta_pair site(std::int64_t x, std::int64_t t) const {
    if (override_) {
      const double b = clamp_unit_open(override_(x, t));
      return {std::log(b), std::log1p(-b)};
    }
    keyed_stream sa(seed_, stream_id::env_role_a, x, t);
    keyed_stream sb(seed_, stream_id::env_role_b, x, t);
    if (!antithetic_) {
      return sample_log_beta(alpha_, beta_, sa, sb);
    }
    // Swapped streams (shapes keep their stream pairing): an antithetic
    // environment with shapes (beta, alpha) reuses the gamma draws of the
    // (alpha, beta) environment and is exactly its sitewise complement.
    return sample_log_beta(alpha_, beta_, sb, sa);
  }

  /// Linear-domain jump probability (clamped to the open unit interval).
  double b(std::int64_t x, std::int64_t t) const {
    return clamp_unit_open(std::exp(site(x, t).log_b));
  }

  /// Replaces sampling by a deterministic function (testing hook).
  void set_override(std::function<double(std::int64_t, std::int64_t)> fn) {
    override_ = std::move(fn);
  }

 private:
  double alpha_;
  double beta_;
  std::uint64_t seed_;
  bool antithetic_;
  std::function<double(std::int64_t, std::int64_t)> override_;
};

/// Quenched endpoint law at time t, linear domain.  Entry i corresponds to
/// x = 2 i - t; only sites with the parity of t carry mass.
inline std::vector<double> quenched_law(const beta_environment& env, int t) {
  if (t < 0) throw std::domain_error("quenched_law: t must be >= 0");
  std::vector<double> cur{1.0};
  std::vector<double> next;
  for (int s = 0; s < t; ++s) {
    next.assign(s + 2, 0.0);
    for (int i = 0; i <= s; ++i) {
      const std::int64_t x = 2 * std::int64_t(i) - s;
      const double b = env.b(x, s);
      next[i + 1] += cur[i] * b;
      next[i] += cur[i] * (1.0 - b);
    }
    cur.swap(next);
  }
  return cur;
}

/// Quenched endpoint law in log domain (entry i is log p(t, 2i - t)).
inline std::vector<double> log_quenched_law(const beta_environment& env,
                                            int t) {
  if (t < 0) throw std::domain_error("log_quenched_law: t must be >= 0");
  std::vector<double> cur{0.0};
  std::vector<double> next;
  for (int s = 0; s < t; ++s) {
    next.assign(s + 2, neg_inf);
    for (int i = 0; i <= s; ++i) {
      if (cur[i] == neg_inf) continue;
      const std::int64_t x = 2 * std::int64_t(i) - s;
      const log_beta_pair lp = env.site(x, s);
      const double up = cur[i] + lp.log_b;
      const double down = cur[i] + lp.log_1mb;
      // log-sum-exp accumulate.
      const auto lse = [](double acc, double v) {
        if (acc == neg_inf) return v;
        if (v == neg_inf) return acc;
        const double m = acc > v ? acc : v;
        return m + std::log(std::exp(acc - m) + std::exp(v - m));
      };
      next[i + 1] = lse(next[i + 1], up);
      next[i] = lse(next[i], down);
    }
    cur.swap(next);
  }
  return cur;
}

/// Suffix log-sum-exp: out[i] = log sum_{j >= i} exp(in[j]).
inline std::vector<double> suffix_logsumexp(const std::vector<double>& in) {
  std::vector<double> out(in.size() + 1);
  out.back() = neg_inf;
  for (std::size_t i = in.size(); i-- > 0;) {
    const double a = out[i + 1], v = in[i];
    if (a == neg_inf) {
      out[i] = v;
    } else if (v == neg_inf) {
      out[i] = a;
    } else {
      const double m = a > v ? a : v;
      out[i] = m + std::log(std::exp(a - m) + std::exp(v - m));
    }
  }
  out.pop_back();
  return out;
}

/// Quenched tail P(t, x) = P(X_t >= x), linear domain.
inline double quenched_tail(const std::vector<double>& law, int t,
                            std::int64_t x) {
  double s = 0.0;
  for (std::size_t i = 0; i < law.size(); ++i) {
    if (2 * std::int64_t(i) - t >= x) s += law[i];
  }
  return s;
}

/// log P(t, x) from a log-domain law.
inline double log_quenched_tail(const std::vector<double>& log_law, int t,
                                std::int64_t x) {
  // First lattice index with 2 i - t >= x.
  std::int64_t i0 = (x + t + 1) / 2;
  if (2 * ((x + t) / 2) == x + t) i0 = (x + t) / 2;  // exact parity
  if (i0 < 0) i0 = 0;
  if (i0 > std::int64_t(log_law.size())) return neg_inf;
  double acc = neg_inf;
  for (std::size_t i = i0; i < log_law.size(); ++i) {
    const double v = log_law[i];
    if (v == neg_inf) continue;
    if (acc == neg_inf) {
      acc = v;
    } else {
      const double m = acc > v ? acc : v;
      acc = m + std::log(std::exp(acc - m) + std::exp(v - m));
    }
  }
  return acc;
}

/// Samples the endpoint of one walker in a fixed environment.  Walker
/// randomness is keyed by (walker_id, time), independent across walkers
/// sharing the environment.
inline std::int64_t sample_endpoint(const beta_environment& env, int t,
                                    std::uint64_t walk_seed,
                                    std::int64_t walker_id) {
  std::int64_t x = 0;
  for (int s = 0; s < t; ++s) {
    keyed_stream st(walk_seed, stream_id::walker, walker_id, s);
    x += st.uniform() < env.b(x, s) ? 1 : -1;
  }
  return x;
}

/// Full trajectory version of sample_endpoint (positions at times 0..t).
inline std::vector<std::int64_t> sample_path(const beta_environment& env,
                                             int t, std::uint64_t walk_seed,
                                             std::int64_t walker_id) {
  std::vector<std::int64_t> path(t + 1);
  path[0] = 0;
  for (int s = 0; s < t; ++s) {
    keyed_stream st(walk_seed, stream_id::walker, walker_id, s);
    path[s + 1] =
        path[s] + (st.uniform() < env.b(path[s], s) ? 1 : -1);
  }
  return path;
}

/// Annealed mean of X_t.
inline double annealed_mean(double alpha, double beta, int t) {
  return t * (alpha - beta) / (alpha + beta);
}

/// Annealed second moment of X_t.
inline double annealed_second_moment(double alpha, double beta, int t) {
  const double m = annealed_mean(alpha, beta, t);
  return m * m + 4.0 * alpha * beta * t / ((alpha + beta) * (alpha + beta));
}

} // namespace betalab

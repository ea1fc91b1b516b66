#pragma once
// Beta polymer partition function and its coupling to the random walk in
// Beta environment.
//
// Weights B(i, j) ~ Beta(mu, nu - mu) with 0 < mu < nu sit on vertices
// (i >= 1, j >= 1).  The point-to-point partition function solves
//   Z(t, n) = Z(t-1, n) B(t, n) + Z(t-1, n-1) (1 - B(t, n)),  2 <= n <= t,
// with Z(0, 1) = 1 and boundaries Z(t, 1) = Z(t-1, 1) B(t, 1) and
// Z(t, t+1) = Z(t-1, t); Z(t, n) = 0 for n < 1.
//
// The half-line variant starts from Z~(0, n) = 1 for all n >= 1 and keeps
// Z~(t, n) = 1 for n > t; it shares the bulk recursion and the n = 1
// boundary with Z, and agrees with Z on the wedge n <= t + 1.
//
// Coupling: with mu = alpha and nu = alpha + beta, the identification
// B_polymer(i, j) = B_walk(x = i - 2j + 1, t = i - 1) maps the polymer
// environment bijectively onto the walk environment, under which
// Z(t, n) = P(t, t - 2n + 2) holds pathwise for all 1 <= n <= t+1.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "betalab/rng.hpp"
#include "betalab/rwre.hpp"

namespace betalab {

/// Polymer vertex weights.  Either sampled directly (standalone) or viewed
/// through the coupling bijection from a walk environment (in the coupled
/// case the walk environment must outlive this view).
class polymer_environment {
 public:
  /// Standalone environment with B(i, j) ~ Beta(mu, nu - mu).
  polymer_environment(double mu, double nu, std::uint64_t seed)
      : source_(std::in_place, mu, nu - mu, seed) {
    if (!(mu > 0.0) || !(nu > mu)) {
      throw std::domain_error("polymer_environment: need 0 < mu < nu");
    }
  }

  /// Coupled view of a walk environment (mu = alpha, nu = alpha + beta).
  explicit polymer_environment(const beta_environment& walk_env)
      : coupled_(&walk_env) {}

  log_beta_pair site(std::int64_t i, std::int64_t j) const {
    if (coupled_ != nullptr) {
      return coupled_->site(i - 2 * j + 1, i - 1);
    }
    return source_->site(i, j);
  }

  double b(std::int64_t i, std::int64_t j) const {
    return clamp_unit_open(std::exp(site(i, j).log_b));
  }

 private:
  std::optional<beta_environment> source_;
  const beta_environment* coupled_ = nullptr;
};

/// Point-to-point partition function slice: returns Z(t, n) for n = 1..t+1
/// (index n-1), linear domain.
inline std::vector<double> partition_function(const polymer_environment& env,
                                              int t) {
  if (t < 0) throw std::domain_error("partition_function: t must be >= 0");
  std::vector<double> cur{1.0};  // Z(0, 1)
  for (int s = 1; s <= t; ++s) {
    std::vector<double> next(s + 1, 0.0);
    for (int n = 1; n <= s + 1; ++n) {
      if (n == s + 1) {
        next[n - 1] = cur[n - 2];  // Z(s, s+1) = Z(s-1, s)
        continue;
      }
      const double b = env.b(s, n);
      const double prev_same = cur[n - 1];
      const double prev_left = n >= 2 ? cur[n - 2] : 0.0;
      next[n - 1] = prev_same * b + prev_left * (1.0 - b);
    }
    cur.swap(next);
  }
  return cur;
}

/// Half-line partition function: returns Z~(t, n) for n = 1..n_max.
inline std::vector<double> halfline_partition_function(
    const polymer_environment& env, int t, int n_max) {
  if (t < 0 || n_max < 1) {
    throw std::domain_error("halfline_partition_function: bad arguments");
  }
  std::vector<double> cur(n_max, 1.0);  // Z~(0, n) = 1 for n >= 1
  for (int s = 1; s <= t; ++s) {
    std::vector<double> next(n_max, 1.0);  // n > s stays 1
    for (int n = 1; n <= std::min(s, n_max); ++n) {
      const double b = env.b(s, n);
      const double prev_same = cur[n - 1];
      const double prev_left = n >= 2 ? cur[n - 2] : 0.0;
      next[n - 1] = prev_same * b + prev_left * (1.0 - b);
    }
    cur.swap(next);
  }
  return cur;
}

/// Maximum absolute discrepancy of the pathwise coupling
/// Z(t, n) = P(t, t - 2n + 2) over all 0 <= t <= t_max, 1 <= n <= t+1,
/// with both sides computed on one shared environment realization.
inline double coupling_max_discrepancy(double alpha, double beta,
                                       std::uint64_t seed, int t_max) {
  const beta_environment walk_env(alpha, beta, seed);
  const polymer_environment poly_env(walk_env);
  double worst = 0.0;
  for (int t = 0; t <= t_max; ++t) {
    const std::vector<double> z = partition_function(poly_env, t);
    const std::vector<double> law = quenched_law(walk_env, t);
    for (int n = 1; n <= t + 1; ++n) {
      const double tail = quenched_tail(law, t, t - 2 * std::int64_t(n) + 2);
      const double diff = std::abs(z[n - 1] - tail);
      if (diff > worst) worst = diff;
    }
  }
  return worst;
}

} // namespace betalab

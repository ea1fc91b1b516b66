#pragma once
// Counter-based random number generation.
//
// Every random quantity in the library is a pure function of a 256-bit key
// (seed, stream, a, b): the key is hashed into the initial state of a
// splitmix64 sequence, and successive draws walk that sequence.  Because no
// generator state is shared, any site/sample/time coordinate can be evaluated
// lazily, in any order, and on any number of threads, always producing the
// same value.

#include <cmath>
#include <cstdint>
#include <limits>

namespace betalab {

namespace detail {

// 64-bit finalizer (splitmix64 / Stafford mix13).
inline std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

inline constexpr std::uint64_t golden = 0x9e3779b97f4a7c15ULL;

} // namespace detail

/// Deterministic stream of doubles keyed by (seed, stream, a, b).
/// Draw order within a stream matters; keys of distinct streams never
/// collide in practice (full 64-bit avalanche per word).
class keyed_stream {
 public:
  keyed_stream(std::uint64_t seed, std::uint64_t stream, std::int64_t a,
               std::int64_t b) {
    std::uint64_t h = detail::mix64(seed + detail::golden);
    h = detail::mix64(h ^ (stream * 0xd6e8feb86659fd93ULL));
    h = detail::mix64(h ^ (static_cast<std::uint64_t>(a) * 0xca01f9dd56c24869ULL));
    h = detail::mix64(h ^ (static_cast<std::uint64_t>(b) * 0xe08c3b9b6224f0a5ULL));
    state_ = h;
  }

  std::uint64_t next_u64() {
    state_ += detail::golden;
    return detail::mix64(state_);
  }

  /// Uniform on the open interval (0, 1).
  double uniform() {
    const double u = (next_u64() >> 11) * 0x1.0p-53;
    // 0 occurs with probability 2^-53; nudge into the open interval.
    return u > 0.0 ? u : 0x1.0p-53;
  }

  /// Standard normal via Box-Muller (consumes exactly two draws).
  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
  }

  /// Exponential with the given rate.
  double exponential(double rate) { return -std::log(uniform()) / rate; }

  bool bernoulli(double p) { return uniform() < p; }

  /// log of a Gamma(shape, 1) sample.  Computed in log domain so that
  /// arbitrarily small shapes (where the sample itself underflows) remain
  /// exact.  Uses Marsaglia-Tsang for shape >= 1 and the boost
  /// Gamma(s) = Gamma(s+1) * U^(1/s) for shape < 1.
  double log_gamma_sample(double shape) {
    if (shape < 1.0) {
      const double lg = log_gamma_sample(shape + 1.0);
      return lg + std::log(uniform()) / shape;
    }
    if (shape == 1.0) {
      return std::log(-std::log(uniform()));
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform();
      if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) {
        return std::log(d * v);
      }
    }
  }

 private:
  std::uint64_t state_;
};

/// Joint sample of (log B, log(1-B)) for B ~ Beta(alpha, beta), exact in log
/// domain: B = G_a / (G_a + G_b) with independent Gamma draws taken from two
/// separate role streams.  Construct the two streams with swapped roles and
/// swapped (alpha, beta) to obtain the antithetic environment, which
/// satisfies B' = 1 - B sitewise.
struct log_beta_pair {
  double log_b;
  double log_1mb;
};

inline log_beta_pair sample_log_beta(double alpha, double beta,
                                     keyed_stream& role_a,
                                     keyed_stream& role_b) {
  const double la = role_a.log_gamma_sample(alpha);
  const double lb = role_b.log_gamma_sample(beta);
  // log(G_a + G_b) via stable log-sum-exp.
  const double m = la > lb ? la : lb;
  const double lsum = m + std::log(std::exp(la - m) + std::exp(lb - m));
  return {la - lsum, lb - lsum};
}

/// Linear-domain Beta sample clamped to the open interval (0, 1).
inline double clamp_unit_open(double b) {
  constexpr double lo = std::numeric_limits<double>::min();
  constexpr double hi = 1.0 - 0x1.0p-53;
  if (b < lo) return lo;
  if (b > hi) return hi;
  return b;
}

} // namespace betalab

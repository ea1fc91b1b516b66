#include <betalab/overlap.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <vector>

#include <betalab/errors.hpp>
#include <betalab/rwre.hpp>

using betalab::beta_environment;
using betalab::collision_asymptote;
using betalab::collision_frequency_mc;
using betalab::collision_series;
using betalab::covariance_report;
using betalab::covariance_report_t;
using betalab::overlap_series;
using betalab::p_series_from_generating_function;
using betalab::q_series_from_generating_function;
using betalab::sample_path;
using betalab::two_walker_sample;
using betalab::validation_error;
using Catch::Approx;

namespace {

constexpr double pi = 3.141592653589793238462643383279502884;

// Exact distribution of the site difference Y_t = X1_t - X2_t for
// beta = alpha, evolved by plain matrix-free Chapman-Kolmogorov: from 0 the
// walk jumps +-2 w.p. r each and stays w.p. 1-2r; away from 0 it jumps +-2
// w.p. 1/4 each and stays w.p. 1/2.  Returns P(Y_s = 0) for s = 0..T.
std::vector<double> difference_walk_zero_mass(double alpha, int T) {
  const double r = alpha / (4.0 * alpha + 2.0);
  // Index i corresponds to Y = 2 (i - T); all mass starts at i = T.
  std::vector<double> cur(2 * T + 1, 0.0), next(2 * T + 1, 0.0);
  cur[T] = 1.0;
  std::vector<double> zero_mass(T + 1, 0.0);
  zero_mass[0] = 1.0;
  for (int s = 0; s < T; ++s) {
    std::fill(next.begin(), next.end(), 0.0);
    for (int i = 0; i < 2 * T + 1; ++i) {
      const double m = cur[i];
      if (m == 0.0) continue;
      const bool at_zero = (i == T);
      const double up = at_zero ? r : 0.25;
      const double stay = at_zero ? 1.0 - 2.0 * r : 0.5;
      if (i + 1 <= 2 * T) next[i + 1] += m * up;
      if (i - 1 >= 0) next[i - 1] += m * up;
      next[i] += m * stay;
    }
    cur.swap(next);
    zero_mass[s + 1] = cur[T];
  }
  return zero_mass;
}

}  // namespace

TEST_CASE("collision series pins the documented values", "[overlap]") {
  const overlap_series s = collision_series(1.0, 6);
  CHECK(s.r == Approx(1.0 / 6.0).margin(1e-15));
  CHECK(s.P[0] == 1.0);
  CHECK(s.Q[0] == 1.0);
  CHECK(s.P[1] == Approx(2.0 / 3.0).margin(1e-15));
  CHECK(s.Q[1] == Approx(0.5).margin(1e-15));
  // P_2 = (1-2r)^2 + r/2 and Q_2 = 1/2 Q_1 + 1/16 by hand.
  CHECK(s.P[2] == Approx(19.0 / 36.0).margin(1e-15));
  CHECK(s.Q[2] == Approx(5.0 / 16.0).margin(1e-15));

  CHECK(collision_series(0.5, 0).r == Approx(1.0 / 8.0).margin(1e-15));
  CHECK(collision_series(2.0, 0).r == Approx(1.0 / 5.0).margin(1e-15));

  for (double alpha : {0.3, 1.0, 2.7}) {
    const overlap_series ser = collision_series(alpha, 500);
    for (int t = 0; t <= 500; ++t) {
      REQUIRE(ser.P[t] >= 0.0);
      REQUIRE(ser.P[t] <= 1.0);
      REQUIRE(ser.Q[t] >= 0.0);
      REQUIRE(ser.Q[t] <= 1.0);
    }
  }
}

TEST_CASE("difference-walk enumeration reproduces the series", "[overlap]") {
  for (double alpha : {0.5, 1.0, 2.0}) {
    const int T = 60;
    const overlap_series s = collision_series(alpha, T);
    const std::vector<double> direct = difference_walk_zero_mass(alpha, T);
    for (int t = 0; t <= T; ++t) {
      INFO("alpha=" << alpha << " t=" << t);
      CHECK(s.P[t] == Approx(direct[t]).margin(1e-13));
    }
  }
}

TEST_CASE("square-root series coefficients are exact", "[overlap]") {
  const std::vector<double> s = betalab::detail::sqrt_one_minus_z_series(200);
  CHECK(s[0] == 1.0);
  CHECK(s[1] == Approx(-0.5).margin(1e-16));
  CHECK(s[2] == Approx(-1.0 / 8.0).margin(1e-16));
  CHECK(s[3] == Approx(-1.0 / 16.0).margin(1e-16));
  CHECK(s[4] == Approx(-5.0 / 128.0).margin(1e-16));
  // Independent ratio identity s_{k+1} = s_k (k - 1/2) / (k + 1).
  for (int k = 1; k < 200; ++k) {
    INFO("k=" << k);
    CHECK(s[k + 1] == Approx(s[k] * (k - 0.5) / (k + 1)).epsilon(1e-14));
  }
}

TEST_CASE("generating-function expansion matches the recurrences",
          "[overlap]") {
  const int T = 10000;
  const std::vector<double> q_gf = q_series_from_generating_function(T);
  for (double alpha : {0.5, 1.0, 2.0}) {
    const overlap_series s = collision_series(alpha, T);
    const std::vector<double> p_gf = p_series_from_generating_function(alpha, T);
    double max_p = 0.0, max_q = 0.0;
    for (int t = 0; t <= T; ++t) {
      max_p = std::max(max_p, std::abs(p_gf[t] - s.P[t]));
      max_q = std::max(max_q, std::abs(q_gf[t] - s.Q[t]));
    }
    INFO("alpha=" << alpha << " max|P_gf - P_rec|=" << max_p
                  << " max|Q_gf - Q_rec|=" << max_q);
    CHECK(max_p <= 1e-12);
    CHECK(max_q <= 1e-12);
  }
}

TEST_CASE("asymptote formula and convergence of sqrt(t) P_t", "[overlap]") {
  CHECK(collision_asymptote(1.0) == Approx(1.5 / std::sqrt(pi)).margin(1e-15));
  CHECK(collision_asymptote(0.5) == Approx(2.0 / std::sqrt(pi)).margin(1e-15));
  CHECK(collision_asymptote(2.0) == Approx(1.25 / std::sqrt(pi)).margin(1e-15));
  // Large-shape limit: the environment dies out and the scale approaches the
  // plain two-walker collision constant 1/sqrt(pi).
  CHECK(collision_asymptote(1e8) ==
        Approx(1.0 / std::sqrt(pi)).epsilon(1e-7));

  for (double alpha : {0.5, 1.0, 2.0}) {
    const int T = 10000;
    const overlap_series s = collision_series(alpha, T);
    const double limit = collision_asymptote(alpha);

    // Within 2% at t = 10^4 (actually far closer; the approach is O(1/t)).
    const double scaled_end = std::sqrt(double(T)) * s.P[T];
    INFO("alpha=" << alpha << " sqrt(T) P_T=" << scaled_end
                  << " limit=" << limit);
    CHECK(scaled_end == Approx(limit).epsilon(0.02));

    // Eventual monotonicity from below on a sampled grid t >= 100.
    double prev = 0.0;
    for (int t : {100, 200, 400, 800, 1600, 3200, 6400, 10000}) {
      const double scaled = std::sqrt(double(t)) * s.P[t];
      INFO("alpha=" << alpha << " t=" << t << " sqrt(t) P_t=" << scaled);
      CHECK(scaled > prev);
      CHECK(scaled < limit);
      prev = scaled;
    }

    // Partial sums: sum_{s<t} P_s / sqrt(t) -> 1/(2 r sqrt(pi)).
    double sum_p = 0.0;
    for (int t = 0; t < T; ++t) sum_p += s.P[t];
    const double partial_limit = 1.0 / (2.0 * s.r * std::sqrt(pi));
    INFO("alpha=" << alpha << " partial=" << sum_p / std::sqrt(double(T))
                  << " limit=" << partial_limit);
    CHECK(sum_p / std::sqrt(double(T)) == Approx(partial_limit).epsilon(0.02));
  }
}

TEST_CASE("two-walker draw equals a pair of single-walker paths", "[overlap]") {
  for (std::uint64_t k = 0; k < 20; ++k) {
    const beta_environment env(1.3, 0.7, 9000 + k);
    const int t = 40;
    const std::uint64_t walk_seed = 77 + k;
    const auto path1 = sample_path(env, t, walk_seed, 1);
    const auto path2 = sample_path(env, t, walk_seed, 2);
    const auto tw = two_walker_sample(env, t, walk_seed);
    CHECK(tw.x1 == path1.back());
    CHECK(tw.x2 == path2.back());
    int collisions = 0;
    for (int s = 0; s < t; ++s) {
      if (path1[s] == path2[s]) ++collisions;
    }
    CHECK(tw.collisions == collisions);
  }
}

TEST_CASE("simulated collision frequency matches the exact series",
          "[overlap][heavy]") {
  const int t = 50;
  const int samples = 1000000;
  const overlap_series s = collision_series(1.0, t);
  const auto mc = collision_frequency_mc(1.0, 1.0, t, samples, 20260816);
  INFO("P_50=" << s.P[t] << " mc=" << mc.frequency << " se=" << mc.se);
  CHECK(std::abs(mc.frequency - s.P[t]) <= 4.0 * mc.se);
  CHECK(mc.se < 6e-4);
}

TEST_CASE("covariance report reproduces annealed moments in the drift case",
          "[overlap]") {
  const covariance_report_t rep = covariance_report(2.0, 1.0, 64, 50000, 4242);
  CHECK(rep.exact_mean_x == Approx(64.0 / 3.0).margin(1e-12));
  CHECK(std::abs(rep.mean_x - rep.exact_mean_x) <= 4.0 * rep.mean_x_se);
  CHECK(std::abs(rep.second_moment - rep.exact_second_moment) <=
        4.0 * rep.second_moment_se);
  // E[X1 X2] - c #collisions - mean^2 averages to zero for all shapes.
  CHECK(std::abs(rep.identity_residual) <= 4.0 * rep.identity_residual_se);
  CHECK_FALSE(rep.exact_cross_available);
  CHECK(std::isnan(rep.exact_cross_moment));
  CHECK(rep.overlap_proportion > 0.0);
  CHECK(rep.overlap_proportion <= 1.0);
  CHECK(rep.correlation > 0.0);
}

TEST_CASE("covariance report matches the exact collision identity",
          "[overlap][heavy]") {
  const int t = 100;
  const covariance_report_t rep = covariance_report(1.0, 1.0, t, 200000, 777);

  CHECK(rep.exact_mean_x == 0.0);
  CHECK(rep.exact_second_moment == Approx(double(t)).margin(1e-12));
  CHECK(std::abs(rep.mean_x) <= 4.0 * rep.mean_x_se);
  CHECK(std::abs(rep.second_moment - rep.exact_second_moment) <=
        4.0 * rep.second_moment_se);

  REQUIRE(rep.exact_cross_available);
  const overlap_series s = collision_series(1.0, t - 1);
  double sum_p = 0.0;
  for (double p : s.P) sum_p += p;
  // c = 4 alpha beta / ((alpha+beta)^2 (alpha+beta+1)) = 1/3 here.
  CHECK(rep.exact_cross_moment == Approx(sum_p / 3.0).margin(1e-12));
  INFO("cross=" << rep.cross_moment << " exact=" << rep.exact_cross_moment
                << " se=" << rep.cross_moment_se);
  CHECK(std::abs(rep.cross_moment - rep.exact_cross_moment) <=
        4.0 * rep.cross_moment_se);
  CHECK(std::abs(rep.overlap_proportion - sum_p / t) <=
        4.0 * rep.overlap_proportion_se);
  CHECK(std::abs(rep.identity_residual) <= 4.0 * rep.identity_residual_se);

  // Both correlation estimates target the same exact value c sum_P / t.
  const double exact_corr = rep.exact_cross_moment / t;
  CHECK(std::abs(rep.correlation - exact_corr) < 0.01);
  CHECK(std::abs(rep.correlation_from_overlap - exact_corr) < 0.002);
}

TEST_CASE("covariance report is deterministic in the seed", "[overlap]") {
  const covariance_report_t a = covariance_report(1.5, 0.8, 20, 1000, 5);
  const covariance_report_t b = covariance_report(1.5, 0.8, 20, 1000, 5);
  CHECK(a.mean_x == b.mean_x);
  CHECK(a.cross_moment == b.cross_moment);
  CHECK(a.overlap_proportion == b.overlap_proportion);
  const covariance_report_t c = covariance_report(1.5, 0.8, 20, 1000, 6);
  CHECK(a.mean_x != c.mean_x);
}

TEST_CASE("overlap input validation", "[overlap]") {
  CHECK_THROWS_AS(collision_series(0.0, 10), validation_error);
  CHECK_THROWS_AS(collision_series(-1.0, 10), validation_error);
  CHECK_THROWS_AS(collision_series(1.0, -1), validation_error);
  CHECK_THROWS_AS(collision_series(1.0, 100001), validation_error);
  CHECK_THROWS_AS(collision_asymptote(0.0), validation_error);
  CHECK_THROWS_AS(q_series_from_generating_function(-1), validation_error);
  CHECK_THROWS_AS(q_series_from_generating_function(100001), validation_error);
  CHECK_THROWS_AS(p_series_from_generating_function(0.0, 10), validation_error);
  CHECK_THROWS_AS(p_series_from_generating_function(1.0, -2), validation_error);
  const beta_environment env(1.0, 1.0, 1);
  CHECK_THROWS_AS(two_walker_sample(env, -1, 1), validation_error);
  CHECK_THROWS_AS(collision_frequency_mc(1.0, 1.0, -1, 10, 1),
                  validation_error);
  CHECK_THROWS_AS(collision_frequency_mc(1.0, 1.0, 5, 0, 1), validation_error);
  CHECK_THROWS_AS(collision_frequency_mc(0.0, 1.0, 5, 10, 1),
                  validation_error);
  CHECK_THROWS_AS(covariance_report(1.0, 1.0, 0, 100, 1), validation_error);
  CHECK_THROWS_AS(covariance_report(1.0, 1.0, 10, 1, 1), validation_error);
  CHECK_THROWS_AS(covariance_report(0.0, 1.0, 10, 10, 1), validation_error);
}

// Fredholm determinant representations: Mellin-Barnes and series kernels for
// the Laplace transforms, bent-contour kernel for the passage-time tail.
//
// Anchors used here:
//  * Z(0,1) = 1 and Z(t, t+1) = 1 identically, so those determinants must
//    equal e^u exactly.
//  * The certified truncated moment series bounds E[e^{uZ}] independently.
//  * The series kernel (rational, |u| < 1) and the Mellin-Barnes kernel
//    (gamma functions, any u < 0) must agree where both converge.
//  * The walk/polymer dictionary: for mu = alpha, nu = alpha + beta and
//    x = t - 2n + 2, the two determinants represent the same quantity.
//  * Monte Carlo estimates of E[e^{u P(t,x)}] and P(T(n,m) > r).
//  * P(T(0,1) > r) = (b/(a+b)) e^{-a r} in closed form.

#include <betalab/fredholm.hpp>
#include <betalab/fpp.hpp>
#include <betalab/moments.hpp>
#include <betalab/rwre.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

using betalab::bp_laplace_det;
using betalab::fpp_tail_det;
using betalab::fredholm_options;
using betalab::rw_laplace_det;
using betalab::series_laplace_det;
using Catch::Approx;

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

TEST_CASE("laplace determinant at u = 0 is exactly one", "[fredholm]") {
  CHECK(bp_laplace_det(2, 1, 1.0, 2.0, kNegInf) == 1.0);
  CHECK(rw_laplace_det(2, 0, 1.0, 1.0, kNegInf) == 1.0);
  CHECK(series_laplace_det(2, 1, 1.0, 2.0, 0.0) == 1.0);
}

TEST_CASE("deterministic partition functions give e^u", "[fredholm]") {
  // Z(0,1) = 1: E[e^{uZ}] = e^u.
  CHECK(bp_laplace_det(0, 1, 1.0, 2.0, 0.0) == Approx(std::exp(-1.0)).margin(1e-9));
  CHECK(bp_laplace_det(0, 1, 1.3, 2.9, std::log(0.5)) ==
        Approx(std::exp(-0.5)).margin(1e-9));
  // Z(t, t+1) = 1 on the upper boundary.
  CHECK(bp_laplace_det(1, 2, 1.0, 2.0, 0.0) == Approx(std::exp(-1.0)).margin(1e-8));
  CHECK(bp_laplace_det(3, 4, 1.5, 2.2, std::log(2.0)) ==
        Approx(std::exp(-2.0)).margin(1e-8));
  // P(t, -t) = 1 (every path stays weakly right of -t).
  CHECK(rw_laplace_det(3, -3, 1.0, 1.0, 0.0) == Approx(std::exp(-1.0)).margin(1e-8));
}

TEST_CASE("determinant matches the certified moment series", "[fredholm]") {
  // t = 1, n = 1: Z is a single Beta(mu, nu - mu) weight.
  {
    const double mu = 1.3, nu = 2.9, u = -0.5;
    betalab::moment_calculator mc(mu, nu);
    const int K = betalab::laplace_truncation_order(std::abs(u), 1e-9);
    const auto lap = betalab::laplace_from_moments(mc, 1, 1, u, K);
    const double det = bp_laplace_det(1, 1, mu, nu, std::log(-u));
    CHECK(det == Approx(lap.value.real()).margin(1e-6 + lap.remainder_bound));
  }
  // t = 2, n = 2 at u = -1.
  {
    const double mu = 1.0, nu = 2.0, u = -1.0;
    betalab::moment_calculator mc(mu, nu);
    const int K = betalab::laplace_truncation_order(std::abs(u), 1e-10);
    const auto lap = betalab::laplace_from_moments(mc, 2, 2, u, K);
    const double det = bp_laplace_det(2, 2, mu, nu, 0.0);
    CHECK(det == Approx(lap.value.real()).margin(1e-7 + lap.remainder_bound));
  }
  // t = 3, n = 2 at u = -2 (outside the series kernel's disc).
  {
    const double mu = 1.5, nu = 2.2, u = -2.0;
    betalab::moment_calculator mc(mu, nu);
    const int K = betalab::laplace_truncation_order(std::abs(u), 1e-10);
    const auto lap = betalab::laplace_from_moments(mc, 3, 2, u, K);
    const double det = bp_laplace_det(3, 2, mu, nu, std::log(2.0));
    CHECK(det == Approx(lap.value.real()).margin(1e-7 + lap.remainder_bound));
  }
}

TEST_CASE("series and Mellin-Barnes kernels agree inside the unit disc", "[fredholm]") {
  const double mu = 1.0, nu = 2.0;
  const double mb1 = bp_laplace_det(2, 2, mu, nu, std::log(0.5));
  const double ser1 = series_laplace_det(2, 2, mu, nu, -0.5);
  CHECK(ser1 == Approx(mb1).margin(1e-8));
  const double mb2 = bp_laplace_det(4, 3, 1.3, 2.9, std::log(0.75));
  const double ser2 = series_laplace_det(4, 3, 1.3, 2.9, -0.75);
  CHECK(ser2 == Approx(mb2).margin(1e-8));
}

TEST_CASE("walk and polymer determinants obey the dictionary", "[fredholm]") {
  // x = t - 2n + 2, mu = alpha, nu = alpha + beta.
  const double d1 = rw_laplace_det(4, 0, 1.0, 1.0, 0.0);
  const double d2 = bp_laplace_det(4, 3, 1.0, 2.0, 0.0);
  CHECK(d1 == Approx(d2).margin(1e-9));
  const double d3 = rw_laplace_det(5, 1, 1.5, 0.7, std::log(2.0));
  const double d4 = bp_laplace_det(5, 3, 1.5, 2.2, std::log(2.0));
  CHECK(d3 == Approx(d4).margin(1e-9));
}

TEST_CASE("walk determinant matches Monte Carlo", "[fredholm][slow]") {
  const int t = 4, x = 0;
  const double alpha = 1.0, beta = 1.0;
  const double det = rw_laplace_det(t, x, alpha, beta, 0.0);  // u = -1
  const int envs = 200000;
  double sum = 0.0, sumsq = 0.0;
  for (int e = 0; e < envs; ++e) {
    betalab::beta_environment env(alpha, beta, betalab::derive_seed(20250803, e));
    const auto law = betalab::quenched_law(env, t);
    const double p = betalab::quenched_tail(law, t, x);
    const double val = std::exp(-p);
    sum += val;
    sumsq += val * val;
  }
  const double mean = sum / envs;
  const double var = (sumsq / envs - mean * mean) / envs;
  const double se = std::sqrt(var);
  INFO("det=" << det << " mc=" << mean << " se=" << se);
  CHECK(std::abs(det - mean) <= 4.0 * se + 1e-6);
}

TEST_CASE("laplace determinant is invariant under contour deformation", "[fredholm]") {
  const double base = bp_laplace_det(3, 2, 1.0, 2.0, 0.0);
  fredholm_options smaller;
  smaller.radius_scale = 0.5;
  CHECK(bp_laplace_det(3, 2, 1.0, 2.0, 0.0, smaller) == Approx(base).margin(1e-7));
  fredholm_options finer;
  finer.s_step = 0.02;
  CHECK(bp_laplace_det(3, 2, 1.0, 2.0, 0.0, finer) == Approx(base).margin(1e-7));
}

TEST_CASE("passage-time tail determinant reproduces closed forms", "[fredholm]") {
  // T(0,0) = 0 almost surely: the tail probability vanishes.
  CHECK(fpp_tail_det(0, 0, 1.0, 0.5, 0.7) == Approx(0.0).margin(1e-8));
  // T(0,1) is a single vertical edge: P(T > r) = (b/(a+b)) e^{-a r}.
  const double a = 1.3, b = 0.6, r = 0.8;
  const double closed = (b / (a + b)) * std::exp(-a * r);
  CHECK(fpp_tail_det(0, 1, a, b, r) == Approx(closed).margin(1e-7));
  // Tail probabilities decrease in r.
  const double lo = fpp_tail_det(2, 1, 1.0, 1.0, 0.3);
  const double hi = fpp_tail_det(2, 1, 1.0, 1.0, 0.9);
  CHECK(lo > hi);
  CHECK(hi > 0.0);
}

TEST_CASE("passage-time tail determinant matches Monte Carlo", "[fredholm][slow]") {
  struct config {
    int n, m;
    double r;
  };
  const config cases[] = {{1, 0, 0.4}, {1, 1, 0.5}, {2, 1, 0.6}};
  const double a = 1.0, b = 1.0;
  const int lattices = 30000;
  for (const auto& c : cases) {
    const double det = fpp_tail_det(c.n, c.m, a, b, c.r);
    int hits = 0;
    for (int e = 0; e < lattices; ++e) {
      betalab::fpp_lattice lat(a, b, betalab::derive_seed(91251 + c.n * 10 + c.m, e));
      if (betalab::first_passage_time(lat, c.n, c.m) > c.r) ++hits;
    }
    const double phat = double(hits) / lattices;
    const double se = std::sqrt(phat * (1.0 - phat) / lattices);
    INFO("n=" << c.n << " m=" << c.m << " det=" << det << " mc=" << phat);
    CHECK(std::abs(det - phat) <= 4.0 * se + 1e-6);
  }
}

TEST_CASE("passage-time determinant is invariant under contour deformation", "[fredholm]") {
  const double base = fpp_tail_det(1, 1, 1.0, 1.0, 0.5);
  fredholm_options smaller;
  smaller.radius_scale = 0.5;
  CHECK(fpp_tail_det(1, 1, 1.0, 1.0, 0.5, smaller) == Approx(base).margin(1e-7));
  fredholm_options taller;
  taller.fpp_vertical_half = 2.0;
  taller.fpp_panel_length = 1.5;
  CHECK(fpp_tail_det(1, 1, 1.0, 1.0, 0.5, taller) == Approx(base).margin(1e-7));
}

TEST_CASE("fredholm input validation", "[fredholm]") {
  CHECK_THROWS_AS(bp_laplace_det(2, 0, 1.0, 2.0, 0.0), betalab::validation_error);
  CHECK_THROWS_AS(bp_laplace_det(2, 4, 1.0, 2.0, 0.0), betalab::validation_error);
  CHECK_THROWS_AS(bp_laplace_det(2, 1, 2.0, 1.0, 0.0), betalab::validation_error);
  CHECK_THROWS_AS(rw_laplace_det(3, 0, 1.0, 1.0, 0.0), betalab::validation_error);  // parity
  CHECK_THROWS_AS(rw_laplace_det(3, 5, 1.0, 1.0, 0.0), betalab::validation_error);
  CHECK_THROWS_AS(series_laplace_det(2, 1, 1.0, 2.0, -1.5), betalab::validation_error);
  CHECK_THROWS_AS(fpp_tail_det(1, 1, 1.0, 1.0, 0.0), betalab::validation_error);
  CHECK_THROWS_AS(fpp_tail_det(-1, 1, 1.0, 1.0, 0.5), betalab::validation_error);
  fredholm_options huge;
  huge.radius_scale = 4.0;
  CHECK_THROWS_AS(bp_laplace_det(2, 1, 1.0, 2.0, 0.0, huge), betalab::validation_error);
}

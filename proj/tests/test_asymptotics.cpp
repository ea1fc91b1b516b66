// Limit-theorem constants: closed-form anchors, critical-point identities,
// finite-difference cross-checks of the phase derivatives, steep-descent
// monotonicity, slope expansions, and extreme-value constants.
#include <betalab/asymptotics.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

using betalab::cplx;
using betalab::critical_point_check;
using betalab::extreme_constants;
using betalab::fpp_constants;
using betalab::fpp_phase;
using betalab::fpp_phase_derivative;
using betalab::model_kind;
using betalab::rwre_constants;
using betalab::rwre_phase;
using betalab::rwre_phase_derivative;
using betalab::steep_descent_check;
using betalab::theta_constants;
using Catch::Approx;

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
  return g;
}

}  // namespace

TEST_CASE("random-walk constants reproduce the uniform-weight closed forms",
          "[asymptotics]") {
  for (double theta : linspace(0.05, 3.0, 60)) {
    const theta_constants c = rwre_constants(theta, 1.0, 1.0);
    const double denom = theta * theta + (theta + 1.0) * (theta + 1.0);
    const double x_closed = (1.0 + 2.0 * theta) / denom;
    const double rate_closed = 1.0 / denom;
    const double sigma3_closed =
        1.0 / (theta + 3.0 * theta * theta + 4.0 * std::pow(theta, 3) +
               2.0 * std::pow(theta, 4));
    CHECK(c.x == Approx(x_closed).margin(1e-12));
    CHECK(c.rate_I == Approx(rate_closed).margin(1e-12));
    CHECK(std::pow(c.sigma, 3) == Approx(sigma3_closed).margin(1e-12));
    // Rate as a function of velocity, and the scale expressed through it.
    CHECK(c.rate_I ==
          Approx(1.0 - std::sqrt(1.0 - c.x * c.x)).margin(1e-12));
    CHECK(std::pow(c.sigma, 3) ==
          Approx(2.0 * c.rate_I * c.rate_I / (1.0 - c.rate_I)).margin(1e-12));
  }
}

TEST_CASE("random-walk constants at pinned points", "[asymptotics]") {
  const theta_constants half = rwre_constants(0.5, 1.0, 1.0);
  CHECK(half.x == Approx(0.8).margin(1e-14));
  CHECK(half.rate_I == Approx(0.4).margin(1e-14));
  CHECK(half.conjectural);  // the proved window theta < 1/2 is open
  CHECK_FALSE(rwre_constants(0.45, 1.0, 1.0).conjectural);

  const theta_constants one = rwre_constants(1.0, 1.0, 1.0);
  CHECK(std::pow(one.sigma, 3) == Approx(0.1).margin(1e-13));
  CHECK(one.h3 == Approx(0.2).margin(1e-13));
  CHECK(one.conjectural);  // theta >= 1/2

  CHECK(rwre_constants(0.3, 2.0, 0.7).conjectural);  // non-uniform weights
}

TEST_CASE("velocity stays inside the admissible cone", "[asymptotics]") {
  const double pairs[][2] = {{1, 1}, {2, 0.7}, {0.5, 1.5}, {1.3, 2.9}, {3, 0.4}};
  for (const auto& p : pairs) {
    const double drift = (p[0] - p[1]) / (p[0] + p[1]);
    for (double theta : {0.1, 0.3, 0.8, 2.0, 8.0}) {
      const theta_constants c = rwre_constants(theta, p[0], p[1]);
      CHECK(c.x > drift);
      CHECK(c.x < 1.0);
      CHECK(c.rate_I > 0.0);
      CHECK(c.sigma > 0.0);
    }
  }
}

TEST_CASE("critical-point identities hold on a 50-point grid",
          "[asymptotics]") {
  // 25 random-walk points and 25 percolation points: phase derivatives vanish
  // at theta to 1e-10 and the third derivative equals twice the cubed scale.
  const double rw_pairs[][2] = {
      {1, 1}, {2, 0.7}, {0.5, 1.5}, {1.3, 2.9}, {3, 0.4}};
  const double fpp_pairs[][2] = {
      {1, 1}, {1.3, 0.6}, {0.4, 2.5}, {2.2, 1.1}, {0.9, 0.35}};
  const double thetas[] = {0.1, 0.35, 0.8, 1.6, 2.5};
  for (const auto& p : rw_pairs) {
    for (double theta : thetas) {
      const auto rep = critical_point_check(rwre_constants(theta, p[0], p[1]));
      INFO("random walk alpha=" << p[0] << " beta=" << p[1]
                                << " theta=" << theta);
      CHECK(std::abs(rep.d1) <= 1e-10);
      CHECK(std::abs(rep.d2) <= 1e-10);
      CHECK(rep.third_positive);
      CHECK(rep.consistent);
      CHECK(rep.stationary);
    }
  }
  for (const auto& p : fpp_pairs) {
    for (double theta : thetas) {
      const auto rep = critical_point_check(fpp_constants(theta, p[0], p[1]));
      INFO("percolation a=" << p[0] << " b=" << p[1] << " theta=" << theta);
      CHECK(std::abs(rep.d1) <= 1e-10);
      CHECK(std::abs(rep.d2) <= 1e-10);
      CHECK(rep.third_positive);
      CHECK(rep.consistent);
      CHECK(rep.stationary);
    }
  }
}

TEST_CASE("finite differences confirm the analytic phase derivatives",
          "[asymptotics]") {
  const double s = 1e-5;
  SECTION("random walk") {
    const theta_constants c = rwre_constants(0.8, 1.3, 2.9);
    for (double z : {0.3, 0.9, 1.7}) {
      const double fd1 =
          (rwre_phase(c, z + s) - rwre_phase(c, z - s)) / (2.0 * s);
      CHECK(fd1 == Approx(rwre_phase_derivative(c, 1, z)).margin(1e-7));
      const double fd2 = (rwre_phase_derivative(c, 1, z + s) -
                          rwre_phase_derivative(c, 1, z - s)) /
                         (2.0 * s);
      CHECK(fd2 == Approx(rwre_phase_derivative(c, 2, z)).margin(1e-7));
      const double fd3 = (rwre_phase_derivative(c, 2, z + s) -
                          rwre_phase_derivative(c, 2, z - s)) /
                         (2.0 * s);
      CHECK(fd3 == Approx(rwre_phase_derivative(c, 3, z)).margin(1e-6));
    }
  }
  SECTION("percolation") {
    const theta_constants c = fpp_constants(1.4, 0.9, 0.35);
    for (double z : {0.4, 1.1, 2.6}) {
      const double fd1 =
          (fpp_phase(c, z + s) - fpp_phase(c, z - s)) / (2.0 * s);
      CHECK(fd1 == Approx(fpp_phase_derivative(c, 1, z)).margin(1e-7));
      const double fd2 = (fpp_phase_derivative(c, 1, z + s) -
                          fpp_phase_derivative(c, 1, z - s)) /
                         (2.0 * s);
      CHECK(fd2 == Approx(fpp_phase_derivative(c, 2, z)).margin(1e-7));
      const double fd3 = (fpp_phase_derivative(c, 2, z + s) -
                          fpp_phase_derivative(c, 2, z - s)) /
                         (2.0 * s);
      CHECK(fd3 == Approx(fpp_phase_derivative(c, 3, z)).margin(1e-6));
    }
  }
}

TEST_CASE("uniform-weight closed form of the first phase derivative",
          "[asymptotics]") {
  for (double theta : {0.2, 0.45, 1.0}) {
    const theta_constants c = rwre_constants(theta, 1.0, 1.0);
    for (double z : {0.1, 0.3, 0.7, 1.2, 2.5}) {
      const double closed =
          (theta - z) * (theta - z) /
          (z * (1.0 + z) * (1.0 + 2.0 * theta + 2.0 * theta * theta));
      CHECK(rwre_phase_derivative(c, 1, z) == Approx(closed).margin(1e-12));
    }
  }
}

TEST_CASE("complex phase agrees with the real phase on the real axis",
          "[asymptotics]") {
  const theta_constants rw = rwre_constants(0.6, 2.0, 0.7);
  const theta_constants fp = fpp_constants(1.0, 1.3, 0.6);
  for (double z : {0.2, 0.8, 1.9}) {
    CHECK(rwre_phase(rw, cplx(z, 0.0)).real() ==
          Approx(rwre_phase(rw, z)).margin(1e-12));
    CHECK(std::abs(rwre_phase(rw, cplx(z, 0.0)).imag()) <= 1e-12);
    CHECK(fpp_phase(fp, cplx(z, 0.0)).real() ==
          Approx(fpp_phase(fp, z)).margin(1e-12));
    CHECK(std::abs(fpp_phase(fp, cplx(z, 0.0)).imag()) <= 1e-12);
  }
}

TEST_CASE("percolation constants at pinned points and both printed forms",
          "[asymptotics]") {
  const theta_constants c = fpp_constants(1.0, 1.0, 1.0);
  CHECK(c.kappa == Approx(27.0 / 5.0).margin(1e-14));
  CHECK(c.tau == Approx(2.0 / 5.0).margin(1e-14));
  CHECK(std::pow(c.rho, 3) == Approx(0.4).margin(1e-13));
  CHECK_FALSE(c.conjectural);

  // The factored kappa/tau must match their defining difference forms.
  const double abs_[][2] = {{1, 1}, {1.3, 0.6}, {0.4, 2.5}};
  for (const auto& p : abs_) {
    const double a = p[0], b = p[1];
    for (double theta : {0.2, 0.5, 1.0, 2.0, 5.0}) {
      const theta_constants k = fpp_constants(theta, a, b);
      auto inv2 = [](double w) { return 1.0 / (w * w); };
      const double kappa_diff = (inv2(theta) - inv2(a + theta)) /
                                (inv2(a + theta) - inv2(a + b + theta));
      const double tau_diff =
          1.0 / (a + theta) - 1.0 / theta +
          k.kappa * (1.0 / (a + theta) - 1.0 / (a + b + theta));
      CHECK(k.kappa == Approx(kappa_diff).epsilon(1e-12));
      CHECK(k.tau == Approx(tau_diff).epsilon(1e-9).margin(1e-14));
    }
  }
}

TEST_CASE("slope and passage-time constants decay as prescribed for large "
          "theta",
          "[asymptotics]") {
  const double a = 1.3, b = 0.6;
  // kappa(theta) - a/b - 3a(a+b)/(2b)/theta = O(1/theta^2)
  const double lead = 3.0 * a * (a + b) / (2.0 * b);
  double prev_scaled = 0.0;
  for (double theta : {10.0, 100.0, 1000.0}) {
    const theta_constants c = fpp_constants(theta, a, b);
    const double rem = c.kappa - a / b - lead / theta;
    const double scaled = std::abs(rem) * theta * theta;
    CHECK(scaled < 10.0 * a * (a + b) / b);  // bounded => O(1/theta^2)
    if (prev_scaled > 0.0) {
      CHECK(scaled == Approx(prev_scaled).epsilon(0.25));  // ~constant
    }
    prev_scaled = scaled;

    // tau * theta^3 -> a(a+b)/2 with error O(1/theta)
    const double tau_lim = 0.5 * a * (a + b);
    CHECK(std::abs(c.tau * std::pow(theta, 3) - tau_lim) <=
          1.01 * tau_lim * (2.0 * a + b) / (2.0 * theta));

    // rho * theta^{5/3} -> (3 a (a+b) / 2)^{1/3}, deviation O(1/theta)
    const double rho_lim = std::cbrt(1.5 * a * (a + b));
    const double rho_eps = theta >= 1000.0 ? 0.002 : (theta >= 100.0 ? 0.02 : 0.15);
    CHECK(c.rho * std::pow(theta, 5.0 / 3.0) ==
          Approx(rho_lim).epsilon(rho_eps));
  }
}

TEST_CASE("slope and passage-time constants are monotone in theta",
          "[asymptotics]") {
  const double a = 0.8, b = 1.7;
  double prev_kappa = std::numeric_limits<double>::infinity();
  double prev_tau = std::numeric_limits<double>::infinity();
  for (double theta : linspace(0.2, 20.0, 40)) {
    const theta_constants c = fpp_constants(theta, a, b);
    CHECK(c.kappa < prev_kappa);
    CHECK(c.tau < prev_tau);
    CHECK(c.kappa > a / b);
    CHECK(c.tau > 0.0);
    CHECK(c.rho > 0.0);
    prev_kappa = c.kappa;
    prev_tau = c.tau;
  }
}

TEST_CASE("vertical line and circle are steep descent for the phase",
          "[asymptotics]") {
  const std::vector<double> ygrid = linspace(0.05, 5.0, 60);
  SECTION("random walk, uniform weights: line and circle") {
    const theta_constants c = rwre_constants(0.3, 1.0, 1.0);
    const std::vector<double> phigrid = linspace(0.1, betalab::pi - 0.05, 50);
    const auto rep = steep_descent_check(c, ygrid, phigrid);
    INFO("line violation " << rep.max_line_violation << ", circle violation "
                           << rep.max_circle_violation);
    CHECK(rep.line_ok);
    CHECK(rep.circle_ok);
  }
  SECTION("random walk, generic weights: line only") {
    const theta_constants c = rwre_constants(0.6, 2.0, 0.7);
    CHECK(steep_descent_check(c, ygrid).line_ok);
  }
  SECTION("percolation lines") {
    CHECK(steep_descent_check(fpp_constants(1.0, 1.0, 1.0), ygrid).line_ok);
    CHECK(steep_descent_check(fpp_constants(2.0, 1.3, 0.5), ygrid).line_ok);
  }
}

TEST_CASE("extreme-value constants", "[asymptotics]") {
  SECTION("uniform weights, c = 1/2: closed forms") {
    const auto e = extreme_constants(0.5, 1.0, 1.0);
    CHECK(e.theta0 == Approx((std::sqrt(3.0) - 1.0) / 2.0).margin(1e-9));
    CHECK(e.x0 == Approx(std::sqrt(3.0) / 2.0).margin(1e-10));
    CHECK(e.sigma0 == Approx(1.0).margin(1e-9));
    CHECK(e.rate_slope == Approx(std::sqrt(3.0)).margin(1e-8));
    CHECK(e.d == Approx(1.0 / std::sqrt(3.0)).margin(1e-8));
    // Same value through the closed-form route d = (2 c^2 (1-c)^2)^{1/3} / x0.
    const double closed = std::cbrt(2.0 * 0.25 * 0.25) / (std::sqrt(3.0) / 2.0);
    CHECK(e.d == Approx(closed).margin(1e-8));
    CHECK_FALSE(e.conjectural);
  }
  SECTION("uniform weights below the proved window") {
    CHECK(extreme_constants(0.3, 1.0, 1.0).conjectural);
  }
  SECTION("generic weights solve the rate equation") {
    const auto e = extreme_constants(0.3, 2.0, 0.7);
    const theta_constants at0 = rwre_constants(e.theta0, 2.0, 0.7);
    CHECK(at0.rate_I == Approx(0.3).margin(1e-12));
    CHECK(at0.x == Approx(e.x0).margin(1e-14));
    CHECK(e.d > 0.0);
    CHECK(e.rate_slope > 0.0);
    CHECK(e.conjectural);
  }
  SECTION("growth rate validation") {
    CHECK_THROWS_AS(extreme_constants(0.0, 1.0, 1.0), betalab::validation_error);
    CHECK_THROWS_AS(extreme_constants(1.0, 1.0, 1.0), betalab::validation_error);
    CHECK_THROWS_AS(extreme_constants(-0.2, 1.0, 1.0),
                    betalab::validation_error);
    // cone-edge rate for (alpha, beta) = (2, 0.7) is psi(2.7) - psi(2) < 0.4
    CHECK_THROWS_AS(extreme_constants(0.4, 2.0, 0.7), betalab::validation_error);
    CHECK_NOTHROW(extreme_constants(0.99, 1.0, 1.0));
  }
}

TEST_CASE("constant builders validate their domains", "[asymptotics]") {
  CHECK_THROWS_AS(rwre_constants(0.0, 1.0, 1.0), betalab::validation_error);
  CHECK_THROWS_AS(rwre_constants(-1.0, 1.0, 1.0), betalab::validation_error);
  CHECK_THROWS_AS(rwre_constants(0.5, 0.0, 1.0), betalab::validation_error);
  CHECK_THROWS_AS(rwre_constants(0.5, 1.0, -2.0), betalab::validation_error);
  CHECK_THROWS_AS(fpp_constants(0.0, 1.0, 1.0), betalab::validation_error);
  CHECK_THROWS_AS(fpp_constants(1.0, 0.0, 1.0), betalab::validation_error);
  CHECK_THROWS_AS(fpp_constants(1.0, 1.0, 0.0), betalab::validation_error);
  CHECK_THROWS_AS(rwre_phase_derivative(rwre_constants(0.5, 1, 1), 0, 1.0),
                  betalab::validation_error);
  CHECK_THROWS_AS(rwre_phase_derivative(rwre_constants(0.5, 1, 1), 4, 1.0),
                  betalab::validation_error);
  CHECK_THROWS_AS(
      steep_descent_check(fpp_constants(1.0, 1.0, 1.0), {0.1, 0.2}, {0.5, 1.0}),
      betalab::validation_error);
  CHECK_THROWS_AS(steep_descent_check(rwre_constants(0.5, 1, 1), {0.1}),
                  betalab::validation_error);
}

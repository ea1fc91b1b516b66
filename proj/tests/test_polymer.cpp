// Beta polymer partition function: boundary identities, worked examples,
// monotonicity, the half-line variant, and the exact pathwise coupling to
// the random walk tail.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "betalab/polymer.hpp"

using betalab::beta_environment;
using betalab::partition_function;
using betalab::polymer_environment;
using Catch::Approx;

TEST_CASE("base case and upper boundary", "[polymer]") {
  const polymer_environment env(1.0, 2.5, 11);
  const auto z0 = partition_function(env, 0);
  REQUIRE(z0.size() == 1);
  CHECK(z0[0] == 1.0);
  // Z(t, t+1) = Z(t-1, t) propagates the top value unchanged: it equals 1
  // because every prefix Z(s, s+1) chains back to Z(0, 1).
  for (int t = 1; t <= 12; ++t) {
    const auto z = partition_function(env, t);
    REQUIRE(z.size() == std::size_t(t + 1));
    CHECK(z.back() == Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("lower boundary is the product of its vertex weights", "[polymer]") {
  const polymer_environment env(0.8, 1.7, 23);
  double prod = 1.0;
  for (int s = 1; s <= 9; ++s) {
    prod *= env.b(s, 1);
    const auto z = partition_function(env, s);
    CHECK(z.front() == Approx(prod).epsilon(1e-13));
  }
}

TEST_CASE("three-step slice against hand expansion", "[polymer]") {
  const polymer_environment env(1.4, 3.0, 37);
  // Hand-rolled evolution of (Z(t,1), ..., Z(t,t+1)).
  const double b11 = env.b(1, 1);
  const double b21 = env.b(2, 1), b22 = env.b(2, 2);
  const double b31 = env.b(3, 1), b32 = env.b(3, 2), b33 = env.b(3, 3);
  // t = 1: (b11, 1)
  // t = 2: (b11 b21, b11 b22 + (1-b22) b11?? -- careful: Z(2,2) uses
  //         Z(1,2) b22 + Z(1,1)(1 - b22) = b22 + b11 (1 - b22).)
  const double z21 = b11 * b21;
  const double z22 = 1.0 * b22 + b11 * (1.0 - b22);
  const double z31 = z21 * b31;
  const double z32 = z22 * b32 + z21 * (1.0 - b32);
  const double z33 = 1.0 * b33 + z22 * (1.0 - b33);
  const auto z = partition_function(env, 3);
  REQUIRE(z.size() == 4);
  CHECK(z[0] == Approx(z31).epsilon(1e-13));
  CHECK(z[1] == Approx(z32).epsilon(1e-13));
  CHECK(z[2] == Approx(z33).epsilon(1e-13));
  CHECK(z[3] == Approx(1.0).epsilon(1e-13));
}

TEST_CASE("slice values are probabilities, nondecreasing in n", "[polymer]") {
  for (const std::uint64_t seed : {3ULL, 14ULL, 159ULL}) {
    const polymer_environment env(0.6, 2.1, seed);
    for (const int t : {5, 17, 33}) {
      const auto z = partition_function(env, t);
      for (std::size_t i = 0; i < z.size(); ++i) {
        CHECK(z[i] > 0.0);
        CHECK(z[i] <= 1.0 + 1e-13);
        if (i > 0) CHECK(z[i] >= z[i - 1] - 1e-13);
      }
    }
  }
}

TEST_CASE("half-line partition function", "[polymer]") {
  const polymer_environment env(1.1, 2.6, 4242);
  // Z~(0, n) = 1 and Z~(t, n) = 1 above the light cone; worked example
  // Z~(2, 6) = 1.
  const auto z0 = betalab::halfline_partition_function(env, 0, 8);
  for (const double v : z0) CHECK(v == 1.0);
  const auto z2 = betalab::halfline_partition_function(env, 2, 8);
  CHECK(z2[5] == 1.0);  // n = 6 > t = 2
  CHECK(z2[2] == 1.0);  // n = 3 = t + 1 also chains to the flat data
  // Agreement with the point-to-point function on the wedge n <= t + 1.
  for (const int t : {1, 2, 5, 11}) {
    const auto zh = betalab::halfline_partition_function(env, t, t + 3);
    const auto zp = partition_function(env, t);
    for (int n = 1; n <= t + 1; ++n) {
      CHECK(zh[n - 1] == Approx(zp[n - 1]).epsilon(1e-13));
    }
    for (int n = t + 2; n <= t + 3; ++n) {
      CHECK(zh[n - 1] == 1.0);
    }
  }
}

TEST_CASE("coupled environments map sites bijectively", "[polymer]") {
  const beta_environment walk(1.0, 2.0, 606);
  const polymer_environment poly(walk);
  // B_polymer(i, j) = B_walk(i - 2j + 1, i - 1).
  for (int i = 1; i <= 6; ++i) {
    for (int j = 1; j <= i; ++j) {
      CHECK(poly.site(i, j).log_b == walk.site(i - 2 * j + 1, i - 1).log_b);
    }
  }
}

TEST_CASE("pathwise coupling identity Z(t,n) = P(t, t-2n+2)", "[polymer]") {
  for (const std::uint64_t seed : {1ULL, 2ULL, 99ULL}) {
    CHECK(betalab::coupling_max_discrepancy(1.0, 2.0, seed, 16) < 1e-12);
    CHECK(betalab::coupling_max_discrepancy(0.5, 0.5, seed, 16) < 1e-12);
  }
}

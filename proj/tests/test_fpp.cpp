// Bernoulli-Exponential first-passage percolation: edge structure, exact
// small-lattice enumeration, the two equivalent target sets, cluster
// monotonicity, closed-form checks, and the zero-temperature statistic.

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "betalab/fpp.hpp"

using betalab::fpp_lattice;
using Catch::Approx;

TEST_CASE("exactly one outgoing edge per vertex is free", "[fpp]") {
  const fpp_lattice lat(1.3, 0.6, 99);
  int zero_up = 0;
  const int n = 4000;
  for (int i = 0; i < 40; ++i) {
    for (int j = 0; j < 100; ++j) {
      const auto e = lat.edges(i, j);
      const bool up_free = e.up == 0.0;
      const bool right_free = e.right == 0.0;
      CHECK(up_free != right_free);
      CHECK(e.up >= 0.0);
      CHECK(e.right >= 0.0);
      if (up_free) ++zero_up;
    }
  }
  // The vertical edge is free with probability a / (a + b).
  const double p = 1.3 / 1.9;
  CHECK(std::abs(double(zero_up) / n - p) < 4.0 * std::sqrt(p * (1 - p) / n));
}

TEST_CASE("edge times have the right conditional means", "[fpp]") {
  const double a = 0.9, b = 1.8;
  const fpp_lattice lat(a, b, 7);
  double sum_up = 0.0, sum_right = 0.0;
  int n_up = 0, n_right = 0;
  for (int i = 0; i < 300; ++i) {
    for (int j = 0; j < 300; ++j) {
      const auto e = lat.edges(i, j);
      if (e.up > 0.0) {
        sum_up += e.up;
        ++n_up;
      } else {
        sum_right += e.right;
        ++n_right;
      }
    }
  }
  CHECK(std::abs(sum_up / n_up - 1.0 / a) < 0.02);
  CHECK(std::abs(sum_right / n_right - 1.0 / b) < 0.02);
}

TEST_CASE("origin and axis passage times", "[fpp]") {
  const fpp_lattice lat(1.0, 1.0, 123);
  const auto t = betalab::passage_time_table(lat, 6, 6);
  CHECK(t[0][0] == 0.0);
  // Moving along an axis accumulates that axis' edge costs.
  double acc = 0.0;
  for (int j = 0; j < 6; ++j) {
    acc += lat.edges(0, j).up;
    CHECK(t[0][j + 1] == Approx(acc).epsilon(1e-13));
  }
  acc = 0.0;
  for (int i = 0; i < 6; ++i) {
    acc += lat.edges(i, 0).right;
    CHECK(t[i + 1][0] == Approx(acc).epsilon(1e-13));
  }
}

namespace {

// Brute-force point-to-point time: minimum over all up/right paths.
double brute_force_tpp(const fpp_lattice& lat, int i, int j) {
  if (i == 0 && j == 0) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  if (i > 0) {
    best = std::min(best,
                    brute_force_tpp(lat, i - 1, j) + lat.edges(i - 1, j).right);
  }
  if (j > 0) {
    best = std::min(best,
                    brute_force_tpp(lat, i, j - 1) + lat.edges(i, j - 1).up);
  }
  return best;
}

} // namespace

TEST_CASE("table agrees with brute-force path enumeration", "[fpp]") {
  const fpp_lattice lat(0.7, 1.4, 31415);
  const auto t = betalab::passage_time_table(lat, 4, 3);
  for (int i = 0; i <= 4; ++i) {
    for (int j = 0; j <= 3; ++j) {
      CHECK(t[i][j] == Approx(brute_force_tpp(lat, i, j)).epsilon(1e-12));
    }
  }
}

TEST_CASE("diagonal and segment first-passage times coincide", "[fpp]") {
  for (const std::uint64_t seed : {1ULL, 5ULL, 27ULL, 300ULL}) {
    const fpp_lattice lat(1.1, 0.8, seed);
    for (const auto& [n, m] : {std::pair{1, 1}, {2, 3}, {4, 2}, {3, 4}}) {
      const auto t = betalab::passage_time_table(lat, n, n + m);
      const double t_diag = betalab::first_passage_from_table(t, n, m);
      const double t_seg = betalab::first_passage_to_segment(t, n, m);
      CHECK(t_diag == Approx(t_seg).epsilon(1e-12));
      // Lean sweep agrees with the table route.
      CHECK(betalab::first_passage_time(lat, n, m) ==
            Approx(t_diag).epsilon(1e-12));
    }
  }
}

TEST_CASE("clusters are nested in time", "[fpp]") {
  const fpp_lattice lat(1.0, 2.0, 808);
  const auto c1 = betalab::percolation_cluster(lat, 0.5, 12, 12);
  const auto c2 = betalab::percolation_cluster(lat, 1.5, 12, 12);
  for (const auto& cell : c1) {
    CHECK(std::find(c2.begin(), c2.end(), cell) != c2.end());
  }
  CHECK(c2.size() >= c1.size());
  // The origin is always inside.
  CHECK(std::find(c1.begin(), c1.end(), std::pair{0, 0}) != c1.end());
}

TEST_CASE("single vertical edge tail matches the closed form", "[fpp]") {
  const double a = 1.4, b = 0.9;
  const int n = 200000;
  for (const double r : {0.3, 1.0}) {
    int above = 0;
    for (int s = 0; s < n; ++s) {
      const fpp_lattice lat(a, b, betalab::derive_seed(11, s));
      if (betalab::first_passage_time(lat, 0, 1) > r) ++above;
    }
    const double p = betalab::single_step_tail(a, b, r);
    CHECK(std::abs(double(above) / n - p) <
          4.0 * std::sqrt(p * (1.0 - p) / n));
  }
}

TEST_CASE("passage time has an atom at zero", "[fpp]") {
  // P(T(n, m) = 0) > 0: the zero-cost tree reaches the diagonal with
  // positive probability.  Empirically verify the atom exists.
  int zeros = 0;
  const int n = 20000;
  for (int s = 0; s < n; ++s) {
    const fpp_lattice lat(1.0, 1.0, betalab::derive_seed(21, s));
    if (betalab::first_passage_time(lat, 2, 2) == 0.0) ++zeros;
  }
  CHECK(zeros > 0.01 * n);
}

TEST_CASE("zero-temperature statistic is finite and nonnegative", "[fpp]") {
  // -eps log P is finite and, with sub-eps^2 values identified with the
  // limit law's zero atom, exactly nonnegative; either the snap fires (0)
  // or the value is at least eps^2.
  int zeros = 0;
  for (int s = 0; s < 50; ++s) {
    const double v = betalab::zero_temperature_statistic(
        1.0, 1.0, 0.1, 3, 3, betalab::derive_seed(33, s));
    REQUIRE(std::isfinite(v));
    CHECK(v >= 0.0);
    CHECK(v < 50.0);
    if (v == 0.0) {
      ++zeros;
    } else {
      CHECK(v >= 0.1 * 0.1);
    }
  }
  CHECK(zeros > 0);  // the atom has positive mass
}

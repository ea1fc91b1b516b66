#pragma once
// Bernoulli-Exponential first-passage percolation on the first quadrant.
//
// Each vertex (i, j) carries xi ~ Bernoulli(b / (a + b)) and an exponential
// variate; its outgoing vertical edge (i,j) -> (i,j+1) costs xi * E_a with
// E_a ~ Exp(a), and its outgoing horizontal edge (i,j) -> (i+1,j) costs
// (1 - xi) * E_b with E_b ~ Exp(b).  Exactly one outgoing edge of every
// vertex is free (the vertical one with probability a / (a + b)).
//
// T_pp(i, j) is the point-to-point passage time from the origin along
// up/right paths.  The first passage time to the diagonal
// D(n, m) = {(i, n + m - i) : 0 <= i <= n} is
//   T(n, m) = min_{0 <= i <= n} T_pp(i, n + m - i),
// and it coincides with the first passage time to the horizontal segment
// D~(n, m) = {(i, m) : 0 <= i <= n} (free vertical edges let the cluster
// grow upward at no cost beyond the segment).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "betalab/rng.hpp"
#include "betalab/rwre.hpp"

namespace betalab {

/// Lazily evaluated edge weights of one lattice realization.
class fpp_lattice {
 public:
  fpp_lattice(double a, double b, std::uint64_t seed)
      : a_(a), b_(b), seed_(seed) {
    if (!(a > 0.0) || !(b > 0.0)) {
      throw std::domain_error("fpp_lattice: rates must be positive");
    }
  }

  double a() const { return a_; }
  double b() const { return b_; }

  struct vertex_edges {
    double up;     // cost of (i,j) -> (i,j+1)
    double right;  // cost of (i,j) -> (i+1,j)
  };

  vertex_edges edges(std::int64_t i, std::int64_t j) const {
    keyed_stream st(seed_, stream_id::fpp_vertex, i, j);
    const bool xi = st.bernoulli(b_ / (a_ + b_));
    if (xi) {
      return {st.exponential(a_), 0.0};
    }
    return {0.0, st.exponential(b_)};
  }

  bool xi(std::int64_t i, std::int64_t j) const {
    keyed_stream st(seed_, stream_id::fpp_vertex, i, j);
    return st.bernoulli(b_ / (a_ + b_));
  }

 private:
  double a_;
  double b_;
  std::uint64_t seed_;
};

/// Dense table of point-to-point passage times T_pp(i, j) for
/// 0 <= i <= imax, 0 <= j <= jmax.
inline std::vector<std::vector<double>> passage_time_table(
    const fpp_lattice& lat, int imax, int jmax) {
  std::vector<std::vector<double>> t(imax + 1,
                                     std::vector<double>(jmax + 1, 0.0));
  // Cache each vertex's outgoing edges so the RNG is consulted once per
  // vertex: row i's rightward costs feed row i+1, column costs feed j+1.
  std::vector<double> right_prev(jmax + 1, 0.0);
  for (int i = 0; i <= imax; ++i) {
    std::vector<double> right_cur(jmax + 1, 0.0);
    double up_left = 0.0;
    for (int j = 0; j <= jmax; ++j) {
      double best;
      if (i == 0 && j == 0) {
        best = 0.0;
      } else if (i == 0) {
        best = t[i][j - 1] + up_left;
      } else if (j == 0) {
        best = t[i - 1][j] + right_prev[j];
      } else {
        best = std::min(t[i - 1][j] + right_prev[j], t[i][j - 1] + up_left);
      }
      t[i][j] = best;
      const fpp_lattice::vertex_edges e = lat.edges(i, j);
      right_cur[j] = e.right;
      up_left = e.up;
    }
    right_prev.swap(right_cur);
  }
  return t;
}

/// First passage time to the diagonal D(n, m), memory-lean two-row sweep
/// over the staircase region j <= n + m - i.
inline double first_passage_time(const fpp_lattice& lat, int n, int m) {
  if (n < 0 || m < 0 || n + m < 1) {
    throw std::domain_error("first_passage_time: need n, m >= 0, n + m >= 1");
  }
  const int jmax = n + m;
  std::vector<double> col_prev(jmax + 1), col_cur(jmax + 1);
  std::vector<double> right_prev(jmax + 1, 0.0), right_cur(jmax + 1, 0.0);
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; ++i) {
    const int jtop = n + m - i;
    double up_left = 0.0;
    for (int j = 0; j <= jtop; ++j) {
      double v;
      if (i == 0 && j == 0) {
        v = 0.0;
      } else if (i == 0) {
        v = col_cur[j - 1] + up_left;
      } else if (j == 0) {
        v = col_prev[j] + right_prev[j];
      } else {
        v = std::min(col_prev[j] + right_prev[j], col_cur[j - 1] + up_left);
      }
      col_cur[j] = v;
      const fpp_lattice::vertex_edges e = lat.edges(i, j);
      right_cur[j] = e.right;
      up_left = e.up;
    }
    if (col_cur[jtop] < best) best = col_cur[jtop];
    col_prev.swap(col_cur);
    right_prev.swap(right_cur);
  }
  return best;
}

/// First passage time to D(n, m) from a precomputed table (requires
/// dimensions imax >= n, jmax >= n + m).
inline double first_passage_from_table(
    const std::vector<std::vector<double>>& t, int n, int m) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; ++i) {
    best = std::min(best, t[i][n + m - i]);
  }
  return best;
}

/// First passage time to the horizontal segment D~(n, m) (requires
/// imax >= n, jmax >= m).
inline double first_passage_to_segment(
    const std::vector<std::vector<double>>& t, int n, int m) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; ++i) {
    best = std::min(best, t[i][m]);
  }
  return best;
}

/// Vertices of the percolation cluster C(time) within a bounding box.
inline std::vector<std::pair<int, int>> percolation_cluster(
    const fpp_lattice& lat, double time, int imax, int jmax) {
  const std::vector<std::vector<double>> t =
      passage_time_table(lat, imax, jmax);
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i <= imax; ++i) {
    for (int j = 0; j <= jmax; ++j) {
      if (t[i][j] <= time) cells.emplace_back(i, j);
    }
  }
  return cells;
}

/// Closed form P(T(0, 1) > r) = b / (a + b) * exp(-a r): the only path is
/// the single vertical edge from the origin.
inline double single_step_tail(double a, double b, double r) {
  return b / (a + b) * std::exp(-a * r);
}

/// One sample of the zero-temperature limit statistic -eps * log P(n+m, m-n)
/// computed in a Beta environment with shapes (eps*a, eps*b).
///
/// Values below eps^2 are identified with the limit law's atom at zero.  When
/// the lattice's free path reaches the target, the tail probability is
/// 1 - O(e^{-E/eps}) for an O(1) cost E, so the raw statistic is a strictly
/// positive remnant ~ eps e^{-E/eps} (or pure roundoff of either sign) that
/// converges to the atom without ever equalling 0.  Any cutoff that is o(1)
/// and dominates e^{-c/eps} separates those remnants from genuine positive
/// passage times in the small-eps limit; eps^2 is used.
inline double zero_temperature_statistic(double a, double b, double eps, int n,
                                         int m, std::uint64_t env_seed) {
  const beta_environment env(eps * a, eps * b, env_seed);
  const std::vector<double> log_law = log_quenched_law(env, n + m);
  const double raw = -eps * log_quenched_tail(log_law, n + m, m - n);
  return raw < eps * eps ? 0.0 : raw;
}

} // namespace betalab

#pragma once
// Numerical contour-integral evaluation of the polymer moment formulas.
//
// Two equivalent representations of E[Z(t,n_1)...Z(t,n_k)] are implemented:
//
//  * nested circles (k <= 3): the k-fold integral of
//        prod_{A<B} (z_A - z_B)/(z_A - z_B - 1)
//        prod_j ((nu+z_j)/z_j)^{n_j} ((mu+z_j)/(nu+z_j))^t dz_j/(nu+z_j)
//    over positively oriented circles about the origin whose radii satisfy
//    r_j = r_{j+1} + 1 + delta (so circle j encloses circle j+1 shifted by
//    one) with the innermost radius min(nu,1)/4, all excluding -nu, with
//    prefactor (2 pi i)^{-k};
//
//  * a single small circle (equal coordinates n, k <= 5): the partition sum
//        k! sum_{lambda |- k} (prod_j m_j!)^{-1} (2 pi i)^{-l}
//        oint...oint det[1/(v_i + lambda_i - v_j)]
//        prod_j f(v_j) f(v_j+1) ... f(v_j + lambda_j - 1) dv_j
//    with f(v) = ((nu+v)/v)^n ((mu+v)/(nu+v))^t / (nu+v), every v on the
//    circle of radius min(nu,1)/4 about the origin.
//
// Quadrature is the trapezoid rule on each circle (spectrally accurate for
// periodic analytic integrands), with node counts doubled until successive
// values agree.  Nodes are placed at half-step angles so they come in
// conjugate pairs, making the sums real up to rounding.
//
// Conditioning note: the factor ((nu+v)/v)^n grows like (4 max(nu,1))^n on
// the small circle, so large n amplifies cancellation; intended use is
// small n, t (the regime where the exact recursion provides oracles).

#include <betalab/errors.hpp>
#include <betalab/moments.hpp>
#include <betalab/specfun.hpp>

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace betalab {

struct contour_quad {
  double delta = 0.05;      // margin in the nesting radii r_j = r_{j+1} + 1 + delta
  int min_nodes = 32;       // starting trapezoid node count per circle
  int max_nodes = 8192;     // doubling cap per circle (lowered internally for k=3)
  double tolerance = 1e-10; // successive-doubling agreement target
};

namespace detail {

/// Per-variable factor ((nu+z)/z)^n ((mu+z)/(nu+z))^t / (nu+z).
inline cplx moment_factor(cplx z, int n, int t, double mu, double nu) {
  return ipow((nu + z) / z, n) * ipow((mu + z) / (nu + z), t) / (nu + z);
}

inline cplx cross_factor(cplx a, cplx b) { return (a - b) / (a - b - 1.0); }

/// Determinant of an l x l complex matrix (l <= 5) by in-place Gaussian
/// elimination with partial pivoting.
inline cplx small_det(cplx m[5][5], int l) {
  cplx det = 1.0;
  for (int c = 0; c < l; ++c) {
    int piv = c;
    for (int r = c + 1; r < l; ++r) {
      if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
    }
    if (piv != c) {
      for (int j = c; j < l; ++j) std::swap(m[piv][j], m[c][j]);
      det = -det;
    }
    if (m[c][c] == cplx(0.0, 0.0)) return 0.0;
    det *= m[c][c];
    for (int r = c + 1; r < l; ++r) {
      const cplx f = m[r][c] / m[c][c];
      for (int j = c + 1; j < l; ++j) m[r][j] -= f * m[c][j];
    }
  }
  return det;
}

/// Elementary symmetric polynomial e_l of the eigenvalues of B, i.e. the sum
/// of all l x l principal minors of B.
inline cplx elementary_symmetric(const Eigen::MatrixXcd& B, int l) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(B, /*computeEigenvectors=*/false);
  const auto& ev = es.eigenvalues();
  std::vector<cplx> coeff(static_cast<std::size_t>(l) + 1, cplx(0.0, 0.0));
  coeff[0] = 1.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    const cplx lam = ev[i];
    for (int d = std::min<int>(l, static_cast<int>(i) + 1); d >= 1; --d) {
      coeff[static_cast<std::size_t>(d)] += lam * coeff[static_cast<std::size_t>(d) - 1];
    }
  }
  return coeff[static_cast<std::size_t>(l)];
}

}  // namespace detail

/// Radii of the nested circles, innermost last.  Throws when the outermost
/// circle fails to exclude -nu, since then no admissible geometry of this
/// family exists.
inline std::vector<double> nested_radii(int k, double nu, const contour_quad& q = {}) {
  if (k < 1) throw validation_error("nested_radii: need k >= 1");
  std::vector<double> r(static_cast<std::size_t>(k));
  r[static_cast<std::size_t>(k) - 1] = std::min(nu, 1.0) / 4.0;
  for (int j = k - 2; j >= 0; --j) {
    r[static_cast<std::size_t>(j)] = r[static_cast<std::size_t>(j) + 1] + 1.0 + q.delta;
  }
  if (!(r[0] < nu)) {
    throw validation_error("nested_radii: nesting forces a radius >= nu; the contours cannot exclude -nu");
  }
  return r;
}

namespace detail {

// One trapezoid evaluation of the nested integral at N nodes per circle.
// `insert` (optional) multiplies the k=2 integrand by an extra factor.
inline cplx nested_eval(int t, const std::vector<int>& n, double mu, double nu,
                        const std::vector<double>& radii, int N,
                        const std::function<cplx(cplx, cplx)>& insert = {}) {
  const int k = static_cast<int>(n.size());
  std::vector<std::vector<cplx>> z(static_cast<std::size_t>(k)), fw(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    std::vector<cplx> w;
    circle_nodes(radii[static_cast<std::size_t>(j)], N, z[static_cast<std::size_t>(j)], w);
    auto& f = fw[static_cast<std::size_t>(j)];
    f.resize(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) {
      f[static_cast<std::size_t>(i)] =
          moment_factor(z[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)],
                        n[static_cast<std::size_t>(j)], t, mu, nu) *
          w[static_cast<std::size_t>(i)];
    }
  }
  cplx total(0.0, 0.0);
  if (k == 1) {
    for (int i = 0; i < N; ++i) total += fw[0][static_cast<std::size_t>(i)];
  } else if (k == 2) {
    for (int i1 = 0; i1 < N; ++i1) {
      const cplx z1 = z[0][static_cast<std::size_t>(i1)];
      const cplx f1 = fw[0][static_cast<std::size_t>(i1)];
      cplx row(0.0, 0.0);
      for (int i2 = 0; i2 < N; ++i2) {
        const cplx z2 = z[1][static_cast<std::size_t>(i2)];
        cplx term = cross_factor(z1, z2) * fw[1][static_cast<std::size_t>(i2)];
        if (insert) term *= insert(z1, z2);
        row += term;
      }
      total += f1 * row;
    }
  } else {  // k == 3
    for (int i1 = 0; i1 < N; ++i1) {
      const cplx z1 = z[0][static_cast<std::size_t>(i1)];
      const cplx f1 = fw[0][static_cast<std::size_t>(i1)];
      for (int i2 = 0; i2 < N; ++i2) {
        const cplx z2 = z[1][static_cast<std::size_t>(i2)];
        const cplx pre = f1 * cross_factor(z1, z2) * fw[1][static_cast<std::size_t>(i2)];
        cplx row(0.0, 0.0);
        for (int i3 = 0; i3 < N; ++i3) {
          const cplx z3 = z[2][static_cast<std::size_t>(i3)];
          row += cross_factor(z1, z3) * cross_factor(z2, z3) * fw[2][static_cast<std::size_t>(i3)];
        }
        total += pre * row;
      }
    }
  }
  return total / ipow(cplx(0.0, 2.0 * pi), k);
}

}  // namespace detail

/// E[Z(t,n_1)...Z(t,n_k)] by the nested-circle integral, k <= 3.
inline double nested_contour_moment(int t, std::vector<int> n, double mu, double nu,
                                    const contour_quad& q = {}) {
  if (!(0.0 < mu && mu < nu)) throw validation_error("nested_contour_moment: need 0 < mu < nu");
  if (t < 0) throw validation_error("nested_contour_moment: t must be >= 0");
  const int k = static_cast<int>(n.size());
  if (k < 1 || k > 3) throw validation_error("nested_contour_moment: k must be in 1..3");
  std::sort(n.begin(), n.end(), std::greater<int>());
  if (n.back() < 1) throw validation_error("nested_contour_moment: coordinates must be >= 1");
  const auto radii = nested_radii(k, nu, q);
  const int cap = std::min(q.max_nodes, k == 3 ? 1024 : 8192);
  return detail::stabilize(
      [&](int N) { return detail::nested_eval(t, n, mu, nu, radii, N); },
      q.min_nodes, cap, q.tolerance, "nested_contour_moment");
}

/// The two-point boundary operator applied inside the k=2 nested integral:
/// the integrand is multiplied by
///     -nu^2 (z_1 - z_2 - 1) / ((1+nu)(nu+z_1)(nu+z_2)),
/// which is the rational form of
///     (1/(1+nu)) tau1 tau2 + ((nu-1)/(1+nu)) tau2 + 1/(1+nu) - tau1
/// acting on ((nu+z_1)/z_1)^{n_1} ((nu+z_2)/z_2)^{n_2} (tau_i maps n_i to
/// n_i - 1, i.e. multiplies by z_i/(nu+z_i)).  The integral vanishes when
/// n_1 = n_2; that cancellation is the boundary condition of the evolution
/// equation.
inline double boundary_two_point_value(int t, int n1, int n2, double mu, double nu,
                                       const contour_quad& q = {}) {
  if (!(0.0 < mu && mu < nu)) throw validation_error("boundary_two_point_value: need 0 < mu < nu");
  if (t < 0 || n2 < 1 || n1 < n2) {
    throw validation_error("boundary_two_point_value: need t >= 0 and n1 >= n2 >= 1");
  }
  const std::vector<int> n = {n1, n2};
  const auto radii = nested_radii(2, nu, q);
  auto insert = [nu](cplx z1, cplx z2) {
    return -nu * nu * (z1 - z2 - 1.0) / ((1.0 + nu) * (nu + z1) * (nu + z2));
  };
  return detail::stabilize(
      [&](int N) { return detail::nested_eval(t, n, mu, nu, radii, N, insert); },
      q.min_nodes, q.max_nodes, q.tolerance, "boundary_two_point_value");
}

namespace detail {

// One trapezoid evaluation of the partition term for lambda at N nodes.
inline cplx partition_term(int t, int n, double mu, double nu,
                           const std::vector<int>& lambda, double rho, int N) {
  const int l = static_cast<int>(lambda.size());
  std::vector<cplx> v, w;
  circle_nodes(rho, N, v, w);
  // Chains f(v) f(v+1) ... f(v+p-1) for each part length p present.
  const int pmax = lambda[0];
  // chain[p-1][i] = product over a in [0, p)
  std::vector<std::vector<cplx>> chain(static_cast<std::size_t>(pmax),
                                       std::vector<cplx>(static_cast<std::size_t>(N)));
  for (int i = 0; i < N; ++i) {
    cplx prod(1.0, 0.0);
    for (int a = 0; a < pmax; ++a) {
      prod *= moment_factor(v[static_cast<std::size_t>(i)] + static_cast<double>(a), n, t, mu, nu);
      chain[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)] = prod;
    }
  }

  const bool all_equal = lambda[0] == lambda[static_cast<std::size_t>(l) - 1];
  if (all_equal) {
    // For equal parts p the l-fold integral equals l! times the sum of all
    // l x l principal minors of B_{ab} = chain_p(v_b) w_b / (v_a + p - v_b):
    // tuples with repeats contribute zero determinants and each subset is
    // counted l! times.
    const int p = lambda[0];
    Eigen::MatrixXcd B(N, N);
    for (int a = 0; a < N; ++a) {
      for (int b = 0; b < N; ++b) {
        B(a, b) = chain[static_cast<std::size_t>(p) - 1][static_cast<std::size_t>(b)] *
                  w[static_cast<std::size_t>(b)] /
                  (v[static_cast<std::size_t>(a)] + static_cast<double>(p) - v[static_cast<std::size_t>(b)]);
      }
    }
    double lfact = 1.0;
    for (int j = 2; j <= l; ++j) lfact *= j;
    return lfact * elementary_symmetric(B, l);
  }

  // Mixed part lengths: direct tensor sum over node tuples (l <= 4 here,
  // since the only length-5 partition of k <= 5 is all-equal).
  if (l > 4) throw validation_error("partition_term: mixed partition depth exceeds 4");
  std::vector<int> idx(static_cast<std::size_t>(l), 0);
  cplx total(0.0, 0.0);
  for (;;) {
    cplx weight(1.0, 0.0);
    for (int j = 0; j < l; ++j) {
      weight *= chain[static_cast<std::size_t>(lambda[static_cast<std::size_t>(j)]) - 1]
                     [static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])] *
                w[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])];
    }
    cplx m[5][5];
    for (int i = 0; i < l; ++i) {
      for (int j = 0; j < l; ++j) {
        m[i][j] = 1.0 / (v[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])] +
                         static_cast<double>(lambda[static_cast<std::size_t>(i)]) -
                         v[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])]);
      }
    }
    total += weight * small_det(m, l);
    int pos = 0;
    while (pos < l) {
      if (++idx[static_cast<std::size_t>(pos)] < N) break;
      idx[static_cast<std::size_t>(pos)] = 0;
      ++pos;
    }
    if (pos == l) break;
  }
  return total;
}

}  // namespace detail

/// E[Z(t,n)^k] by the partition-summed single-contour formula, k <= 5.
inline double single_contour_moment(int t, int n, int k, double mu, double nu,
                                    const contour_quad& q = {}) {
  if (!(0.0 < mu && mu < nu)) throw validation_error("single_contour_moment: need 0 < mu < nu");
  if (t < 0 || n < 1) throw validation_error("single_contour_moment: need t >= 0 and n >= 1");
  if (k < 1 || k > 5) throw validation_error("single_contour_moment: k must be in 1..5");
  const double rho = std::min(nu, 1.0) / 4.0;
  const auto partitions = integer_partitions(k);
  double kfact = 1.0;
  for (int j = 2; j <= k; ++j) kfact *= j;

  auto eval_at = [&](int N) {
    cplx sum(0.0, 0.0);
    for (const auto& lambda : partitions) {
      const int l = static_cast<int>(lambda.size());
      // 1 / prod_j m_j! over multiplicities of the part values.
      double mult = 1.0;
      for (std::size_t i = 0; i < lambda.size();) {
        std::size_t j = i;
        while (j < lambda.size() && lambda[j] == lambda[i]) ++j;
        for (std::size_t a = 2; a <= j - i; ++a) mult *= static_cast<double>(a);
        i = j;
      }
      const cplx term = detail::partition_term(t, n, mu, nu, lambda, rho, N) /
                        ipow(cplx(0.0, 2.0 * pi), l);
      sum += term / mult;
    }
    return kfact * sum;
  };
  const int start = std::min(q.min_nodes, 16);
  return detail::stabilize(eval_at, start, std::min(q.max_nodes, 256), q.tolerance,
                           "single_contour_moment");
}

}  // namespace betalab

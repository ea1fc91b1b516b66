#pragma once
// Airy kernel and the GUE Tracy-Widom distribution.
//
// The Airy kernel is evaluated from its double-contour representation
//
//     K_Ai(u,v) = (1/(2 pi i)^2) int dz int dw
//                  e^{z^3/3 - z u} / e^{w^3/3 - w v} * 1/(z - w),
//
// where z runs upward through 1 with tails along the rays of direction
// e^{+- i pi/3} and w runs upward through 0 along rays of direction
// e^{+- 2 i pi/3}; then Re(z - w) >= 1 on the contours, the cubic factors
// decay like e^{-|.|^3/3}, and the integrand factorizes as
// Phi_k(u) G_{kl} Psi_l(v).  The factorization is shared by pointwise kernel
// evaluation and by Nystrom discretization of the Fredholm determinant
//
//     F_GUE(y) = det(I - K_Ai) on L^2(y, infinity),
//
// with the half-line truncated to [y, max(y + pad, domain_min)] (the kernel
// decays superexponentially on the right) and discretized by composite
// Gauss-Legendre panels whose count is doubled until two successive
// determinant values agree.

#include <betalab/errors.hpp>
#include <betalab/specfun.hpp>

#include <Eigen/Core>
#include <Eigen/LU>

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace betalab {

struct airy_options {
  double ray_length = 8.0;   ///< contour ray truncation length
  int ray_panels = 12;       ///< Gauss-Legendre panels per ray
  int ray_order = 12;        ///< Gauss-Legendre order per contour panel
  double domain_pad = 14.0;  ///< right end of the domain: max(y + pad, domain_min)
  double domain_min = 12.0;
  int start_panels = 4;      ///< starting panel count on [y, xmax]
  int panel_order = 12;      ///< Gauss-Legendre order per domain panel
  int max_panels = 256;      ///< doubling cap
  double tolerance = 1e-8;   ///< successive-doubling agreement target
};

namespace detail {

/// Composite Gauss-Legendre nodes/weights on the real interval [lo, hi].
inline void composite_gl(double lo, double hi, int panels, int order,
                         std::vector<double>& x, std::vector<double>& wt) {
  gauss_legendre_rule rule(order);
  x.clear();
  wt.clear();
  x.reserve(static_cast<std::size_t>(panels * order));
  wt.reserve(static_cast<std::size_t>(panels * order));
  const double step = (hi - lo) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = lo + (p + 0.5) * step;
    const double half = 0.5 * step;
    for (int q = 0; q < order; ++q) {
      x.push_back(mid + half * rule.node[static_cast<std::size_t>(q)]);
      wt.push_back(half * rule.weight[static_cast<std::size_t>(q)]);
    }
  }
}

}  // namespace detail

/// Factorized double-contour representation of the Airy kernel.  Building
/// the object fixes the contour quadrature; kernel values and Nystrom
/// matrices are then fast bilinear forms.
class airy_kernel_rep {
 public:
  explicit airy_kernel_rep(const airy_options& opt = {}) {
    build_contour(1.0, pi / 3.0, opt, z_, cz_);
    build_contour(0.0, 2.0 * pi / 3.0, opt, w_, cw_);
    const std::size_t nz = z_.size(), nw = w_.size();
    // Fold the cubic exponential factors into the contour weights.
    azk_.resize(nz);
    for (std::size_t k = 0; k < nz; ++k) {
      azk_[k] = cz_[k] * std::exp(z_[k] * z_[k] * z_[k] / 3.0);
    }
    bwl_.resize(nw);
    for (std::size_t l = 0; l < nw; ++l) {
      bwl_[l] = cw_[l] * std::exp(-w_[l] * w_[l] * w_[l] / 3.0);
    }
    G_.resize(static_cast<Eigen::Index>(nz), static_cast<Eigen::Index>(nw));
    for (std::size_t k = 0; k < nz; ++k) {
      for (std::size_t l = 0; l < nw; ++l) {
        G_(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) =
            1.0 / (z_[k] - w_[l]);
      }
    }
  }

  /// Pointwise K_Ai(u, v).
  double kernel(double u, double v) const {
    const std::size_t nz = z_.size(), nw = w_.size();
    Eigen::VectorXcd a(static_cast<Eigen::Index>(nz)), b(static_cast<Eigen::Index>(nw));
    for (std::size_t k = 0; k < nz; ++k) {
      a(static_cast<Eigen::Index>(k)) = azk_[k] * std::exp(-z_[k] * u);
    }
    for (std::size_t l = 0; l < nw; ++l) {
      b(static_cast<Eigen::Index>(l)) = bwl_[l] * std::exp(w_[l] * v);
    }
    const cplx val = a.transpose() * (G_ * b);
    return val.real();
  }

  /// Nystrom matrix C_ij = wt_j K(x_i, x_j) for the nodes of a quadrature
  /// rule on the real line.
  Eigen::MatrixXcd nystrom(const std::vector<double>& x, const std::vector<double>& wt) const {
    const std::size_t nz = z_.size(), nw = w_.size(), M = x.size();
    Eigen::MatrixXcd A(static_cast<Eigen::Index>(M), static_cast<Eigen::Index>(nz));
    Eigen::MatrixXcd B(static_cast<Eigen::Index>(nw), static_cast<Eigen::Index>(M));
    for (std::size_t i = 0; i < M; ++i) {
      for (std::size_t k = 0; k < nz; ++k) {
        A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
            azk_[k] * std::exp(-z_[k] * x[i]);
      }
    }
    for (std::size_t j = 0; j < M; ++j) {
      for (std::size_t l = 0; l < nw; ++l) {
        B(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(j)) =
            bwl_[l] * std::exp(w_[l] * x[j]) * wt[j];
      }
    }
    return (A * G_) * B;
  }

 private:
  // Upward contour through `base` with ray direction e^{+- i theta},
  // truncated at opt.ray_length; combined weights include dz/(2 pi i) and
  // orientation (incoming lower ray, outgoing upper ray).
  static void build_contour(double base, double theta, const airy_options& opt,
                            std::vector<cplx>& node, std::vector<cplx>& coef) {
    gauss_legendre_rule rule(opt.ray_order);
    const cplx dir = std::polar(1.0, theta);
    const cplx inv2pii = 1.0 / cplx(0.0, 2.0 * pi);
    const double step = opt.ray_length / opt.ray_panels;
    node.clear();
    coef.clear();
    for (int p = 0; p < opt.ray_panels; ++p) {
      const double mid = (p + 0.5) * step;
      const double half = 0.5 * step;
      for (int q = 0; q < opt.ray_order; ++q) {
        const double tau = mid + half * rule.node[static_cast<std::size_t>(q)];
        const double w = rule.weight[static_cast<std::size_t>(q)] * half;
        node.push_back(base + tau * dir);
        coef.push_back(w * dir * inv2pii);
        node.push_back(base + tau * std::conj(dir));
        coef.push_back(-w * std::conj(dir) * inv2pii);
      }
    }
  }

  std::vector<cplx> z_, cz_, w_, cw_;
  std::vector<cplx> azk_, bwl_;
  Eigen::MatrixXcd G_;
};

/// GUE Tracy-Widom CDF F_GUE(y) by direct Fredholm determinant evaluation.
inline double fgue(double y, const airy_options& opt = {}) {
  const airy_kernel_rep rep(opt);
  const double xmax = std::max(y + opt.domain_pad, opt.domain_min);
  auto eval_at = [&](int panels) -> cplx {
    std::vector<double> x, wt;
    detail::composite_gl(y, xmax, panels, opt.panel_order, x, wt);
    const Eigen::Index M = static_cast<Eigen::Index>(x.size());
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(M, M) - rep.nystrom(x, wt);
    return Eigen::PartialPivLU<Eigen::MatrixXcd>(A).determinant();
  };
  return detail::stabilize(eval_at, opt.start_panels, opt.max_panels, opt.tolerance, "fgue");
}

}  // namespace betalab

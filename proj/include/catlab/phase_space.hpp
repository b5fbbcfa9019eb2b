#pragma once

// Weighted Gaussians on the (x, p) phase plane with complex centers and
// weights, the exact integrals used for normalization and purity, and a
// brute-force quadrature oracle for the purity.
//
// Conventions: vacuum covariance is I/2, a normalized Wigner function
// integrates to one, and purity is 2*pi * integral of W^2.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "catlab/errors.hpp"
#include "catlab/parallel.hpp"

namespace catlab {

template <typename Real>
using Vec2 = Eigen::Matrix<Real, 2, 1>;
template <typename Real>
using Mat2 = Eigen::Matrix<Real, 2, 2>;
template <typename Real>
using ComplexCenter = Eigen::Matrix<std::complex<Real>, 2, 1>;

/// Real symmetric positive-definite 2x2 covariance of (x, p).
template <typename Real>
class CovMatrix {
 public:
  static constexpr Real kMinDeterminant = Real(1e-12);

  CovMatrix(Real sxx, Real sxp, Real spp) : sxx_(sxx), sxp_(sxp), spp_(spp) {
    if (!std::isfinite(sxx) || !std::isfinite(sxp) || !std::isfinite(spp)) {
      throw DomainError("covariance entries must be finite");
    }
    if (!(sxx > 0) || !(spp > 0) || !(det() > kMinDeterminant)) {
      std::ostringstream os;
      os << "covariance is not positive definite (sxx=" << sxx << ", sxp=" << sxp
         << ", spp=" << spp << ", det=" << det() << ")";
      throw DomainError(os.str());
    }
  }

  /// Symmetric part of m; the off-diagonal entries must agree to rounding.
  static CovMatrix from_matrix(const Mat2<Real>& m) {
    const Real scale = std::max<Real>(1, m.cwiseAbs().maxCoeff());
    if (std::abs(m(0, 1) - m(1, 0)) > Real(1e-12) * scale) {
      throw DomainError("covariance matrix is not symmetric");
    }
    return CovMatrix(m(0, 0), (m(0, 1) + m(1, 0)) / 2, m(1, 1));
  }

  static CovMatrix vacuum() { return CovMatrix(Real(0.5), Real(0), Real(0.5)); }

  Real sxx() const { return sxx_; }
  Real sxp() const { return sxp_; }
  Real spp() const { return spp_; }
  Real det() const { return sxx_ * spp_ - sxp_ * sxp_; }

  Mat2<Real> matrix() const {
    Mat2<Real> m;
    m << sxx_, sxp_, sxp_, spp_;
    return m;
  }

  Mat2<Real> inverse() const {
    Mat2<Real> m;
    const Real d = det();
    m << spp_ / d, -sxp_ / d, -sxp_ / d, sxx_ / d;
    return m;
  }

  /// Eigenvalues in ascending order.
  Vec2<Real> eigenvalues() const {
    const Real mean = (sxx_ + spp_) / 2;
    const Real radius = std::hypot((sxx_ - spp_) / 2, sxp_);
    // The smaller root is taken from det/larger to avoid cancellation.
    const Real hi = mean + radius;
    return Vec2<Real>(det() / hi, hi);
  }

  bool approx_equal(const CovMatrix& o, Real tol) const {
    return std::abs(sxx_ - o.sxx_) <= tol && std::abs(sxp_ - o.sxp_) <= tol &&
           std::abs(spp_ - o.spp_) <= tol;
  }

  friend bool operator==(const CovMatrix&, const CovMatrix&) = default;

 private:
  Real sxx_, sxp_, spp_;
};

/// weight * exp(-1/2 (X - c)^T cov^{-1} (X - c)).
///
/// The weight is stored as its complex logarithm so that factors such as
/// exp(-(x0^2 + p0^2)) survive for centers far from the origin; it is
/// only exponentiated after being combined with the opposite-sign
/// exponents that appear in evaluation and overlaps.
template <typename Real>
struct GaussianTerm {
  std::complex<Real> log_weight;
  ComplexCenter<Real> center;
  CovMatrix<Real> cov;

  static GaussianTerm with_weight(std::complex<Real> weight, ComplexCenter<Real> center,
                                  CovMatrix<Real> cov) {
    return GaussianTerm{std::log(weight), std::move(center), std::move(cov)};
  }

  std::complex<Real> weight() const { return std::exp(log_weight); }
};

template <typename Real>
struct WignerMixture {
  std::vector<GaussianTerm<Real>> terms;

  /// The common covariance; throws ContractError if the terms differ.
  const CovMatrix<Real>& shared_cov() const {
    if (terms.empty()) throw ContractError("empty mixture has no covariance");
    for (const auto& t : terms) {
      if (!(t.cov == terms.front().cov)) {
        throw ContractError("mixture terms do not share one covariance");
      }
    }
    return terms.front().cov;
  }
};

using Cov = CovMatrix<double>;
using Term = GaussianTerm<double>;
using Mixture = WignerMixture<double>;

namespace detail {

template <typename Real>
std::complex<Real> bilinear(const ComplexCenter<Real>& u, const Mat2<Real>& m,
                            const ComplexCenter<Real>& v) {
  return u(0) * (m(0, 0) * v(0) + m(0, 1) * v(1)) + u(1) * (m(1, 0) * v(0) + m(1, 1) * v(1));
}

template <typename Real>
bool same_cov(const CovMatrix<Real>& a, const CovMatrix<Real>& b) {
  const Real scale = std::max({Real(1), std::abs(a.sxx()), std::abs(a.spp())});
  return a.approx_equal(b, Real(1e-12) * scale);
}

// Precomputed form of one term for repeated pointwise evaluation.
template <typename Real>
struct TermKernel {
  std::complex<Real> log_weight, cx, cp;
  Real pxx, pxp, ppp;

  explicit TermKernel(const GaussianTerm<Real>& t)
      : log_weight(t.log_weight), cx(t.center(0)), cp(t.center(1)) {
    const Mat2<Real> inv = t.cov.inverse();
    pxx = inv(0, 0);
    pxp = inv(0, 1);
    ppp = inv(1, 1);
  }

  std::complex<Real> exponent(Real x, Real p) const {
    const std::complex<Real> dx = x - cx;
    const std::complex<Real> dp = p - cp;
    return log_weight - Real(0.5) * (pxx * dx * dx + Real(2) * pxp * dx * dp + ppp * dp * dp);
  }
};

template <typename Real>
void check_real(std::complex<Real> w, const char* what) {
  if (std::abs(w.imag()) > Real(1e-9) * (1 + std::abs(w.real()))) {
    std::ostringstream os;
    os << what << " has an imaginary residue " << w.imag() << " (real part " << w.real()
       << ")";
    throw ConsistencyError(os.str());
  }
}

}  // namespace detail

/// Integral of one term over the plane. An imaginary center shifts the
/// contour only, so the result does not depend on it.
template <typename Real>
std::complex<Real> gaussian_integral(const GaussianTerm<Real>& term) {
  const Real log_norm = std::log(2 * std::numbers::pi_v<Real> * std::sqrt(term.cov.det()));
  return std::exp(term.log_weight + log_norm);
}

/// Integral of the product of two terms that share a covariance:
/// w1 w2 pi sqrt(det) exp(-1/4 d^T cov^{-1} d), d = c1 - c2.
template <typename Real>
std::complex<Real> gaussian_overlap(const GaussianTerm<Real>& t1, const GaussianTerm<Real>& t2) {
  if (!detail::same_cov(t1.cov, t2.cov)) {
    throw ContractError("gaussian_overlap requires a shared covariance");
  }
  const ComplexCenter<Real> d = t1.center - t2.center;
  const std::complex<Real> q = detail::bilinear<Real>(d, t1.cov.inverse(), d);
  const Real log_norm = std::log(std::numbers::pi_v<Real> * std::sqrt(t1.cov.det()));
  return std::exp(t1.log_weight + t2.log_weight + log_norm - q / Real(4));
}

template <typename Real>
std::complex<Real> total_integral(const WignerMixture<Real>& mix) {
  std::complex<Real> sum = 0;
  for (const auto& t : mix.terms) sum += gaussian_integral(t);
  return sum;
}

template <typename Real>
Real evaluate(const WignerMixture<Real>& mix, Real x, Real p) {
  std::complex<Real> w = 0;
  for (const auto& t : mix.terms) w += std::exp(detail::TermKernel<Real>(t).exponent(x, p));
  detail::check_real(w, "Wigner function value");
  return w.real();
}

/// Exact purity 2*pi * integral W^2 as a double sum of pairwise overlaps.
template <typename Real>
Real purity_from_mixture(const WignerMixture<Real>& mix) {
  mix.shared_cov();
  std::complex<Real> sum = 0;
  for (const auto& a : mix.terms) {
    for (const auto& b : mix.terms) sum += gaussian_overlap(a, b);
  }
  const std::complex<Real> mu = 2 * std::numbers::pi_v<Real> * sum;
  detail::check_real(mu, "purity");
  if (!(mu.real() > 0) || mu.real() > 1 + Real(1e-9)) {
    std::ostringstream os;
    os << "purity " << mu.real() << " outside (0, 1]";
    throw ConsistencyError(os.str());
  }
  // Rounding above one is within the accepted tolerance.
  return std::min(mu.real(), Real(1));
}

template <typename Real>
struct OracleGrid {
  Real extent;              // half-width of the square window
  Real max_spacing;         // largest admissible node spacing
  int required_resolution;  // nodes per axis needed for max_spacing
};

/// Window and spacing for the quadrature oracle. The window covers every
/// term's real and imaginary center plus extent_sigmas envelope widths;
/// the spacing resolves the narrowest envelope and the interference
/// fringes, whose wave vector is cov^{-1} Im(c).
template <typename Real>
OracleGrid<Real> plan_oracle_grid(const WignerMixture<Real>& mix, Real extent_sigmas = 6) {
  if (mix.terms.empty()) throw ContractError("empty mixture");
  if (!(extent_sigmas > 0)) throw ContractError("extent_sigmas must be positive");
  const Real pi = std::numbers::pi_v<Real>;
  Real extent = 0;
  Real max_im = 0;
  Real spacing = std::numeric_limits<Real>::infinity();
  for (const auto& t : mix.terms) {
    const Vec2<Real> re = t.center.real();
    const Vec2<Real> im = t.center.imag();
    const Vec2<Real> lambda = t.cov.eigenvalues();
    extent = std::max(extent, re.norm() + im.norm() + extent_sigmas * std::sqrt(lambda(1)));
    max_im = std::max(max_im, im.norm());
    const Real fringe = (t.cov.inverse() * im).norm();
    spacing = std::min({spacing, std::sqrt(lambda(0)) / 6, pi / (4 * (1 + fringe))});
  }
  spacing = std::min(spacing, pi / (8 * (1 + max_im)));
  const int required = static_cast<int>(std::ceil(2 * extent / spacing));
  return {extent, spacing, required};
}

/// Midpoint-rule purity on a resolution x resolution grid over the window
/// from plan_oracle_grid. Refuses grids coarser than the planned spacing.
template <typename Real>
Real purity_grid_oracle(const WignerMixture<Real>& mix, int resolution, Real extent_sigmas = 6) {
  if (resolution < 64) throw ContractError("oracle resolution must be at least 64");
  const OracleGrid<Real> plan = plan_oracle_grid(mix, extent_sigmas);
  const Real h = 2 * plan.extent / resolution;
  if (h > plan.max_spacing) {
    std::ostringstream os;
    os << "oracle grid too coarse: resolution " << resolution << " gives spacing " << h
       << " > " << plan.max_spacing << "; need resolution >= " << plan.required_resolution;
    throw DomainError(os.str());
  }

  std::vector<detail::TermKernel<Real>> kernels;
  kernels.reserve(mix.terms.size());
  for (const auto& t : mix.terms) kernels.emplace_back(t);

  const auto n = static_cast<std::size_t>(resolution);
  std::vector<Real> row_sum(n, 0);
  std::vector<Real> row_residue(n, 0);
  parallel_for(n, [&](std::size_t i) {
    const Real x = -plan.extent + (Real(i) + Real(0.5)) * h;
    Real acc = 0;
    Real residue = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const Real p = -plan.extent + (Real(j) + Real(0.5)) * h;
      std::complex<Real> w = 0;
      for (const auto& k : kernels) w += std::exp(k.exponent(x, p));
      acc += w.real() * w.real();
      residue = std::max(residue, std::abs(w.imag()) / (1 + std::abs(w.real())));
    }
    row_sum[i] = acc;
    row_residue[i] = residue;
  });

  Real total = 0;
  Real residue = 0;
  for (std::size_t i = 0; i < n; ++i) {
    total += row_sum[i];
    residue = std::max(residue, row_residue[i]);
  }
  if (residue > Real(1e-9)) {
    throw ConsistencyError("mixture is not real on the oracle grid");
  }
  return 2 * std::numbers::pi_v<Real> * total * h * h;
}

/// purity_grid_oracle at the larger of min_resolution and the planned
/// resolution, refusing above max_resolution nodes per axis.
template <typename Real>
Real purity_grid_oracle_auto(const WignerMixture<Real>& mix, int min_resolution,
                             int max_resolution = 8192, Real extent_sigmas = 6) {
  const OracleGrid<Real> plan = plan_oracle_grid(mix, extent_sigmas);
  const int resolution = std::max(min_resolution, plan.required_resolution);
  if (resolution > max_resolution) {
    std::ostringstream os;
    os << "oracle would need " << resolution << " nodes per axis (cap " << max_resolution
       << ")";
    throw DomainError(os.str());
  }
  return purity_grid_oracle(mix, resolution, extent_sigmas);
}

}  // namespace catlab

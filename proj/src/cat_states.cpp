#include "catlab/cat_states.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace catlab {

namespace {

using std::numbers::pi;
using cd = std::complex<double>;

}  // namespace

void CatSpec::validate() const {
  for (double v : {beta_abs, xi, r0, phi0, theta}) {
    if (!std::isfinite(v)) throw DomainError("cat parameters must be finite");
  }
  if (beta_abs < 0) throw DomainError("beta_abs must be non-negative");
  if (r0 < 0) throw DomainError("r0 must be non-negative");
  if (!(normalization() > kMinNormalization)) {
    std::ostringstream os;
    os << "cat normalization 2 + 2 cos(theta) exp(-2|beta0|^2) = " << normalization()
       << " is too small (odd cat near the origin)";
    throw DomainError(os.str());
  }
}

Eigen::Vector2d CatSpec::quadrature_center() const {
  const double radius = std::sqrt(2.0) * beta_abs;
  return {radius * std::cos(xi), radius * std::sin(xi)};
}

double CatSpec::normalization() const {
  return 2 + 2 * std::cos(theta) * std::exp(-2 * beta_abs * beta_abs);
}

BogoliubovPair::BogoliubovPair(cd mu, cd nu) : mu_(mu), nu_(nu) {
  const double defect = std::norm(mu) - std::norm(nu) - 1;
  if (!(std::abs(defect) <= 1e-12 * std::max(1.0, std::norm(mu)))) {
    std::ostringstream os;
    os << "Bogoliubov pair violates |mu|^2 - |nu|^2 = 1 (defect " << defect << ")";
    throw DomainError(os.str());
  }
}

SqueezedDisplacement bogoliubov_to_squeezing(const BogoliubovPair& pair, cd beta) {
  const cd mu = pair.mu();
  const cd nu = pair.nu();
  if (std::abs(mu.imag()) > 1e-12 * std::abs(mu) || !(mu.real() > 0)) {
    throw UnsupportedError("only real positive mu is supported (cosh r0 = mu)");
  }
  SqueezedDisplacement out;
  out.alpha = mu * beta - nu * std::conj(beta);
  out.r0 = std::asinh(std::abs(nu));
  out.phi0 = std::abs(nu) == 0 ? 0.0 : std::arg(nu) / 2;
  return out;
}

Eigen::Matrix2d squeeze_matrix(double r, double phi) {
  const double ch = std::cosh(r);
  const double sh = std::sinh(r);
  const double c2 = std::cos(2 * phi);
  const double s2 = std::sin(2 * phi);
  Eigen::Matrix2d m;
  m << ch + c2 * sh, s2 * sh, s2 * sh, ch - c2 * sh;
  return m;
}

Cov squeezed_vacuum_cov(double r, double phi) {
  // R (I/2) R = R^2 / 2, and R(r)^2 = R(2r).
  return Cov::from_matrix(squeeze_matrix(2 * r, phi) / 2);
}

Mixture cat_mixture(const CatSpec& spec, double center_scale, const Cov& cov) {
  spec.validate();
  const Eigen::Vector2d x0 = spec.quadrature_center();
  const Eigen::Matrix2d r = squeeze_matrix(spec.r0, spec.phi0);
  const Eigen::Vector2d y = center_scale * (r * x0);
  const Eigen::Vector2d z = center_scale * (r * Eigen::Vector2d(-x0(1), x0(0)));

  const double energy = 2 * spec.beta_abs * spec.beta_abs;  // x0^2 + p0^2
  const double log_norm =
      -std::log(2 * pi * spec.normalization() * std::sqrt(cov.det()));

  const ComplexCenter<double> plus = y.cast<cd>();
  const ComplexCenter<double> fringe = cd(0, 1) * z.cast<cd>();

  Mixture mix;
  mix.terms.reserve(4);
  mix.terms.push_back(Term{cd(log_norm, 0), plus, cov});
  mix.terms.push_back(Term{cd(log_norm, 0), -plus, cov});
  mix.terms.push_back(Term{cd(log_norm - energy, spec.theta), fringe, cov});
  mix.terms.push_back(Term{cd(log_norm - energy, -spec.theta), -fringe, cov});
  return mix;
}

Mixture build_coherent_cat(const CatSpec& spec) {
  if (spec.r0 != 0) throw ContractError("build_coherent_cat requires r0 == 0");
  return cat_mixture(spec, 1.0, Cov::vacuum());
}

Mixture build_squeezed_cat(const CatSpec& spec) {
  spec.validate();
  return cat_mixture(spec, 1.0, squeezed_vacuum_cov(spec.r0, spec.phi0));
}

cd characteristic_function(const CatSpec& spec, cd eta) {
  spec.validate();
  if (spec.r0 != 0) {
    throw ContractError("characteristic_function covers unsqueezed cats only");
  }
  const cd alpha = std::polar(spec.beta_abs, spec.xi);
  const cd direct = std::conj(alpha) * eta - alpha * std::conj(eta);
  const cd cross = std::conj(alpha) * eta + alpha * std::conj(eta) + cd(0, spec.theta);
  const double overlap = -2 * std::norm(alpha);
  const cd bracket = std::exp(direct) + std::exp(-direct) + std::exp(overlap + cross) +
                     std::exp(overlap - cross);
  return std::exp(-std::norm(eta) / 2) * bracket / spec.normalization();
}

}  // namespace catlab

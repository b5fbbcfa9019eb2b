#include "catlab/purity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace catlab {

namespace {

using cd = std::complex<double>;

}  // namespace

PurityAuxiliaries purity_auxiliaries(const CatSpec& spec, const ChannelSpec& ch, double t) {
  spec.validate();
  const Cov sigma0 = squeezed_vacuum_cov(spec.r0, spec.phi0);
  const Cov sigma = evolve_moments(Eigen::Vector2d::Zero(), sigma0, ch, t).sigma;
  const Eigen::Matrix2d r = squeeze_matrix(spec.r0, spec.phi0);
  const Eigen::Matrix2d r_inv = squeeze_matrix(-spec.r0, spec.phi0);

  PurityAuxiliaries aux;
  aux.det_sigma = sigma.det();
  aux.s = r * sigma.inverse() * r;
  aux.tmat = r_inv * sigma.matrix() * r_inv / aux.det_sigma;
  aux.a = cd(aux.s(0, 0) - aux.s(1, 1), -2 * aux.s(0, 1)) / 4.0;
  return aux;
}

PuritySummands purity_summands(const CatSpec& spec, const ChannelSpec& ch, double t) {
  const PurityAuxiliaries aux = purity_auxiliaries(spec, ch, t);
  const Eigen::Vector2d x0 = spec.quadrature_center();
  const double energy = 2 * spec.beta_abs * spec.beta_abs;
  const double decay = std::exp(-ch.gamma() * t);
  const cd z0_sq = std::polar(energy, 2 * spec.xi);

  const double direct = decay * x0.dot(aux.s * x0);
  const double fringe = decay * x0.dot(aux.tmat * x0);
  const cd mixed = decay * z0_sq * aux.a;

  PuritySummands out;
  out.diagonal = 2 * (1 + std::exp(-direct));
  out.interference =
      2 * (std::cos(2 * spec.theta) * std::exp(-2 * energy) + std::exp(fringe - 2 * energy));
  out.cross = 8 * std::cos(spec.theta) * std::exp(-energy - mixed).real();
  const double half_norm = spec.normalization() / 2;
  out.prefactor = 1 / (8 * half_norm * half_norm * std::sqrt(aux.det_sigma));
  return out;
}

double purity_closed_form(const CatSpec& spec, const ChannelSpec& ch, double t) {
  const double mu = purity_summands(spec, ch, t).purity();
  if (!(mu > 0) || mu > 1 + 1e-9) {
    std::ostringstream os;
    os << "closed-form purity " << mu << " outside (0, 1] at t = " << t;
    throw ConsistencyError(os.str());
  }
  return std::min(mu, 1.0);
}

PurityCurve purity_curve(const CatSpec& spec, const ChannelSpec& ch, std::span<const double> times) {
  PurityCurve curve{{times.begin(), times.end()}, {}, spec, ch};
  curve.purities.reserve(times.size());
  for (double t : times) curve.purities.push_back(purity_closed_form(spec, ch, t));
  return curve;
}

double decoherence_time(const CatSpec& spec, const ChannelSpec& ch) {
  spec.validate();
  if (!(spec.beta_abs > 0)) throw DomainError("decoherence time is undefined for beta0 = 0");
  return 1 / (2 * spec.beta_abs * spec.beta_abs * ch.gamma());
}

double interference_weight(const CatSpec& spec, const ChannelSpec& ch, double t) {
  const PuritySummands s = purity_summands(spec, ch, t);
  return std::sqrt(std::abs(s.interference) / s.diagonal);
}

double interference_half_life(const CatSpec& spec, const ChannelSpec& ch) {
  const double target = interference_weight(spec, ch, 0) / std::numbers::e;
  double lo = 0;
  double hi = decoherence_time(spec, ch);
  for (int i = 0; interference_weight(spec, ch, hi) > target; ++i) {
    if (i == 60) throw ConsistencyError("interference weight does not decay to 1/e");
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1e-15 * hi) {
    const double mid = (lo + hi) / 2;
    if (mid <= lo || mid >= hi) break;
    (interference_weight(spec, ch, mid) > target ? lo : hi) = mid;
  }
  return (lo + hi) / 2;
}

double equivalence_check(double r, double mu_inf, double beta_abs,
                         std::span<const double> t_grid) {
  if (!(r >= 0) || !std::isfinite(r)) throw DomainError("squeezing r must be non-negative");
  if (!(mu_inf > 0 && mu_inf <= 1)) {
    std::ostringstream os;
    os << "infeasible (mu_inf, r) = (" << mu_inf << ", " << r
       << "): a squeezed bath with cosh 2r = sqrt(1 + 4 mu_inf^2 |M|^2) and "
          "|M|^2 <= N(N+1) needs 0 < mu_inf <= 1";
    throw DomainError(os.str());
  }
  const double half_pi = std::numbers::pi / 2;
  const CatSpec squeezed_cat{beta_abs, half_pi, r, 0, 0};
  const CatSpec plain_cat{beta_abs, 0, 0, 0, 0};
  const ChannelSpec thermal = ChannelSpec::thermal(1, mu_inf);
  const ChannelSpec squeezed_bath = ChannelSpec::squeezed(1, mu_inf, r, 0);

  const BathSqueezing bs = bath_squeezing(squeezed_bath);
  if (std::abs(bs.r_inf - r) > 1e-9 ||
      std::abs(asymptotic_purity(squeezed_bath) - asymptotic_purity(thermal)) > 1e-12) {
    throw ConsistencyError("squeezed bath does not reproduce the requested (mu_inf, r)");
  }

  double worst = 0;
  for (double t : t_grid) {
    worst = std::max(worst, std::abs(purity_closed_form(squeezed_cat, thermal, t) -
                                     purity_closed_form(plain_cat, squeezed_bath, t)));
  }
  return worst;
}

}  // namespace catlab

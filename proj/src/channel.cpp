#include "catlab/channel.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace catlab {

ChannelSpec::ChannelSpec(double gamma, double n, double m1, double m2)
    : gamma_(gamma), n_(n), m1_(m1), m2_(m2) {
  for (double v : {gamma, n, m1, m2}) {
    if (!std::isfinite(v)) throw DomainError("channel parameters must be finite");
  }
  if (!(gamma > 0)) throw DomainError("channel rate gamma must be positive");
  if (n < 0) throw DomainError("channel parameter N must be non-negative");
  const double m_sq = m1 * m1 + m2 * m2;
  if (m_sq > n * (n + 1) + 1e-12) {
    std::ostringstream os;
    os << "infeasible channel: |M|^2 <= N(N+1) violated (|M|^2 = " << m_sq
       << ", N(N+1) = " << n * (n + 1) << ")";
    throw DomainError(os.str());
  }
}

ChannelSpec ChannelSpec::thermal(double gamma, double mu_inf) {
  if (!(mu_inf > 0 && mu_inf <= 1)) throw DomainError("mu_inf must lie in (0, 1]");
  return ChannelSpec(gamma, (1 / mu_inf - 1) / 2, 0, 0);
}

ChannelSpec ChannelSpec::squeezed(double gamma, double mu_inf, double r_inf, double phi_inf) {
  if (!(mu_inf > 0 && mu_inf <= 1)) throw DomainError("mu_inf must lie in (0, 1]");
  if (!(r_inf >= 0)) throw DomainError("r_inf must be non-negative");
  // sigma_inf = Rot(phi) diag(e^{2r}, e^{-2r}) Rot(-phi) / (2 mu_inf).
  const double n = (std::cosh(2 * r_inf) / mu_inf - 1) / 2;
  const double m_abs = std::sinh(2 * r_inf) / (2 * mu_inf);
  return ChannelSpec(gamma, std::max(0.0, n), m_abs * std::cos(2 * phi_inf),
                     m_abs * std::sin(2 * phi_inf));
}

Cov sigma_infinity(const ChannelSpec& ch) {
  const double diag = (2 * ch.n() + 1) / 2;
  return Cov(diag + ch.m1(), ch.m2(), diag - ch.m1());
}

double asymptotic_purity(const ChannelSpec& ch) {
  const double s = 2 * ch.n() + 1;
  return 1 / std::sqrt(s * s - 4 * std::norm(ch.m()));
}

BathSqueezing bath_squeezing(const ChannelSpec& ch) {
  const double mu = asymptotic_purity(ch);
  const double m_sq = std::norm(ch.m());
  BathSqueezing out;
  // cosh 2r = sqrt(1 + 4 mu^2 |M|^2) is the same as sinh 2r = 2 mu |M|,
  // which stays accurate for small r.
  out.r_inf = std::asinh(2 * mu * std::sqrt(m_sq)) / 2;
  out.phi_inf = m_sq == 0 ? 0.0 : std::arg(ch.m()) / 2;
  return out;
}

Moments evolve_moments(const Eigen::Vector2d& x0, const Cov& sigma0, const ChannelSpec& ch,
                       double t) {
  if (!(t >= 0)) throw DomainError("evolution time must be non-negative");
  const double decay = std::exp(-ch.gamma() * t);
  const Cov inf = sigma_infinity(ch);
  const double keep = 1 - decay;
  return Moments{std::exp(-ch.gamma() * t / 2) * x0,
                 Cov(inf.sxx() * keep + sigma0.sxx() * decay,
                     inf.sxp() * keep + sigma0.sxp() * decay,
                     inf.spp() * keep + sigma0.spp() * decay)};
}

EvolvedState evolve_cat(const CatSpec& spec, const ChannelSpec& ch, double t) {
  spec.validate();
  const Cov sigma0 = squeezed_vacuum_cov(spec.r0, spec.phi0);
  const Moments m = evolve_moments(Eigen::Vector2d::Zero(), sigma0, ch, t);
  return EvolvedState{cat_mixture(spec, std::exp(-ch.gamma() * t / 2), m.sigma), t, spec, ch};
}

std::vector<double> hybrid_time_grid(double t_max, int samples) {
  if (!(t_max > 0) || !std::isfinite(t_max)) throw DomainError("t_max must be positive");
  if (samples < 3) throw DomainError("a time grid needs at least 3 samples");
  const double split = t_max / 15;
  const double first = split * 1e-4;
  const int geometric = (samples - 1) / 2;   // first .. split, excluding split
  const int linear = samples - 1 - geometric;  // split .. t_max, including t_max

  std::vector<double> t;
  t.reserve(static_cast<std::size_t>(samples));
  t.push_back(0.0);
  const double ratio = std::pow(split / first, 1.0 / geometric);
  for (int i = 0; i < geometric; ++i) t.push_back(first * std::pow(ratio, i));
  const double step = linear > 1 ? (t_max - split) / (linear - 1) : 0.0;
  for (int i = 0; i < linear; ++i) t.push_back(split + step * i);
  t.back() = t_max;
  return t;
}

}  // namespace catlab

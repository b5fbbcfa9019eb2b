#include "catlab/optimizer.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "catlab/parallel.hpp"
#include "catlab/purity.hpp"

namespace catlab {

namespace {

using std::numbers::pi;

constexpr int kScanPoints = 64;
constexpr double kFlatSpread = 1e-12;

template <typename Fn>
double golden_section_max(Fn&& f, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1) / 2;
  double a = hi - inv_phi * (hi - lo);
  double b = lo + inv_phi * (hi - lo);
  double fa = f(a);
  double fb = f(b);
  while (hi - lo > tol) {
    if (fa < fb) {
      lo = a;
      a = b;
      fa = fb;
      b = lo + inv_phi * (hi - lo);
      fb = f(b);
    } else {
      hi = b;
      b = a;
      fb = fa;
      a = hi - inv_phi * (hi - lo);
      fa = f(a);
    }
  }
  return (lo + hi) / 2;
}

template <typename Fn>
std::vector<std::pair<double, double>> scan(Fn&& f, double lo, double step, int points) {
  std::vector<std::pair<double, double>> out(static_cast<std::size_t>(points));
  parallel_for(out.size(), [&](std::size_t i) {
    const double x = lo + step * static_cast<double>(i);
    out[i] = {x, f(x)};
  });
  return out;
}

std::size_t best_index(const std::vector<std::pair<double, double>>& s) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i].second > s[best].second) best = i;
  }
  return best;
}

double spread(const std::vector<std::pair<double, double>>& s) {
  double lo = s.front().second;
  double hi = lo;
  for (const auto& [x, v] : s) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return hi - lo;
}

double axis_angle(const Eigen::Vector2d& v) { return wrap_half_turn(std::atan2(v(1), v(0))); }

// Axis of the largest eigenvalue, or nullopt when the two are equal.
std::optional<double> major_axis(const Eigen::Matrix2d& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(m);
  const Eigen::Vector2d ev = es.eigenvalues();
  if (ev(1) - ev(0) <= 1e-12 * std::abs(ev(1))) return std::nullopt;
  return axis_angle(es.eigenvectors().col(1));
}

}  // namespace

const char* to_string(OptimizationMethod m) {
  switch (m) {
    case OptimizationMethod::analytic: return "analytic";
    case OptimizationMethod::grid_refine: return "grid_refine";
  }
  return "?";
}

const char* to_string(OptimizationStatus s) {
  switch (s) {
    case OptimizationStatus::ok: return "ok";
    case OptimizationStatus::degenerate_flat: return "degenerate_flat";
    case OptimizationStatus::boundary: return "boundary";
  }
  return "?";
}

double wrap_half_turn(double a) {
  double w = std::fmod(a, pi);
  if (w < 0) w += pi;
  if (w >= pi) w -= pi;
  return w;
}

double axis_distance(double a, double b) {
  const double d = wrap_half_turn(a - b);
  return std::min(d, pi - d);
}

double optimal_xi_analytic(double r0, const ChannelSpec& ch, double phi0) {
  const bool bath_squeezed = !ch.is_thermal();
  if (r0 > 0 && !bath_squeezed) return wrap_half_turn(phi0 + pi / 2);
  if (r0 == 0 && bath_squeezed) return wrap_half_turn(bath_squeezing(ch).phi_inf);
  throw UnsupportedError(
      "no closed-form optimal xi when cat and bath are both squeezed or both unsqueezed");
}

OptimizationResult optimal_xi_numeric(const CatSpec& spec, const ChannelSpec& ch,
                                      std::optional<double> t_eval) {
  spec.validate();
  if (!(spec.beta_abs > 0)) throw DomainError("optimal xi needs beta_abs > 0");
  const double t = t_eval.value_or(decoherence_time(spec, ch));
  if (!(t > 0)) throw DomainError("t_eval must be positive");

  auto purity_at = [&](double xi) {
    CatSpec s = spec;
    s.xi = xi;
    return purity_closed_form(s, ch, t);
  };

  OptimizationResult out;
  out.t_eval = t;
  out.method = OptimizationMethod::grid_refine;
  const double step = pi / kScanPoints;
  out.scan = scan(purity_at, 0.0, step, kScanPoints);
  const std::size_t k = best_index(out.scan);
  if (spread(out.scan) < kFlatSpread) {
    out.status = OptimizationStatus::degenerate_flat;
    out.argmax = std::numeric_limits<double>::quiet_NaN();
    out.value = out.scan[k].second;
    return out;
  }
  // The objective is pi-periodic in xi, so the bracket may leave [0, pi).
  const double centre = out.scan[k].first;
  const double xi = golden_section_max(purity_at, centre - step, centre + step, 1e-9);
  out.argmax = wrap_half_turn(xi);
  out.value = purity_at(out.argmax);
  if (out.value < out.scan[k].second) {
    out.argmax = centre;
    out.value = out.scan[k].second;
  }
  return out;
}

OptimizationResult optimal_xi_yurke_stoler(const CatSpec& spec, const ChannelSpec& ch, double t) {
  spec.validate();
  if (std::abs(spec.theta - pi / 2) > 1e-12) {
    throw ContractError("the eigenvector rule applies to theta = pi/2 only");
  }
  const Eigen::Matrix2d r_inv = squeeze_matrix(-spec.r0, spec.phi0);
  OptimizationResult out;
  out.t_eval = t;
  out.method = OptimizationMethod::analytic;

  const auto stationary = major_axis(r_inv * sigma_infinity(ch).matrix() * r_inv);
  if (!stationary) {
    out.status = OptimizationStatus::degenerate_flat;
    out.argmax = std::numeric_limits<double>::quiet_NaN();
    out.value = purity_closed_form(spec, ch, t);
    return out;
  }

  const Cov sigma0 = squeezed_vacuum_cov(spec.r0, spec.phi0);
  for (double gt : {0.1, 1.0}) {
    const Cov sigma = evolve_moments(Eigen::Vector2d::Zero(), sigma0, ch, gt / ch.gamma()).sigma;
    const auto axis = major_axis(r_inv * sigma.matrix() * r_inv);
    if (!axis || axis_distance(*axis, *stationary) > 1e-8) {
      std::ostringstream os;
      os << "eigenvector of S(t)^{-1} moves with time (gamma t = " << gt << ")";
      throw ConsistencyError(os.str());
    }
  }
  CatSpec best = spec;
  best.xi = *stationary;
  out.argmax = *stationary;
  out.value = purity_closed_form(best, ch, t);
  return out;
}

OptimizationResult optimal_r(double beta_abs, const ChannelSpec& ch, double t_eval, double theta,
                             double r_max) {
  if (!(beta_abs > 0)) throw DomainError("optimal r needs beta_abs > 0");
  if (!(t_eval > 0)) throw DomainError("t_eval must be positive");
  if (!(r_max > 0)) throw DomainError("r_max must be positive");

  auto best_spec = [&](double r) {
    CatSpec s{beta_abs, 0, r, 0, theta};
    if (ch.is_thermal()) {
      s.xi = pi / 2;  // phi0 + pi/2; any xi is optimal at r = 0
    } else if (r == 0) {
      s.xi = optimal_xi_analytic(0, ch);
    } else {
      const OptimizationResult inner = optimal_xi_numeric(s, ch, t_eval);
      s.xi = inner.status == OptimizationStatus::degenerate_flat ? 0.0 : inner.argmax;
    }
    return s;
  };
  auto purity_at = [&](double r) { return purity_closed_form(best_spec(r), ch, t_eval); };

  OptimizationResult out;
  out.t_eval = t_eval;
  out.method = OptimizationMethod::grid_refine;
  const double step = r_max / (kScanPoints - 1);
  out.scan = scan(purity_at, 0.0, step, kScanPoints);
  const std::size_t k = best_index(out.scan);
  if (k == 0 || k + 1 == out.scan.size()) {
    out.status = OptimizationStatus::boundary;
    out.argmax = out.scan[k].first;
    out.value = out.scan[k].second;
    return out;
  }
  out.argmax = golden_section_max(purity_at, out.scan[k - 1].first, out.scan[k + 1].first, 1e-9);
  out.value = purity_at(out.argmax);
  if (out.value < out.scan[k].second) {
    out.argmax = out.scan[k].first;
    out.value = out.scan[k].second;
  }
  return out;
}

}  // namespace catlab

#pragma once

// Gaussian damping/pumping channel with rate gamma, thermal parameter N
// and bath squeezing M. First moments decay as exp(-gamma t / 2) and the
// covariance relaxes exponentially toward sigma_inf.

#include <complex>
#include <vector>

#include "catlab/cat_states.hpp"
#include "catlab/phase_space.hpp"

namespace catlab {

class ChannelSpec {
 public:
  /// Throws DomainError unless gamma > 0, n >= 0 and |M|^2 <= N(N+1).
  ChannelSpec(double gamma, double n, double m1, double m2);

  /// M = 0 with N chosen so the asymptotic purity is mu_inf.
  static ChannelSpec thermal(double gamma, double mu_inf);

  /// Squeezed bath with asymptotic purity mu_inf, squeezing r_inf and
  /// anti-squeezed axis phi_inf (M = |M| e^{2 i phi_inf}).
  static ChannelSpec squeezed(double gamma, double mu_inf, double r_inf, double phi_inf);

  double gamma() const { return gamma_; }
  double n() const { return n_; }
  double m1() const { return m1_; }
  double m2() const { return m2_; }
  std::complex<double> m() const { return {m1_, m2_}; }
  bool is_thermal() const { return m1_ == 0 && m2_ == 0; }

 private:
  double gamma_, n_, m1_, m2_;
};

Cov sigma_infinity(const ChannelSpec& ch);

/// 1 / sqrt((2N+1)^2 - 4|M|^2).
double asymptotic_purity(const ChannelSpec& ch);

struct BathSqueezing {
  double r_inf;    // cosh(2 r_inf) = sqrt(1 + 4 mu_inf^2 |M|^2)
  double phi_inf;  // Arg(M) / 2 in (-pi/2, pi/2]
};

BathSqueezing bath_squeezing(const ChannelSpec& ch);

struct Moments {
  Eigen::Vector2d x;
  Cov sigma;
};

/// X(t) = e^{-gamma t/2} X(0), sigma(t) = sigma_inf (1 - e^{-gamma t}) + sigma(0) e^{-gamma t}.
Moments evolve_moments(const Eigen::Vector2d& x0, const Cov& sigma0, const ChannelSpec& ch,
                       double t);

struct EvolvedState {
  Mixture mixture;
  double t;
  CatSpec source;
  ChannelSpec channel;
};

/// Every term's center is damped by e^{-gamma t/2} and the shared
/// covariance follows evolve_moments; the interference suppression
/// exp(-(x0^2 + p0^2)) stays at its initial value.
EvolvedState evolve_cat(const CatSpec& spec, const ChannelSpec& ch, double t);

/// Sample times in [0, t_max]: 0, a geometric run up to t_max / 15 that
/// resolves the initial drop, then a linear run to t_max. Strictly
/// increasing, first 0 and last exactly t_max.
std::vector<double> hybrid_time_grid(double t_max, int samples);

}  // namespace catlab

#pragma once

// Closed-form purity of a cat decohering in a Gaussian channel and the
// quantities built on it.

#include <complex>
#include <span>
#include <vector>

#include "catlab/cat_states.hpp"
#include "catlab/channel.hpp"

namespace catlab {

/// S(t) = R sigma(t)^{-1} R, T(t) = S(t)^{-1} / det sigma(t),
/// A(t) = (S_xx - S_pp - 2i S_xp) / 4.
struct PurityAuxiliaries {
  Eigen::Matrix2d s;
  Eigen::Matrix2d tmat;
  std::complex<double> a;
  double det_sigma;
};

PurityAuxiliaries purity_auxiliaries(const CatSpec& spec, const ChannelSpec& ch, double t);

/// The closed-form purity split by which pairs of Wigner terms produce
/// each summand. With e = exp(-gamma t), X0 the initial quadrature
/// center and z0 = x0 + i p0:
///   diagonal     = 2 (1 + exp(-e X0^T S X0))
///   interference = 2 exp(-2|X0|^2) (cos 2 theta + exp(e X0^T T X0))
///   cross        = 8 exp(-|X0|^2) cos theta Re exp(-e z0^2 A)
///   prefactor    = 1 / (8 (1 + cos theta exp(-|X0|^2))^2 sqrt(det sigma))
/// Every product of exponentials is formed as one exponent first.
struct PuritySummands {
  double diagonal;
  double interference;
  double cross;
  double prefactor;

  double purity() const { return prefactor * (diagonal + interference + cross); }
};

PuritySummands purity_summands(const CatSpec& spec, const ChannelSpec& ch, double t);

double purity_closed_form(const CatSpec& spec, const ChannelSpec& ch, double t);

struct PurityCurve {
  std::vector<double> times;
  std::vector<double> purities;
  CatSpec spec;
  ChannelSpec channel;
};

PurityCurve purity_curve(const CatSpec& spec, const ChannelSpec& ch, std::span<const double> times);

/// 1 / (2 |beta0|^2 gamma).
double decoherence_time(const CatSpec& spec, const ChannelSpec& ch);

/// Ratio of the L2 norms of the interference part and the diagonal part
/// of the evolved Wigner function, sqrt(|interference| / diagonal).
/// Equals one at t = 0 for an even cat and decays to O(exp(-|X0|^2)).
double interference_weight(const CatSpec& spec, const ChannelSpec& ch, double t);

/// Time at which interference_weight first falls to 1/e of its initial value.
double interference_half_life(const CatSpec& spec, const ChannelSpec& ch);

/// Max over t_grid of |mu_A(t) - mu_B(t)| for
///   A: cat squeezed by r along x (phi0 = 0), xi = pi/2, thermal bath,
///   B: unsqueezed cat, xi = 0, bath squeezed by r with M real,
/// both with theta = 0, gamma = 1 and asymptotic purity mu_inf.
double equivalence_check(double r, double mu_inf, double beta_abs,
                         std::span<const double> t_grid);

}  // namespace catlab

#pragma once

// Decoherence-minimizing choices of the cat orientation xi and the
// squeezing r at fixed |beta0|.

#include <optional>
#include <utility>
#include <vector>

#include "catlab/cat_states.hpp"
#include "catlab/channel.hpp"

namespace catlab {

enum class OptimizationMethod { analytic, grid_refine };

enum class OptimizationStatus {
  ok,
  degenerate_flat,  // objective constant over the scan; argmax is NaN
  boundary,         // best value at the edge of the scanned domain
};

struct OptimizationResult {
  double argmax = 0;
  double value = 0;  // purity at argmax
  std::vector<std::pair<double, double>> scan;  // (parameter, purity)
  double t_eval = 0;
  OptimizationMethod method = OptimizationMethod::grid_refine;
  OptimizationStatus status = OptimizationStatus::ok;
};

const char* to_string(OptimizationMethod m);
const char* to_string(OptimizationStatus s);

/// a reduced to [0, pi).
double wrap_half_turn(double a);

/// Distance between two axis angles, i.e. modulo pi.
double axis_distance(double a, double b);

/// Closed-form optimal xi for an even cat in [0, pi):
///   squeezed cat (r0 > 0) in a thermal bath  -> phi0 + pi/2
///   unsqueezed cat in a squeezed bath         -> phi_inf
/// Any other combination throws UnsupportedError.
double optimal_xi_analytic(double r0, const ChannelSpec& ch, double phi0 = 0);

/// Maximizes purity_closed_form over xi in [0, pi) at fixed |beta0| with a
/// 64-point scan and golden-section refinement. The xi of spec is ignored.
/// t_eval defaults to decoherence_time(spec, ch).
OptimizationResult optimal_xi_numeric(const CatSpec& spec, const ChannelSpec& ch,
                                      std::optional<double> t_eval = std::nullopt);

/// For theta = pi/2 the optimal xi is the axis of the largest eigenvalue of
/// S(t)^{-1} = R^{-1} sigma(t) R^{-1}, which is the same for every t as
/// for R^{-1} sigma_inf R^{-1}. The time independence is rechecked at two
/// times.
OptimizationResult optimal_xi_yurke_stoler(const CatSpec& spec, const ChannelSpec& ch, double t);

/// Maximizes purity over r0 in [0, r_max] (phi0 = 0) with xi set to the
/// optimal orientation for every trial r0.
OptimizationResult optimal_r(double beta_abs, const ChannelSpec& ch, double t_eval, double theta,
                             double r_max = 3);

}  // namespace catlab

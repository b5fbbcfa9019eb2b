#pragma once

// Initial coherent and squeezed cat states
//   (|beta0> + e^{i theta} |-beta0>) / sqrt(2 + 2 cos(theta) e^{-2|beta0|^2})
// as four-term Wigner mixtures.

#include <complex>

#include "catlab/phase_space.hpp"

namespace catlab {

struct CatSpec {
  double beta_abs = 0;  // |beta0|
  double xi = 0;        // Arg beta0
  double r0 = 0;        // squeezing magnitude
  double phi0 = 0;      // squeezing angle; the anti-squeezed axis points along phi0
  double theta = 0;     // relative phase of the superposition

  static constexpr double kMinNormalization = 1e-8;

  /// Throws DomainError if any field is outside its domain.
  void validate() const;

  /// (x0, p0) = sqrt(2) |beta0| (cos xi, sin xi).
  Eigen::Vector2d quadrature_center() const;

  /// 2 + 2 cos(theta) exp(-2 |beta0|^2).
  double normalization() const;
};

/// b = mu a + nu a^dagger with |mu|^2 - |nu|^2 = 1.
class BogoliubovPair {
 public:
  BogoliubovPair(std::complex<double> mu, std::complex<double> nu);

  std::complex<double> mu() const { return mu_; }
  std::complex<double> nu() const { return nu_; }

 private:
  std::complex<double> mu_, nu_;
};

struct SqueezedDisplacement {
  std::complex<double> alpha;
  double r0;
  double phi0;  // in (-pi/2, pi/2]
};

/// Displacement and squeezing with |beta> = D(alpha) S(r0, phi0) |0>:
/// alpha = mu beta - nu beta*, cosh r0 = mu, e^{2 i phi0} sinh r0 = nu.
/// Only real positive mu is accepted.
SqueezedDisplacement bogoliubov_to_squeezing(const BogoliubovPair& pair, std::complex<double> beta);

/// Phase-space squeezing map Rot(phi) diag(e^r, e^-r) Rot(-phi).
/// The inverse is squeeze_matrix(-r, phi).
Eigen::Matrix2d squeeze_matrix(double r, double phi);

/// Covariance R (I/2) R of a squeezed vacuum.
Cov squeezed_vacuum_cov(double r, double phi);

/// The cat's four terms with every center scaled by center_scale and all
/// terms sharing cov. Weights are normalized for cov, so the mixture
/// integrates to one for any admissible cov. Ordering: +Y, -Y, then the
/// interference pair +iZ (phase e^{i theta}) and -iZ (phase e^{-i theta}),
/// with Y = s R X0 and Z = s R J X0, J X0 = (-p0, x0).
Mixture cat_mixture(const CatSpec& spec, double center_scale, const Cov& cov);

/// Requires r0 == 0.
Mixture build_coherent_cat(const CatSpec& spec);
Mixture build_squeezed_cat(const CatSpec& spec);

/// Tr[rho D(eta)] for an unsqueezed cat with alpha0 = |beta0| e^{i xi}.
std::complex<double> characteristic_function(const CatSpec& spec, std::complex<double> eta);

}  // namespace catlab

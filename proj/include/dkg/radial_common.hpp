#pragma once

#include <cmath>
#include <optional>

#include "dkg/azimuthal.hpp"
#include "dkg/operator_params.hpp"

namespace dkg {

/// Angular data a radial problem needs: the deformation (with the common
/// gamma = a already applied), the sector, n_phi and the resulting m'^2.
struct AngularInput {
  WignerParams wigner;
  ParitySector sector;
  int n_phi = 0;
  DerivedParams derived;
  double m_prime_sq = 0.0;

  double xi_sum() const { return derived.xi_sum(); }
};

/// Applies gamma1 = gamma2 = a, derives the reduction parameters and picks
/// m'^2 from the requested source. Throws DomainError for |a| >= 1 or
/// complex k.
AngularInput make_angular_input(const WignerParams& w, double a, const ParitySector& s, int n_phi,
                                MPrimeSource source = MPrimeSource::closed_form,
                                std::optional<GridSpec> oracle_grid = std::nullopt);

/// Same input with m'^2 overridden.
AngularInput with_m_prime_sq(AngularInput in, double m_prime_sq);

/// A radial wavefunction and its first two rho-derivatives, all carrying
/// the common factor exp(log_scale) so that deep tails do not underflow.
struct WaveSample {
  double log_scale = 0.0;
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;

  double psi() const { return std::exp(log_scale) * value; }
};

/// Residual of psi'' + (1 + 2 xi)/rho psi' + (E^2 - m^2 - m'^2/rho^2 - 2 (E + m) V) psi
/// at one point, divided by the sum of the magnitudes of its terms.
double radial_residual(const WaveSample& s, double rho, double energy, double mass, double xi_sum, double m_prime_sq,
                       double potential);

} // namespace dkg

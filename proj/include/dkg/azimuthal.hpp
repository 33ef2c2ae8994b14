#pragma once

#include <array>
#include <optional>

#include "dkg/numerical_oracle.hpp"
#include "dkg/operator_params.hpp"

namespace dkg {

enum class MPrimeSource { closed_form, oracle };

struct KExponents {
  double k1 = 0.0;
  double k2 = 0.0;
};

struct AzimuthalSolution {
  ParitySector sector;
  int n_phi = 0;
  double k1 = 0.0;
  double k2 = 0.0;
  /// The value selected by `source`.
  double m_prime_sq = 0.0;
  MPrimeSource source = MPrimeSource::closed_form;
  double closed_form_m_prime_sq = 0.0;
  /// Set whenever the grid eigensolver was run.
  std::optional<double> oracle_m_prime_sq;
  std::optional<double> discrepancy;
};

/// (1 - 2 xi_i)^2 - 4 mu_i - 4 nu_i r_i for i = 1, 2.
std::array<double, 2> k_radicands(const DerivedParams& d, const ParitySector& s);

/// Nonnegative square roots of k_radicands; DomainError names the negative
/// radicand.
KExponents compute_k(const DerivedParams& d, const ParitySector& s);

/// Closed-form modified quantum number
///   m'^2 = 2 n (2 n + 2 + k1 + k2) + 3/2 - (mu1 + mu2) + (k1 + k2 + k1 k2 / 2)
///          - (xi1 + xi2 + 2 xi1 xi2) - (nu1 r1 + nu2 r2).
/// The zero-deformation limit gives 4 (n + 1)^2 in every sector.
double m_prime_squared(const DerivedParams& d, const ParitySector& s, int n_phi);

/// Unnormalized closed-form angular eigenfunction
///   exp(-cos^2 phi (2 - 2 xi1 - 2 xi2 + k1 + k2) / 4) (cos phi)^{(1 - 2 xi1 + k1)/2}
///   L_{n_phi}^{k1/2}((4 + k1 + k2)/2 cos^2 phi).
double azimuthal_wavefunction(const DerivedParams& d, const ParitySector& s, int n_phi, double phi);

/// L2 norm of azimuthal_wavefunction on [0, pi/2] with the flux-form weight
/// sin^{2 xi2} cos^{2 xi1} (trapezoid rule).
double azimuthal_norm(const DerivedParams& d, const ParitySector& s, int n_phi, int n_points = 10000);

/// Closed-form solution; when `oracle_grid` is given (or source == oracle)
/// the grid eigensolver is run too and the discrepancy is logged. The
/// oracle value for n_phi is the n_phi-th (zero-based) sector eigenvalue.
AzimuthalSolution solve_azimuthal(const DerivedParams& d, const ParitySector& s, int n_phi,
                                  MPrimeSource source = MPrimeSource::closed_form,
                                  std::optional<GridSpec> oracle_grid = std::nullopt);

} // namespace dkg

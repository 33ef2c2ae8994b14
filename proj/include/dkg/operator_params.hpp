#pragma once

#include <array>
#include <string>
#include <vector>

namespace dkg {

/// Deformation parameters of the generalized Dunkl derivatives
///   D_x = d/dx + alpha/x + (beta/x) R + gamma (d/dx) R
/// along each Cartesian axis.
struct WignerParams {
  double alpha1 = 0.0;
  double beta1 = 0.0;
  double gamma1 = 0.0;
  double alpha2 = 0.0;
  double beta2 = 0.0;
  double gamma2 = 0.0;

  /// Same parameters with gamma1 = gamma2 = a (the radial problems use a
  /// common gamma).
  WignerParams with_common_gamma(double a) const;

  bool operator==(const WignerParams&) const = default;
};

/// Coefficients of the polar-coordinate reduction of the Dunkl Laplacian.
struct DerivedParams {
  double xi1 = 0.0;
  double xi2 = 0.0;
  double mu1 = 0.0;
  double mu2 = 0.0;
  double nu1 = 0.0;
  double nu2 = 0.0;

  double xi_sum() const { return xi1 + xi2; }

  bool operator==(const DerivedParams&) const = default;
};

/// Joint eigenvalues (r1, r2) of the reflections R1: x -> -x and R2: y -> -y.
struct ParitySector {
  int r1 = +1;
  int r2 = +1;

  bool operator==(const ParitySector&) const = default;

  /// The four sectors in the fixed order (+,+), (+,-), (-,+), (-,-).
  static std::array<ParitySector, 4> all();
  /// Throws DomainError unless r1, r2 are both +1 or -1.
  static ParitySector make(int r1, int r2);

  std::string label() const;
};

/// |gamma| must stay below 1 - kGammaMargin.
inline constexpr double kGammaMargin = 1e-12;

/// Throws DomainError if |gamma1| or |gamma2| violates the coordinate-map
/// constraint.
DerivedParams derive_params(const WignerParams& w, double margin = kGammaMargin);

struct ValidationCheck {
  std::string name;
  bool ok = false;
  std::string detail;
};

/// Report-style validation; never throws.
struct ValidationReport {
  std::vector<ValidationCheck> checks;

  bool ok() const;
  const ValidationCheck* find(const std::string& name) const;
};

/// Checks the gamma constraint, the reality of k1/k2 in sector s and the
/// sign of the closed-form m'^2 for azimuthal quantum number n_phi.
ValidationReport validate(const WignerParams& w, const ParitySector& s, int n_phi = 0);

} // namespace dkg

#pragma once

#include <vector>

#include "dkg/numerical_oracle.hpp"
#include "dkg/radial_common.hpp"

namespace dkg {

/// Klein-Gordon oscillator with equal scalar and vector potential
/// V = m w^2 (x^2 + y^2) / 2 = m w^2 (1 - a^2) rho^2 / 2 in the deformed
/// polar coordinates.
struct HarmonicConfig {
  double mass = 1.0;
  double omega = 1.0;
  double a = 0.0;
  AngularInput angular;
  int n = 0;

  /// m w^2 (1 - a^2); the quantization condition is linear in it.
  double coupling() const { return mass * omega * omega * (1.0 - a * a); }
  /// M = 1/2 + n + sqrt(m'^2 + xi^2) / 2.
  double big_m() const;
  /// Throws DomainError on m <= 0, w <= 0, |a| >= 1, m'^2 < 0 or n < 0.
  void check() const;
};

HarmonicConfig make_harmonic_config(const WignerParams& w, const ParitySector& s, int n_phi, double mass,
                                    double omega, double a, int n, MPrimeSource source = MPrimeSource::closed_form);

/// Parameters of psi(s) = s^p exp(-kappa s) L_n^q(2 kappa s), s = rho^2.
struct HarmonicWaveDescriptor {
  double exponent = 0.0;
  double gaussian_scale = 0.0;
  double laguerre_order = 0.0;
  double laguerre_scale = 0.0;
};

struct HarmonicLevel {
  int n = 0;
  double m_prime_sq = 0.0;
  double big_m = 0.0;
  /// Physical roots (E > m) of the quantization condition, ascending.
  std::vector<double> energies;
  HarmonicWaveDescriptor wavefn;
  /// Nested-radical cubic solution as printed in the source derivation;
  /// NaN when it does not evaluate to a real number.
  double printed_closed_form = 0.0;
  /// |printed_closed_form - energies.front()|, NaN when not comparable.
  double printed_discrepancy = 0.0;

  double energy() const { return energies.front(); }
};

/// (E - m)^2 (E + m) - 16 M^2 m w^2 (1 - a^2): the squared form of the
/// bound-state condition E^2 - m^2 = 4 M sqrt((E + m) m w^2 (1 - a^2)).
double quantization_residual(const HarmonicConfig& cfg, double energy);

/// Upper end of the energy scan, m + 20 sqrt(m w^2 (1 - a^2)) (M + 1).
double harmonic_scan_limit(const HarmonicConfig& cfg);

/// Brackets and bisects quantization_residual on (m, E_max].
HarmonicLevel solve_levels(const HarmonicConfig& cfg);

/// Literal evaluation of the printed cubic closed form (complex principal
/// branches); NaN if the result is not real.
double printed_harmonic_energy(const HarmonicConfig& cfg);

HarmonicWaveDescriptor harmonic_wave_descriptor(const HarmonicConfig& cfg, double energy);

/// Unnormalized psi(rho) of the level's lowest root.
double harmonic_wavefunction(const HarmonicLevel& level, const HarmonicConfig& cfg, double rho);

/// psi, psi', psi'' at rho > 0 sharing the factor exp(log_scale).
WaveSample harmonic_wave_sample(const HarmonicLevel& level, const HarmonicConfig& cfg, double rho);

/// sqrt(int_0^rho_max psi^2 rho^{1 + 2 xi} d rho) by the trapezoid rule.
double harmonic_norm(const HarmonicLevel& level, const HarmonicConfig& cfg, double rho_max, int n_points = 10000);

/// Radial problem for the grid oracle, seeded with the closed-form roots of
/// levels 0..n_levels-1.
RadialProblem harmonic_radial_problem(const HarmonicConfig& cfg, int n_levels);

} // namespace dkg

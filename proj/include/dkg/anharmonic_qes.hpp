#pragma once

#include <string>
#include <vector>

#include "dkg/numerical_oracle.hpp"
#include "dkg/radial_common.hpp"
#include "dkg/sl2.hpp"

namespace dkg {

/// Couplings after the deformed coordinate map:
/// w = (1 - a^2) Omega, lam = (1 - a^2)^2 Lambda, eta = (1 - a^2)^3 Gamma.
struct AnharmonicCouplings {
  double w = 0.0;
  double lam = 0.0;
  double eta = 0.0;
};

/// Sextic potential V = Omega r^2 + Lambda r^4 + Gamma r^6 (r^2 = x^2 + y^2)
/// as equal scalar and vector coupling; n is the degree of the QES
/// polynomial block.
struct AnharmonicConfig {
  double mass = 1.0;
  double Omega = 0.0;
  double Lambda = 0.0;
  double Gamma = 1.0;
  double a = 0.0;
  AngularInput angular;
  int n = 0;

  AnharmonicCouplings couplings() const;
  /// w rho^2 + lam rho^4 + eta rho^6.
  double potential(double rho) const;
  /// Throws DomainError on m <= 0, |a| >= 1, eta <= 0, m'^2 < 0 or n < 0.
  void check() const;
};

AnharmonicConfig make_anharmonic_config(const WignerParams& w, const ParitySector& s, int n_phi, double mass,
                                        double Omega, double Lambda, double Gamma, double a, int n,
                                        MPrimeSource source = MPrimeSource::closed_form);

/// Coefficients of U'' + U'/Z + (l1/Z^2 + l2/Z + l3 + l4 Z + l5 Z^2) U = 0,
/// where psi = Z^{-xi/2} U and Z = rho^2.
struct LambdaCoeffs {
  double l1 = 0.0;
  double l2 = 0.0;
  double l3 = 0.0;
  double l4 = 0.0;
  double l5 = 0.0;
};

LambdaCoeffs lambda_coeffs(const AnharmonicConfig& cfg, double energy);

/// Gauge factor U = Z^A exp(-B Z^2 - D Z) U~.
struct GaugeTriple {
  double A = 0.0;
  double B = 0.0;
  double D = 0.0;
};

/// A = sqrt(-l1), B = +sqrt(-l5)/2, D = -l4/(4B). GaugeDomainError unless
/// l5 < 0; DomainError if l1 > 0.
GaugeTriple gauge_params(const LambdaCoeffs& l);

/// Constant term l3 - 4AB - 4B + D^2 of the gauge-transformed operator.
double gauge_constant(const LambdaCoeffs& l, const GaugeTriple& g);

struct Sl2Match {
  Sl2Coefficients coeffs;
  /// p4, p3, p2 rebuilt by composing the generators.
  PPolynomials reconstructed;
  /// Z times the gauge-transformed operator with its constant c replaced by
  /// 4nB, the value the energy constraint imposes.
  PPolynomials transformed;
  /// Largest coefficient mismatch relative to the coefficient scale.
  double mismatch = 0.0;
};

/// C++ = C+0 = C+- = C-- = 0, C0- = 1, C+ = -4B, C0 = -2D,
/// C- = n/2 + 2A + 1, C = -nD - 2AD - D + l2. Rebuilds the operator from the
/// generators and compares it with Z times the gauge-transformed operator;
/// ConsistencyError when they differ by more than 1e-12 relative.
Sl2Match sl2_match(const AnharmonicConfig& cfg, const GaugeTriple& gauge, const LambdaCoeffs& l);

/// F(E) = 4 n B - l3 + 4 A B + 4 B - D^2; NaN where the gauge is undefined
/// (E <= -m).
double energy_constraint(const AnharmonicConfig& cfg, double energy);

/// Roots of F on (-m, E_max] by domain-aware bracketing; NoRootFound when
/// the scan sees no sign change.
std::vector<double> qes_energy(const AnharmonicConfig& cfg);

/// The printed (lam^2 - 4 eta w)^{-2} closed form, evaluated literally.
double printed_qes_energy(const AnharmonicConfig& cfg);

/// a_0 .. a_{n_terms - 1} of U~ = sum a_k Z^k from matching powers of Z in
/// Z (d^2 + ((2A + 1)/Z - 4BZ - 2D) d + (l2 - 2AD - D)/Z + c) U~ = 0:
///   (k + 1)(k + 2A + 1) a_{k+1} = -(l2 - 2AD - D(2k + 1)) a_k - (c - 4B(k - 1)) a_{k-1}
/// with c = l3 - 4AB - 4B + D^2 and a_0 = 1. At a QES energy c = 4nB and the
/// last term becomes -4B(n - k + 1) a_{k-1}.
std::vector<double> recursion_coeffs(const AnharmonicConfig& cfg, double energy, const GaugeTriple& gauge,
                                     int n_terms);

/// The recursion as printed, with -8Bk in the a_{k-1} term; kept for
/// comparison only.
std::vector<double> printed_recursion_coeffs(const AnharmonicConfig& cfg, double energy, const GaugeTriple& gauge,
                                             int n_terms);

struct QESSolution {
  AnharmonicConfig config;
  double energy = 0.0;
  LambdaCoeffs lambdas;
  GaugeTriple gauge;
  /// a_0 .. a_{n+1}.
  std::vector<double> coeffs;
  /// |a_{n+1}|; zero for a genuine (calibrated) QES state.
  double truncation_residual = 0.0;
  Sl2Coefficients sl2_coeffs;
  /// |F(E)| relative to the size of its terms.
  double constraint_residual = 0.0;
  double printed_energy = 0.0;
};

/// Lowest root of qes_energy with its gauge, coefficients and sl(2) data.
QESSolution solve_qes(const AnharmonicConfig& cfg);

enum class FreeParameter { Omega, Lambda, alpha2, m_prime_sq };

std::string to_string(FreeParameter p);
FreeParameter free_parameter_from_string(const std::string& s);

double free_parameter_value(const AnharmonicConfig& cfg, FreeParameter p);
/// Copy of cfg with the parameter replaced; derived angular data are
/// recomputed for alpha2.
AnharmonicConfig with_free_parameter(const AnharmonicConfig& cfg, FreeParameter p, double value);

inline constexpr double kTruncationTol = 1e-10;

struct CalibrationResult {
  AnharmonicConfig config;
  double parameter = 0.0;
  QESSolution solution;
  std::vector<std::string> trace;
};

/// Adjusts the free parameter (root nearest to its current value) until
/// a_{n+1}(E_qes) = 0, making the polynomial part terminate at degree n.
/// The energy is re-solved from the constraint at every trial value.
CalibrationResult calibrate_truncation(const AnharmonicConfig& base, FreeParameter which = FreeParameter::Omega);

/// psi(rho) = Z^{-xi/2} Z^A exp(-B Z^2 - D Z) sum_{k<=n} a_k Z^k, Z = rho^2.
double qes_wavefunction(const QESSolution& sol, double rho);
WaveSample qes_wave_sample(const QESSolution& sol, double rho);

/// Radial problem for the grid oracle with potential w rho^2 + lam rho^4 +
/// eta rho^6; every seed is set to `seed`.
RadialProblem anharmonic_radial_problem(const AnharmonicConfig& cfg, double seed, int n_levels);

struct QesOracleCheck {
  int level = 0;
  double oracle_energy = 0.0;
  double relative_difference = 0.0;
  double overlap = 0.0;
  double convergence_estimate = 0.0;
};

/// Identifies the oracle level whose linear eigenvalue at E_qes lies
/// closest to E^2 - m^2 among the lowest `candidates`, solves that level
/// nonlinearly and compares energy and eigenvector with the QES state.
QesOracleCheck qes_oracle_check(const QESSolution& sol, const GridSpec& grid = default_radial_grid(),
                                int candidates = 6);

} // namespace dkg

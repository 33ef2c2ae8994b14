#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dkg/operator_params.hpp"
#include "dkg/sturm_liouville.hpp"

namespace dkg {

/// Eigenvalues accepted only below this two-resolution relative error.
inline constexpr double kConvergenceThreshold = 1e-4;

struct SpectrumResult {
  /// Ascending; Richardson-extrapolated from grids with N and 2N cells.
  std::vector<double> eigenvalues;
  /// Eigenfunctions sampled at the nodes of `grid`, normalized to
  /// sum_i W(x_i) f_i^2 h = 1 with the problem's weight W.
  std::vector<std::vector<double>> eigenvectors;
  /// The finer of the two grids.
  GridSpec grid;
  /// Relative Richardson error estimate per eigenvalue.
  std::vector<double> convergence_estimate;
};

/// [0, pi/2] with the given cell count; boundaries are set per sector by
/// angular_spectrum.
GridSpec default_angular_grid(int n_points = 2048);

/// Boundary conditions of the angular problem in sector s: a reflection
/// eigenvalue +1 gives zero flux at the corresponding axis, -1 a node.
/// phi = 0 is the x axis (reflection R2), phi = pi/2 the y axis (R1).
GridSpec angular_grid_for_sector(GridSpec g, const ParitySector& s);

/// Weight W = sin^{2 xi2} cos^{2 xi1} that puts B_phi in flux form.
double angular_weight(const DerivedParams& d, double phi);

/// Lowest n_levels eigenvalues of -B_phi with the reflections replaced by
/// their sector eigenvalues (candidate m'^2 values).
SpectrumResult angular_spectrum(const DerivedParams& d, const ParitySector& s, const GridSpec& g, int n_levels);

/// Radial Klein-Gordon problem with equal scalar and vector potential V:
///   psi'' + (1 + 2 xi)/rho psi' + (E^2 - m^2 - m'^2/rho^2 - 2 (E + m) V) psi = 0.
struct RadialProblem {
  double mass = 1.0;
  double xi_sum = 0.0;
  double m_prime_sq = 0.0;
  std::function<double(double)> potential;
  /// Optional energy guesses per level (closed-form predictions).
  std::vector<double> seeds;
  std::string label;
};

struct RadialOracleOptions {
  /// Potential term 2 (E + m) V(R) must exceed this multiple of E^2 - m^2.
  double domain_factor = 10.0;
  /// Forces the outer radius when set.
  std::optional<double> r_max;
  double energy_tol = 1e-10;
  int max_iterations = 50;
};

/// [0, R] with zero flux at the origin and a node at R; R is filled in by
/// radial_spectrum when x_max <= 0.
GridSpec default_radial_grid(int n_points = 4096);

/// Smallest R with 2 (E + m) V(R) >= factor * max(|E^2 - m^2|, m^2 * 1e-3).
double radial_domain_radius(const RadialProblem& p, double energy, double factor);

/// Eigenvalues first..last of the linear operator
///   -L_E = -(1/W)(W psi')' + [m'^2/rho^2 + 2 (E + m) V] psi,   W = rho^{1 + 2 xi}
/// at a fixed trial energy E (no Richardson step).
Eigenpairs radial_operator_eigenpairs(const RadialProblem& p, const GridSpec& g, double energy, int first, int last,
                                      bool want_vectors);

/// Assembled symmetric matrix of -L_E; exposed for structural tests.
SymmetricTridiagonal radial_operator_matrix(const RadialProblem& p, const GridSpec& g, double energy);

/// Solves mu_k(E) = E^2 - m^2 for levels k = 0..n_levels-1, where mu_k is the
/// k-th eigenvalue of -L_E, by safeguarded secant iteration on E at N and 2N
/// cells followed by Richardson extrapolation.
SpectrumResult radial_spectrum(const RadialProblem& p, const GridSpec& g, int n_levels,
                               const RadialOracleOptions& opt = {});

/// Single level k of radial_spectrum.
struct RadialLevel {
  double energy = 0.0;
  double convergence_estimate = 0.0;
  int iterations = 0;
  GridSpec grid;
  std::vector<double> eigenvector;
};
RadialLevel radial_level(const RadialProblem& p, const GridSpec& g, int level, const RadialOracleOptions& opt = {});

/// |<u, f>| / (|u| |f|) in the weighted inner product sum_i W_i u_i f_i h.
double weighted_overlap(const GridSpec& g, const std::function<double(double)>& weight, const std::vector<double>& u,
                        const std::function<double(double)>& f);

} // namespace dkg

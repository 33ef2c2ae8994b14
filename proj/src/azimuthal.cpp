#include "dkg/azimuthal.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "dkg/errors.hpp"
#include "dkg/log.hpp"
#include "dkg/special_functions.hpp"

namespace dkg {

std::array<double, 2> k_radicands(const DerivedParams& d, const ParitySector& s) {
  auto radicand = [](double xi, double mu, double nu, int r) {
    return (1.0 - 2.0 * xi) * (1.0 - 2.0 * xi) - 4.0 * mu - 4.0 * nu * r;
  };
  return {radicand(d.xi1, d.mu1, d.nu1, s.r1), radicand(d.xi2, d.mu2, d.nu2, s.r2)};
}

KExponents compute_k(const DerivedParams& d, const ParitySector& s) {
  const auto rad = k_radicands(d, s);
  for (int i = 0; i < 2; ++i) {
    if (rad[i] < 0.0) {
      std::ostringstream msg;
      msg << "k" << (i + 1) << " is complex in sector " << s.label() << ": radicand = " << rad[i];
      throw DomainError(msg.str());
    }
  }
  return {std::sqrt(rad[0]), std::sqrt(rad[1])};
}

double m_prime_squared(const DerivedParams& d, const ParitySector& s, int n_phi) {
  if (n_phi < 0) throw DomainError("n_phi must be nonnegative");
  const auto [k1, k2] = compute_k(d, s);
  const double n = n_phi;
  return 2.0 * n * (2.0 * n + 2.0 + k1 + k2) + 1.5 - (d.mu1 + d.mu2) + (k1 + k2 + 0.5 * k1 * k2) -
         (d.xi1 + d.xi2 + 2.0 * d.xi1 * d.xi2) - (d.nu1 * s.r1 + d.nu2 * s.r2);
}

double azimuthal_wavefunction(const DerivedParams& d, const ParitySector& s, int n_phi, double phi) {
  const auto [k1, k2] = compute_k(d, s);
  const double c = std::cos(phi);
  const double c2 = c * c;
  const double gauss = std::exp(-c2 * (2.0 - 2.0 * d.xi1 - 2.0 * d.xi2 + k1 + k2) / 4.0);
  const double power = std::pow(c, (1.0 - 2.0 * d.xi1 + k1) / 2.0);
  const double poly = laguerre_eval({n_phi, k1 / 2.0}, (4.0 + k1 + k2) / 2.0 * c2);
  return gauss * power * poly;
}

double azimuthal_norm(const DerivedParams& d, const ParitySector& s, int n_phi, int n_points) {
  auto density = [&](double phi) {
    const double f = azimuthal_wavefunction(d, s, n_phi, phi);
    const double w = angular_weight(d, phi);
    const double v = w * f * f;
    return std::isfinite(v) ? v : 0.0;
  };
  return std::sqrt(trapezoid(density, 0.0, std::numbers::pi / 2.0, n_points));
}

AzimuthalSolution solve_azimuthal(const DerivedParams& d, const ParitySector& s, int n_phi, MPrimeSource source,
                                  std::optional<GridSpec> oracle_grid) {
  AzimuthalSolution out;
  out.sector = s;
  out.n_phi = n_phi;
  out.source = source;
  const auto k = compute_k(d, s);
  out.k1 = k.k1;
  out.k2 = k.k2;
  out.closed_form_m_prime_sq = m_prime_squared(d, s, n_phi);
  out.m_prime_sq = out.closed_form_m_prime_sq;

  if (source == MPrimeSource::oracle || oracle_grid) {
    const GridSpec g = oracle_grid.value_or(default_angular_grid());
    const auto spectrum = angular_spectrum(d, s, g, n_phi + 1);
    out.oracle_m_prime_sq = spectrum.eigenvalues[static_cast<std::size_t>(n_phi)];
    out.discrepancy = std::abs(*out.oracle_m_prime_sq - out.closed_form_m_prime_sq);
    std::ostringstream msg;
    msg << "azimuthal sector " << s.label() << " n_phi=" << n_phi << ": closed-form m'^2 = "
        << out.closed_form_m_prime_sq << ", grid m'^2 = " << *out.oracle_m_prime_sq << ", |diff| = "
        << *out.discrepancy;
    log_message(msg.str());
    if (source == MPrimeSource::oracle) out.m_prime_sq = *out.oracle_m_prime_sq;
  }
  return out;
}

} // namespace dkg

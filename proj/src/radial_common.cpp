#include "dkg/radial_common.hpp"

#include <sstream>

#include "dkg/errors.hpp"

namespace dkg {

AngularInput make_angular_input(const WignerParams& w, double a, const ParitySector& s, int n_phi,
                                MPrimeSource source, std::optional<GridSpec> oracle_grid) {
  if (!(std::abs(a) < 1.0 - kGammaMargin)) {
    std::ostringstream msg;
    msg << "a = " << a << " violates |a| < 1";
    throw DomainError(msg.str());
  }
  AngularInput in;
  in.wigner = w.with_common_gamma(a);
  in.sector = s;
  in.n_phi = n_phi;
  in.derived = derive_params(in.wigner);
  in.m_prime_sq = solve_azimuthal(in.derived, s, n_phi, source, oracle_grid).m_prime_sq;
  return in;
}

AngularInput with_m_prime_sq(AngularInput in, double m_prime_sq) {
  in.m_prime_sq = m_prime_sq;
  return in;
}

double radial_residual(const WaveSample& s, double rho, double energy, double mass, double xi_sum, double m_prime_sq,
                       double potential) {
  const double t1 = s.d2;
  const double t2 = (1.0 + 2.0 * xi_sum) / rho * s.d1;
  const double t3 = (energy * energy - mass * mass) * s.value;
  const double t4 = -m_prime_sq / (rho * rho) * s.value;
  const double t5 = -2.0 * (energy + mass) * potential * s.value;
  const double scale = std::abs(t1) + std::abs(t2) + std::abs(t3) + std::abs(t4) + std::abs(t5);
  if (scale == 0.0) return 0.0;
  return std::abs(t1 + t2 + t3 + t4 + t5) / scale;
}

} // namespace dkg

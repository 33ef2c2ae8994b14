#include "dkg/harmonic_radial.hpp"

#include <complex>
#include <limits>
#include <sstream>

#include "dkg/errors.hpp"
#include "dkg/log.hpp"
#include "dkg/special_functions.hpp"

namespace dkg {

double HarmonicConfig::big_m() const {
  const double xi = angular.xi_sum();
  return 0.5 + n + 0.5 * std::sqrt(angular.m_prime_sq + xi * xi);
}

void HarmonicConfig::check() const {
  std::ostringstream msg;
  if (!(mass > 0.0)) msg << "mass must be positive (got " << mass << ")";
  else if (!(omega > 0.0)) msg << "omega must be positive (got " << omega << ")";
  else if (!(std::abs(a) < 1.0)) msg << "a = " << a << " violates |a| < 1";
  else if (n < 0) msg << "n must be nonnegative";
  else if (angular.m_prime_sq < 0.0)
    msg << "m'^2 = " << angular.m_prime_sq << " < 0 gives an imaginary centrifugal index";
  else return;
  throw DomainError(msg.str());
}

HarmonicConfig make_harmonic_config(const WignerParams& w, const ParitySector& s, int n_phi, double mass,
                                    double omega, double a, int n, MPrimeSource source) {
  HarmonicConfig cfg{mass, omega, a, make_angular_input(w, a, s, n_phi, source), n};
  cfg.check();
  return cfg;
}

double quantization_residual(const HarmonicConfig& cfg, double energy) {
  const double m = cfg.mass;
  if (energy < -m) {
    std::ostringstream msg;
    msg << "quantization_residual: E = " << energy << " < -m";
    throw DomainError(msg.str());
  }
  const double big_m = cfg.big_m();
  return (energy - m) * (energy - m) * (energy + m) - 16.0 * big_m * big_m * cfg.coupling();
}

double harmonic_scan_limit(const HarmonicConfig& cfg) {
  return cfg.mass + 20.0 * std::sqrt(cfg.coupling()) * (cfg.big_m() + 1.0);
}

double printed_harmonic_energy(const HarmonicConfig& cfg) {
  using C = std::complex<double>;
  const double m = cfg.mass;
  const double w = cfg.omega;
  const double big_m = cfg.big_m();
  const double s = cfg.a * cfg.a - 1.0;
  const C root = std::sqrt(C(s * (2.0 * m * m + 27.0 * s)));
  const C script_m = m * (3.0 * std::sqrt(3.0) * big_m * big_m * w * w * root - (m * m + 27.0 * s * big_m * big_m * w * w));
  const C inner = m + 2.0 * m * m / std::pow(script_m, 1.0 / 3.0) + 2.0 * script_m;
  const C energy = std::pow(inner, 1.0 / 3.0) / 3.0;
  if (!std::isfinite(energy.real()) || std::abs(energy.imag()) > 1e-9 * std::max(1.0, std::abs(energy))) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return energy.real();
}

HarmonicWaveDescriptor harmonic_wave_descriptor(const HarmonicConfig& cfg, double energy) {
  const double xi = cfg.angular.xi_sum();
  const double q = std::sqrt(xi * xi + cfg.angular.m_prime_sq);
  const double kappa = 0.5 * std::sqrt(cfg.coupling() * (energy + cfg.mass));
  return {-0.5 * xi + 0.5 * q, kappa, q, 2.0 * kappa};
}

HarmonicLevel solve_levels(const HarmonicConfig& cfg) {
  cfg.check();
  HarmonicLevel level;
  level.n = cfg.n;
  level.m_prime_sq = cfg.angular.m_prime_sq;
  level.big_m = cfg.big_m();

  auto residual = [&cfg](double e) { return quantization_residual(cfg, e); };
  const double lo = cfg.mass;
  double hi = harmonic_scan_limit(cfg);
  // The residual increases monotonically for E > m; widen the scan if the
  // heuristic limit falls short.
  for (int i = 0; residual(hi) <= 0.0 && i < 60; ++i) hi = lo + 2.0 * (hi - lo);
  // Bisect down to adjacent doubles.
  const double tol = std::numeric_limits<double>::denorm_min();
  for (double e : find_roots(residual, lo, hi, kDefaultPanels, tol)) {
    if (e > cfg.mass) level.energies.push_back(e);
  }
  if (level.energies.empty()) {
    std::ostringstream msg;
    msg << "harmonic quantization: no sign change on (" << lo << ", " << hi << "] with " << kDefaultPanels
        << " panels (M = " << level.big_m << ", coupling = " << cfg.coupling() << ")";
    throw NoRootFound(msg.str());
  }

  level.wavefn = harmonic_wave_descriptor(cfg, level.energy());
  level.printed_closed_form = printed_harmonic_energy(cfg);
  level.printed_discrepancy = std::abs(level.printed_closed_form - level.energy());
  std::ostringstream msg;
  msg << "harmonic n=" << cfg.n << " a=" << cfg.a << ": root E = " << level.energy()
      << ", printed closed form = " << level.printed_closed_form << ", |diff| = " << level.printed_discrepancy;
  log_message(msg.str());
  return level;
}

WaveSample harmonic_wave_sample(const HarmonicLevel& level, const HarmonicConfig& cfg, double rho) {
  (void)cfg;
  const auto& w = level.wavefn;
  const double p = w.exponent;
  const double kappa = w.gaussian_scale;
  const double x = w.laguerre_scale * rho * rho;
  const int n = level.n;
  const double lag = laguerre_eval({n, w.laguerre_order}, x);
  const double lag1 = -laguerre_eval({n - 1, w.laguerre_order + 1.0}, x);
  const double lag2 = laguerre_eval({n - 2, w.laguerre_order + 2.0}, x);

  // psi = exp(S) P with S = 2 p ln(rho) - kappa rho^2 and P = L(2 kappa rho^2).
  const double ds = 2.0 * p / rho - 2.0 * kappa * rho;
  const double dds = -2.0 * p / (rho * rho) - 2.0 * kappa;
  const double dx = 2.0 * w.laguerre_scale * rho;
  const double dp = lag1 * dx;
  const double ddp = lag2 * dx * dx + lag1 * 2.0 * w.laguerre_scale;

  WaveSample out;
  out.log_scale = 2.0 * p * std::log(rho) - kappa * rho * rho;
  out.value = lag;
  out.d1 = ds * lag + dp;
  out.d2 = (dds + ds * ds) * lag + 2.0 * ds * dp + ddp;
  return out;
}

double harmonic_wavefunction(const HarmonicLevel& level, const HarmonicConfig& cfg, double rho) {
  if (rho < 0.0) throw DomainError("harmonic_wavefunction: rho must be nonnegative");
  const auto& w = level.wavefn;
  const double s = rho * rho;
  const double power = (s == 0.0) ? (w.exponent == 0.0 ? 1.0 : 0.0) : std::pow(s, w.exponent);
  (void)cfg;
  return power * std::exp(-w.gaussian_scale * s) * laguerre_eval({level.n, w.laguerre_order}, w.laguerre_scale * s);
}

double harmonic_norm(const HarmonicLevel& level, const HarmonicConfig& cfg, double rho_max, int n_points) {
  const double c = 1.0 + 2.0 * cfg.angular.xi_sum();
  auto density = [&](double rho) {
    if (rho == 0.0) return 0.0;
    const double psi = harmonic_wavefunction(level, cfg, rho);
    return psi * psi * std::pow(rho, c);
  };
  return std::sqrt(trapezoid(density, 0.0, rho_max, n_points));
}

RadialProblem harmonic_radial_problem(const HarmonicConfig& cfg, int n_levels) {
  cfg.check();
  RadialProblem p;
  p.mass = cfg.mass;
  p.xi_sum = cfg.angular.xi_sum();
  p.m_prime_sq = cfg.angular.m_prime_sq;
  const double half_coupling = 0.5 * cfg.coupling();
  p.potential = [half_coupling](double rho) { return half_coupling * rho * rho; };
  for (int k = 0; k < n_levels; ++k) {
    HarmonicConfig lvl = cfg;
    lvl.n = k;
    p.seeds.push_back(solve_levels(lvl).energy());
  }
  std::ostringstream label;
  label << "harmonic a=" << cfg.a << " m'^2=" << cfg.angular.m_prime_sq;
  p.label = label.str();
  return p;
}

} // namespace dkg

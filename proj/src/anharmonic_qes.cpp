#include "dkg/anharmonic_qes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dkg/errors.hpp"
#include "dkg/log.hpp"
#include "dkg/special_functions.hpp"

namespace dkg {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Bisects to adjacent doubles and returns whichever end has the smaller |f|.
double refine_root(const std::function<double(double)>& f, RootBracket b) {
  if (b.f_lo == 0.0) return b.lo;
  if (b.f_hi == 0.0) return b.hi;
  while (true) {
    const double mid = 0.5 * (b.lo + b.hi);
    if (mid <= b.lo || mid >= b.hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if (!std::isfinite(fm)) break;
    if ((fm < 0.0) == (b.f_lo < 0.0)) {
      b.lo = mid;
      b.f_lo = fm;
    } else {
      b.hi = mid;
      b.f_hi = fm;
    }
  }
  return std::abs(b.f_lo) <= std::abs(b.f_hi) ? b.lo : b.hi;
}

double max_abs_diff(const Polynomial& a, const Polynomial& b) {
  double out = 0.0;
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const double x = i < a.size() ? a[i] : 0.0;
    const double y = i < b.size() ? b[i] : 0.0;
    out = std::max(out, std::abs(x - y));
  }
  return out;
}

double max_abs(const Polynomial& a) {
  double out = 0.0;
  for (double x : a) out = std::max(out, std::abs(x));
  return out;
}

} // namespace

AnharmonicCouplings AnharmonicConfig::couplings() const {
  const double s = 1.0 - a * a;
  return {s * Omega, s * s * Lambda, s * s * s * Gamma};
}

double AnharmonicConfig::potential(double rho) const {
  const auto c = couplings();
  const double z = rho * rho;
  return z * (c.w + z * (c.lam + z * c.eta));
}

void AnharmonicConfig::check() const {
  std::ostringstream msg;
  if (!(mass > 0.0)) msg << "mass must be positive (got " << mass << ")";
  else if (!(std::abs(a) < 1.0)) msg << "a = " << a << " violates |a| < 1";
  else if (!(Gamma > 0.0)) msg << "Gamma must be positive for a normalizable state (got " << Gamma << ")";
  else if (n < 0) msg << "n must be nonnegative";
  else if (!(angular.m_prime_sq >= 0.0))
    msg << "m'^2 = " << angular.m_prime_sq << " < 0 gives an imaginary centrifugal index";
  else return;
  throw DomainError(msg.str());
}

AnharmonicConfig make_anharmonic_config(const WignerParams& w, const ParitySector& s, int n_phi, double mass,
                                        double Omega, double Lambda, double Gamma, double a, int n,
                                        MPrimeSource source) {
  AnharmonicConfig cfg{mass, Omega, Lambda, Gamma, a, make_angular_input(w, a, s, n_phi, source), n};
  cfg.check();
  return cfg;
}

LambdaCoeffs lambda_coeffs(const AnharmonicConfig& cfg, double energy) {
  const auto c = cfg.couplings();
  const double xi = cfg.angular.xi_sum();
  const double m = cfg.mass;
  const double ep = energy + m;
  return {-(cfg.angular.m_prime_sq + xi * xi) / 4.0, (energy * energy - m * m) / 4.0, -c.w * ep / 2.0,
          -c.lam * ep / 2.0, -c.eta * ep / 2.0};
}

GaugeTriple gauge_params(const LambdaCoeffs& l) {
  if (!(l.l5 < 0.0)) {
    std::ostringstream msg;
    msg << "gauge: l5 = " << l.l5 << " >= 0, i.e. eta (E + m) <= 0; no decaying gauge factor";
    throw GaugeDomainError(msg.str());
  }
  if (l.l1 > 0.0) {
    std::ostringstream msg;
    msg << "gauge: l1 = " << l.l1 << " > 0 makes A imaginary";
    throw DomainError(msg.str());
  }
  GaugeTriple g;
  g.A = std::sqrt(-l.l1);
  g.B = 0.5 * std::sqrt(-l.l5);
  g.D = -l.l4 / (4.0 * g.B);
  return g;
}

double gauge_constant(const LambdaCoeffs& l, const GaugeTriple& g) {
  return l.l3 - 4.0 * g.A * g.B - 4.0 * g.B + g.D * g.D;
}

Sl2Match sl2_match(const AnharmonicConfig& cfg, const GaugeTriple& g, const LambdaCoeffs& l) {
  const int n = cfg.n;
  Sl2Match out;
  auto& k = out.coeffs;
  k.c_0m = 1.0;
  k.c_p = -4.0 * g.B;
  k.c_0 = -2.0 * g.D;
  k.c_m = 0.5 * n + 2.0 * g.A + 1.0;
  k.c = -n * g.D - 2.0 * g.A * g.D - g.D + l.l2;

  out.reconstructed = p_polynomials_of(sl2_operator(k, n));
  out.transformed.p4 = {0.0, 1.0};
  out.transformed.p3 = {2.0 * g.A + 1.0, -2.0 * g.D, -4.0 * g.B};
  out.transformed.p2 = {l.l2 - 2.0 * g.A * g.D - g.D, 4.0 * n * g.B};

  const PPolynomials printed = sl2_p_polynomials(k, n);
  double scale = 1.0;
  for (const auto* p : {&out.transformed.p4, &out.transformed.p3, &out.transformed.p2}) scale = std::max(scale, max_abs(*p));
  out.mismatch = std::max({max_abs_diff(out.reconstructed.p4, out.transformed.p4),
                           max_abs_diff(out.reconstructed.p3, out.transformed.p3),
                           max_abs_diff(out.reconstructed.p2, out.transformed.p2),
                           max_abs_diff(printed.p4, out.reconstructed.p4),
                           max_abs_diff(printed.p3, out.reconstructed.p3),
                           max_abs_diff(printed.p2, out.reconstructed.p2)}) /
                 scale;
  if (out.mismatch > 1e-12) {
    std::ostringstream msg;
    msg << "sl2_match: generator reconstruction differs from the transformed operator by " << out.mismatch;
    throw ConsistencyError(msg.str());
  }
  return out;
}

double energy_constraint(const AnharmonicConfig& cfg, double energy) {
  if (!(energy > -cfg.mass)) return kNaN;
  const auto l = lambda_coeffs(cfg, energy);
  if (!(l.l5 < 0.0) || l.l1 > 0.0) return kNaN;
  const auto g = gauge_params(l);
  return 4.0 * cfg.n * g.B - gauge_constant(l, g);
}

std::vector<double> qes_energy(const AnharmonicConfig& cfg) {
  cfg.check();
  const double m = cfg.mass;
  auto f = [&cfg](double e) { return energy_constraint(cfg, e); };
  // F ~ sqrt(E + m) > 0 just above -m; it turns negative only when the
  // linear term in (E + m) has a negative slope, lam^2 > 4 eta w.
  const double lo = -m + 1e-12 * std::max(1.0, m);
  double hi = -m + std::max(1.0, m);
  int doublings = 0;
  while (!(f(hi) < 0.0) && doublings < 200) {
    hi = -m + 2.0 * (hi + m);
    ++doublings;
  }
  std::vector<double> roots;
  if (f(hi) < 0.0) {
    for (const auto& b : scan_brackets(f, lo, hi, kDefaultPanels)) roots.push_back(refine_root(f, b));
  }
  if (roots.empty()) {
    const auto c = cfg.couplings();
    std::ostringstream msg;
    msg << "QES energy: no sign change of the constraint on (" << lo << ", " << hi << "] after " << doublings
        << " doublings (lam^2 = " << c.lam * c.lam << ", 4 eta w = " << 4.0 * c.eta * c.w
        << "; a root needs lam^2 > 4 eta w)";
    throw NoRootFound(msg.str());
  }
  return roots;
}

double printed_qes_energy(const AnharmonicConfig& cfg) {
  const auto c = cfg.couplings();
  const double m = cfg.mass;
  const double xi = cfg.angular.xi_sum();
  const double mp2 = cfg.angular.m_prime_sq;
  const double n1 = 1.0 + cfg.n;
  const double lam2 = c.lam * c.lam;
  const double den = (lam2 - 4.0 * c.eta * c.w) * (lam2 - 4.0 * c.eta * c.w);
  const double num = -m * lam2 * lam2 +
                     32.0 * c.eta * c.eta * c.eta * (mp2 + 4.0 * n1 * n1 + xi * xi + 4.0 * std::sqrt(mp2 + xi * xi) * n1);
  return num / den + 8.0 * m * c.eta * c.w * (lam2 - 2.0 * c.eta * c.w) / den;
}

std::vector<double> recursion_coeffs(const AnharmonicConfig& cfg, double energy, const GaugeTriple& g, int n_terms) {
  const auto l = lambda_coeffs(cfg, energy);
  const double c = gauge_constant(l, g);
  const double base = l.l2 - 2.0 * g.A * g.D;
  std::vector<double> a;
  if (n_terms <= 0) return a;
  a.push_back(1.0);
  for (int k = 0; k + 1 < n_terms; ++k) {
    const double den = (k + 1.0) * (k + 2.0 * g.A + 1.0);
    double num = -(base - g.D * (2.0 * k + 1.0)) * a[static_cast<std::size_t>(k)];
    if (k > 0) num -= (c - 4.0 * g.B * (k - 1.0)) * a[static_cast<std::size_t>(k - 1)];
    a.push_back(num / den);
  }
  return a;
}

std::vector<double> printed_recursion_coeffs(const AnharmonicConfig& cfg, double energy, const GaugeTriple& g,
                                             int n_terms) {
  const auto l = lambda_coeffs(cfg, energy);
  std::vector<double> a;
  if (n_terms <= 0) return a;
  a.push_back(1.0);
  for (int k = 0; k + 1 < n_terms; ++k) {
    const double den = (k + 1.0) * (2.0 * g.A + 1.0 + k);
    double next = -(-2.0 * g.D * g.A + l.l2 - g.D * (2.0 * k + 1.0)) / den * a[static_cast<std::size_t>(k)];
    if (k > 0) next += -8.0 * g.B * k / den * a[static_cast<std::size_t>(k - 1)];
    a.push_back(next);
  }
  return a;
}

QESSolution solve_qes(const AnharmonicConfig& cfg) {
  QESSolution sol;
  sol.config = cfg;
  sol.energy = qes_energy(cfg).front();
  sol.lambdas = lambda_coeffs(cfg, sol.energy);
  sol.gauge = gauge_params(sol.lambdas);
  sol.coeffs = recursion_coeffs(cfg, sol.energy, sol.gauge, cfg.n + 2);
  sol.truncation_residual = std::abs(sol.coeffs.back());
  sol.sl2_coeffs = sl2_match(cfg, sol.gauge, sol.lambdas).coeffs;

  const auto& l = sol.lambdas;
  const auto& g = sol.gauge;
  const double scale = std::max({std::abs(4.0 * cfg.n * g.B), std::abs(l.l3), std::abs(4.0 * g.A * g.B),
                                 std::abs(4.0 * g.B), g.D * g.D});
  sol.constraint_residual = std::abs(energy_constraint(cfg, sol.energy)) / std::max(scale, 1e-300);
  sol.printed_energy = printed_qes_energy(cfg);

  const auto printed = printed_recursion_coeffs(cfg, sol.energy, sol.gauge, cfg.n + 2);
  std::ostringstream msg;
  msg << "QES n=" << cfg.n << " a=" << cfg.a << ": root E = " << sol.energy << ", printed closed form = "
      << sol.printed_energy << ", |diff| = " << std::abs(sol.printed_energy - sol.energy) << "\n";
  msg << "QES recursion n=" << cfg.n << ": a_" << cfg.n + 1 << " derived = " << sol.coeffs.back()
      << ", printed recursion = " << printed.back();
  log_message(msg.str());
  return sol;
}

std::string to_string(FreeParameter p) {
  switch (p) {
  case FreeParameter::Omega: return "Omega";
  case FreeParameter::Lambda: return "Lambda";
  case FreeParameter::alpha2: return "alpha2";
  case FreeParameter::m_prime_sq: return "m_prime_sq";
  }
  return "?";
}

FreeParameter free_parameter_from_string(const std::string& s) {
  for (auto p : {FreeParameter::Omega, FreeParameter::Lambda, FreeParameter::alpha2, FreeParameter::m_prime_sq}) {
    if (to_string(p) == s) return p;
  }
  throw DomainError("unknown free parameter '" + s + "' (expected Omega, Lambda, alpha2 or m_prime_sq)");
}

double free_parameter_value(const AnharmonicConfig& cfg, FreeParameter p) {
  switch (p) {
  case FreeParameter::Omega: return cfg.Omega;
  case FreeParameter::Lambda: return cfg.Lambda;
  case FreeParameter::alpha2: return cfg.angular.wigner.alpha2;
  case FreeParameter::m_prime_sq: return cfg.angular.m_prime_sq;
  }
  return kNaN;
}

AnharmonicConfig with_free_parameter(const AnharmonicConfig& cfg, FreeParameter p, double value) {
  AnharmonicConfig out = cfg;
  switch (p) {
  case FreeParameter::Omega: out.Omega = value; break;
  case FreeParameter::Lambda: out.Lambda = value; break;
  case FreeParameter::m_prime_sq: out.angular.m_prime_sq = value; break;
  case FreeParameter::alpha2: {
    WignerParams w = cfg.angular.wigner;
    w.alpha2 = value;
    out.angular = make_angular_input(w, cfg.a, cfg.angular.sector, cfg.angular.n_phi);
    break;
  }
  }
  return out;
}

namespace {

// a_{n+1} at the QES energy of cfg with the free parameter set to `value`;
// NaN where no QES energy or angular solution exists.
double truncation_coefficient(const AnharmonicConfig& base, FreeParameter which, double value) {
  try {
    const AnharmonicConfig cfg = with_free_parameter(base, which, value);
    cfg.check();
    const double e = qes_energy(cfg).front();
    const auto g = gauge_params(lambda_coeffs(cfg, e));
    return recursion_coeffs(cfg, e, g, cfg.n + 2).back();
  } catch (const std::exception&) {
    return kNaN;
  }
}

} // namespace

CalibrationResult calibrate_truncation(const AnharmonicConfig& base, FreeParameter which) {
  base.check();
  CalibrationResult out;
  const double p0 = free_parameter_value(base, which);
  auto f = [&](double v) { return truncation_coefficient(base, which, v); };
  auto finish = [&](double v) {
    out.parameter = v;
    out.config = with_free_parameter(base, which, v);
    out.solution = solve_qes(out.config);
    std::ostringstream msg;
    msg << "calibrated " << to_string(which) << " = " << v << ", |a_" << base.n + 1
        << "| = " << out.solution.truncation_residual << ", E = " << out.solution.energy;
    out.trace.push_back(msg.str());
    if (!(out.solution.truncation_residual <= kTruncationTol)) {
      std::ostringstream err;
      err << "calibrate_truncation: residual " << out.solution.truncation_residual << " above " << kTruncationTol;
      for (const auto& t : out.trace) err << "\n  " << t;
      throw CalibrationFailed(err.str());
    }
    return out;
  };

  const double f0 = f(p0);
  {
    std::ostringstream msg;
    msg << to_string(which) << " = " << p0 << ": a_" << base.n + 1 << " = " << f0;
    out.trace.push_back(msg.str());
  }
  if (std::isfinite(f0) && std::abs(f0) <= kTruncationTol) return finish(p0);

  const bool nonnegative = which == FreeParameter::m_prime_sq;
  double half_width = 0.25 * std::max(1.0, std::abs(p0));
  for (int window = 0; window < 16; ++window, half_width *= 2.0) {
    const double lo = nonnegative ? std::max(0.0, p0 - half_width) : p0 - half_width;
    const double hi = p0 + half_width;
    const auto brackets = scan_brackets(f, lo, hi, kDefaultPanels);
    std::ostringstream msg;
    msg << "window [" << lo << ", " << hi << "]: " << brackets.size() << " sign change(s)";
    out.trace.push_back(msg.str());
    if (brackets.empty()) continue;
    const RootBracket* best = nullptr;
    double best_dist = std::numeric_limits<double>::infinity();
    for (const auto& b : brackets) {
      const double d = std::abs(0.5 * (b.lo + b.hi) - p0);
      if (d < best_dist) {
        best_dist = d;
        best = &b;
      }
    }
    return finish(refine_root(f, *best));
  }
  std::ostringstream err;
  err << "calibrate_truncation: no root of a_" << base.n + 1 << " in " << to_string(which);
  for (const auto& t : out.trace) err << "\n  " << t;
  throw CalibrationFailed(err.str());
}

WaveSample qes_wave_sample(const QESSolution& sol, double rho) {
  const double xi = sol.config.angular.xi_sum();
  const auto& g = sol.gauge;
  const double p = 2.0 * g.A - xi;
  const int n = sol.config.n;
  const double r2 = rho * rho;

  // psi = exp(S) P with S = p ln(rho) - B rho^4 - D rho^2, P = sum a_k rho^{2k}.
  double poly = 0.0, dpoly = 0.0, ddpoly = 0.0;
  for (int k = n; k >= 0; --k) {
    const double ak = sol.coeffs[static_cast<std::size_t>(k)];
    ddpoly = ddpoly * r2 + 2.0 * k * (2.0 * k - 1.0) * ak;
    dpoly = dpoly * r2 + 2.0 * k * ak;
    poly = poly * r2 + ak;
  }
  // dpoly and ddpoly were accumulated as polynomials in rho^2 missing the
  // factors rho^{-1} and rho^{-2}.
  const double p1 = dpoly / rho;
  const double p2 = ddpoly / r2;

  const double ds = p / rho - 4.0 * g.B * rho * r2 - 2.0 * g.D * rho;
  const double dds = -p / r2 - 12.0 * g.B * r2 - 2.0 * g.D;

  WaveSample out;
  out.log_scale = p * std::log(rho) - g.B * r2 * r2 - g.D * r2;
  out.value = poly;
  out.d1 = ds * poly + p1;
  out.d2 = (dds + ds * ds) * poly + 2.0 * ds * p1 + p2;
  return out;
}

double qes_wavefunction(const QESSolution& sol, double rho) {
  if (rho < 0.0) throw DomainError("qes_wavefunction: rho must be nonnegative");
  const double xi = sol.config.angular.xi_sum();
  const auto& g = sol.gauge;
  const double z = rho * rho;
  const double exponent = g.A - 0.5 * xi;
  const double power = (z == 0.0) ? (exponent == 0.0 ? 1.0 : (exponent > 0.0 ? 0.0 : kNaN)) : std::pow(z, exponent);
  double poly = 0.0;
  for (int k = sol.config.n; k >= 0; --k) poly = poly * z + sol.coeffs[static_cast<std::size_t>(k)];
  return power * std::exp(-g.B * z * z - g.D * z) * poly;
}

RadialProblem anharmonic_radial_problem(const AnharmonicConfig& cfg, double seed, int n_levels) {
  cfg.check();
  RadialProblem p;
  p.mass = cfg.mass;
  p.xi_sum = cfg.angular.xi_sum();
  p.m_prime_sq = cfg.angular.m_prime_sq;
  p.potential = [cfg](double rho) { return cfg.potential(rho); };
  p.seeds.assign(static_cast<std::size_t>(std::max(n_levels, 0)), seed);
  std::ostringstream label;
  label << "anharmonic a=" << cfg.a << " m'^2=" << cfg.angular.m_prime_sq;
  p.label = label.str();
  return p;
}

QesOracleCheck qes_oracle_check(const QESSolution& sol, const GridSpec& grid, int candidates) {
  const auto& cfg = sol.config;
  const double e = sol.energy;
  RadialProblem p = anharmonic_radial_problem(cfg, e, candidates);
  RadialOracleOptions opt;
  opt.r_max = (grid.x_max > grid.x_min) ? grid.x_max : radial_domain_radius(p, e, opt.domain_factor);
  GridSpec g = grid;
  g.x_max = *opt.r_max;

  const double target = e * e - cfg.mass * cfg.mass;
  const auto pairs = radial_operator_eigenpairs(p, g, e, 0, candidates - 1, false);
  QesOracleCheck out;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < pairs.values.size(); ++k) {
    const double d = std::abs(pairs.values[k] - target);
    if (d < best) {
      best = d;
      out.level = static_cast<int>(k);
    }
  }

  const RadialLevel lvl = radial_level(p, g, out.level, opt);
  out.oracle_energy = lvl.energy;
  out.convergence_estimate = lvl.convergence_estimate;
  out.relative_difference = std::abs(lvl.energy - e) / std::max(std::abs(e), cfg.mass);
  const double c = 1.0 + 2.0 * p.xi_sum;
  out.overlap = weighted_overlap(
      lvl.grid, [c](double r) { return std::pow(r, c); }, lvl.eigenvector,
      [&sol](double r) { return qes_wavefunction(sol, r); });

  std::ostringstream msg;
  msg << "QES oracle check: level " << out.level << ", E_oracle = " << out.oracle_energy << ", E_qes = " << e
      << ", rel diff = " << out.relative_difference << ", overlap = " << out.overlap;
  log_message(msg.str());
  return out;
}

} // namespace dkg

#include "dkg/numerical_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "dkg/errors.hpp"
#include "dkg/special_functions.hpp"

namespace dkg {

namespace {

double richardson(double coarse, double fine) { return fine + (fine - coarse) / 3.0; }

std::vector<double> to_function_values(const GridSpec& g, const std::function<double(double)>& weight,
                                       const std::vector<double>& chi) {
  const double inv_sqrt_h = 1.0 / std::sqrt(g.h());
  std::vector<double> out(chi.size());
  for (std::size_t i = 0; i < chi.size(); ++i) {
    out[i] = chi[i] * inv_sqrt_h / std::sqrt(weight(g.node(static_cast<int>(i))));
  }
  return out;
}

} // namespace

GridSpec default_angular_grid(int n_points) {
  return GridSpec{0.0, std::numbers::pi / 2.0, n_points, Boundary::neumann, Boundary::neumann};
}

GridSpec angular_grid_for_sector(GridSpec g, const ParitySector& s) {
  g.left = (s.r2 > 0) ? Boundary::neumann : Boundary::dirichlet;
  g.right = (s.r1 > 0) ? Boundary::neumann : Boundary::dirichlet;
  return g;
}

double angular_weight(const DerivedParams& d, double phi) {
  return std::pow(std::sin(phi), 2.0 * d.xi2) * std::pow(std::cos(phi), 2.0 * d.xi1);
}

SpectrumResult angular_spectrum(const DerivedParams& d, const ParitySector& s, const GridSpec& g_in, int n_levels) {
  if (n_levels < 1) throw std::invalid_argument("angular_spectrum: need n_levels >= 1");
  const GridSpec coarse = angular_grid_for_sector(g_in, s);
  const GridSpec fine = coarse.refined(2);

  const double c1 = d.mu1 + d.nu1 * s.r1;
  const double c2 = d.mu2 + d.nu2 * s.r2;
  auto weight = [&d](double phi) { return angular_weight(d, phi); };
  auto potential = [c1, c2](double phi) {
    const double c = std::cos(phi);
    const double sn = std::sin(phi);
    return -(c1 / (c * c) + c2 / (sn * sn));
  };

  const auto lo = tridiagonal_eigenpairs(assemble_sturm_liouville(coarse, weight, potential), 0, n_levels - 1, false);
  const auto hi = tridiagonal_eigenpairs(assemble_sturm_liouville(fine, weight, potential), 0, n_levels - 1, true);

  SpectrumResult out;
  out.grid = fine;
  for (int k = 0; k < n_levels; ++k) {
    const double value = richardson(lo.values[k], hi.values[k]);
    const double estimate = std::abs(hi.values[k] - lo.values[k]) / 3.0 / std::max(1.0, std::abs(value));
    if (!(estimate < kConvergenceThreshold)) {
      std::ostringstream msg;
      msg << "angular level " << k << " in sector " << s.label() << ": Richardson estimate " << estimate
          << " exceeds " << kConvergenceThreshold << " (coarse " << lo.values[k] << ", fine " << hi.values[k] << ")";
      throw ConvergenceError(msg.str());
    }
    out.eigenvalues.push_back(value);
    out.convergence_estimate.push_back(estimate);
    out.eigenvectors.push_back(to_function_values(fine, weight, hi.vectors[k]));
  }
  return out;
}

GridSpec default_radial_grid(int n_points) {
  return GridSpec{0.0, 0.0, n_points, Boundary::neumann, Boundary::dirichlet};
}

double radial_domain_radius(const RadialProblem& p, double energy, double factor) {
  const double m = p.mass;
  const double target = factor * std::max(std::abs(energy * energy - m * m), 1e-3 * m * m);
  const double coupling = 2.0 * (energy + m);
  if (!(coupling > 0.0)) throw DomainError("radial_domain_radius: need E + m > 0");
  auto enough = [&](double r) { return coupling * p.potential(r) >= target; };
  double r = 1.0;
  while (!enough(r)) {
    r *= 2.0;
    if (r > 1e8) throw DomainError("radial_domain_radius: potential never exceeds the target eigenvalue");
  }
  double lo = 0.0;
  double hi = r;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (enough(mid) ? hi : lo) = mid;
  }
  return hi;
}

SymmetricTridiagonal radial_operator_matrix(const RadialProblem& p, const GridSpec& g, double energy) {
  const double c = 1.0 + 2.0 * p.xi_sum;
  const double coupling = 2.0 * (energy + p.mass);
  auto weight = [c](double r) { return std::pow(r, c); };
  auto potential = [&](double r) { return p.m_prime_sq / (r * r) + coupling * p.potential(r); };
  return assemble_sturm_liouville(g, weight, potential);
}

Eigenpairs radial_operator_eigenpairs(const RadialProblem& p, const GridSpec& g, double energy, int first, int last,
                                      bool want_vectors) {
  return tridiagonal_eigenpairs(radial_operator_matrix(p, g, energy), first, last, want_vectors);
}

namespace {

struct NonlinearSolve {
  double energy;
  int iterations;
};

NonlinearSolve solve_level_on_grid(const RadialProblem& p, const GridSpec& g, int level, double seed,
                                   const RadialOracleOptions& opt) {
  const double m = p.mass;
  const double floor = -m + 1e-12 * std::max(1.0, m);
  auto g_of = [&](double e) {
    const double mu = radial_operator_eigenpairs(p, g, e, level, level, false).values[0];
    return mu - (e * e - m * m);
  };

  RootBracket b;
  double e0 = std::max(seed, floor);
  double g0 = g_of(e0);
  if (g0 > 0.0) {
    double step = std::max({0.1 * (e0 + m), 0.1 * m, 1e-3});
    b.lo = e0;
    b.f_lo = g0;
    double e1 = e0 + step;
    double g1 = g_of(e1);
    for (int i = 0; g1 > 0.0; ++i) {
      if (i > 200) throw NoRootFound("radial oracle: no upper energy bracket for level " + std::to_string(level));
      b.lo = e1;
      b.f_lo = g1;
      step *= 2.0;
      e1 += step;
      g1 = g_of(e1);
    }
    b.hi = e1;
    b.f_hi = g1;
  } else {
    b.hi = e0;
    b.f_hi = g0;
    double e1 = e0;
    double g1 = g0;
    for (int i = 0; g1 < 0.0; ++i) {
      if (i > 200) throw NoRootFound("radial oracle: no lower energy bracket for level " + std::to_string(level));
      b.hi = e1;
      b.f_hi = g1;
      e1 = -m + 0.5 * (e1 + m);
      g1 = g_of(e1);
    }
    b.lo = e1;
    b.f_lo = g1;
  }

  const auto solve = secant_in_bracket(g_of, b, opt.energy_tol, opt.max_iterations);
  if (!solve.converged) {
    std::ostringstream msg;
    msg << "radial oracle level " << level << " (" << p.label << "): secant did not converge in "
        << opt.max_iterations << " iterations; bracket [" << b.lo << ", " << b.hi << "], last iterate "
        << solve.root;
    throw NonlinearIterationDiverged(msg.str());
  }
  return {solve.root, solve.iterations};
}

double default_seed(const RadialProblem& p, int level, const GridSpec& g_in, const RadialOracleOptions& opt) {
  // Fixed-point start: E^2 = m^2 + mu_k(E) evaluated once at E = m.
  const double m = p.mass;
  GridSpec g = g_in;
  g.x_max = opt.r_max.value_or(radial_domain_radius(p, m + std::max(1.0, m), opt.domain_factor));
  const double mu = radial_operator_eigenpairs(p, g, m, level, level, false).values[0];
  return std::sqrt(m * m + std::max(mu, 0.0));
}

} // namespace

RadialLevel radial_level(const RadialProblem& p, const GridSpec& g_in, int level, const RadialOracleOptions& opt) {
  if (level < 0) throw std::invalid_argument("radial_level: negative level");
  if (p.m_prime_sq < 0.0) {
    std::ostringstream msg;
    msg << "radial oracle: m'^2 = " << p.m_prime_sq << " < 0 gives an imaginary centrifugal index";
    throw DomainError(msg.str());
  }
  const bool auto_radius = !(g_in.x_max > g_in.x_min) && !opt.r_max;
  double seed = (static_cast<std::size_t>(level) < p.seeds.size()) ? p.seeds[static_cast<std::size_t>(level)]
                                                                     : default_seed(p, level, g_in, opt);
  GridSpec coarse = g_in;
  if (opt.r_max) coarse.x_max = *opt.r_max;

  NonlinearSolve lo{};
  for (int pass = 0; pass < 4; ++pass) {
    if (auto_radius) {
      const double r = radial_domain_radius(p, seed, opt.domain_factor);
      if (pass > 0 && r <= coarse.x_max) break;
      coarse.x_max = std::max(r, coarse.x_max);
    } else if (pass > 0) {
      break;
    }
    lo = solve_level_on_grid(p, coarse, level, seed, opt);
    seed = lo.energy;
  }
  const GridSpec fine = coarse.refined(2);
  const NonlinearSolve hi = solve_level_on_grid(p, fine, level, lo.energy, opt);

  RadialLevel out;
  out.energy = richardson(lo.energy, hi.energy);
  out.convergence_estimate = std::abs(hi.energy - lo.energy) / 3.0 / std::max(std::abs(out.energy), p.mass);
  out.iterations = lo.iterations + hi.iterations;
  out.grid = fine;
  if (!(out.convergence_estimate < kConvergenceThreshold)) {
    std::ostringstream msg;
    msg << "radial level " << level << " (" << p.label << "): Richardson estimate " << out.convergence_estimate
        << " exceeds " << kConvergenceThreshold << " (coarse " << lo.energy << ", fine " << hi.energy << ")";
    throw ConvergenceError(msg.str());
  }
  const double c = 1.0 + 2.0 * p.xi_sum;
  auto weight = [c](double r) { return std::pow(r, c); };
  const auto pair = radial_operator_eigenpairs(p, fine, hi.energy, level, level, true);
  out.eigenvector = to_function_values(fine, weight, pair.vectors[0]);
  return out;
}

SpectrumResult radial_spectrum(const RadialProblem& p, const GridSpec& g, int n_levels,
                               const RadialOracleOptions& opt) {
  if (n_levels < 1) throw std::invalid_argument("radial_spectrum: need n_levels >= 1");
  // The highest level needs the widest domain; the others reuse its radius
  // so that all eigenvectors share one grid.
  std::vector<RadialLevel> levels(static_cast<std::size_t>(n_levels));
  levels.back() = radial_level(p, g, n_levels - 1, opt);
  RadialOracleOptions fixed = opt;
  fixed.r_max = levels.back().grid.x_max;
  for (int k = 0; k + 1 < n_levels; ++k) levels[static_cast<std::size_t>(k)] = radial_level(p, g, k, fixed);

  SpectrumResult out;
  out.grid = levels.back().grid;
  for (auto& lvl : levels) {
    out.eigenvalues.push_back(lvl.energy);
    out.convergence_estimate.push_back(lvl.convergence_estimate);
    out.eigenvectors.push_back(std::move(lvl.eigenvector));
  }
  return out;
}

double weighted_overlap(const GridSpec& g, const std::function<double(double)>& weight, const std::vector<double>& u,
                        const std::function<double(double)>& f) {
  double uf = 0.0;
  double uu = 0.0;
  double ff = 0.0;
  for (int i = 0; i < g.n_points; ++i) {
    const double x = g.node(i);
    const double w = weight(x);
    const double fx = f(x);
    uf += w * u[static_cast<std::size_t>(i)] * fx;
    uu += w * u[static_cast<std::size_t>(i)] * u[static_cast<std::size_t>(i)];
    ff += w * fx * fx;
  }
  if (uu == 0.0 || ff == 0.0) return 0.0;
  return std::abs(uf) / std::sqrt(uu * ff);
}

} // namespace dkg

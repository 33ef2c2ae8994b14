#include "dkg/cli/runner.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "dkg/anharmonic_qes.hpp"
#include "dkg/azimuthal.hpp"
#include "dkg/errors.hpp"
#include "dkg/harmonic_radial.hpp"
#include "dkg/log.hpp"
#include "dkg/numerical_oracle.hpp"
#include "dkg/sl2.hpp"
#include "dkg/special_functions.hpp"

namespace dkg::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Cell num(double x) { return std::isfinite(x) ? Cell{x} : Cell{}; }
Cell num(const std::optional<double>& x) { return x ? num(*x) : Cell{}; }
Cell integer(long long x) { return Cell{x}; }

std::string quote_csv(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string cell_text(const Cell& c) {
  struct Visitor {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(double x) const { return format_number(x); }
    std::string operator()(long long x) const { return std::to_string(x); }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(const std::string& s) const { return s; }
  };
  return std::visit(Visitor{}, c);
}

nlohmann::ordered_json cell_json(const Cell& c) {
  struct Visitor {
    nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
    nlohmann::ordered_json operator()(double x) const {
      return std::isfinite(x) ? nlohmann::ordered_json(x) : nlohmann::ordered_json(nullptr);
    }
    nlohmann::ordered_json operator()(long long x) const { return x; }
    nlohmann::ordered_json operator()(bool b) const { return b; }
    nlohmann::ordered_json operator()(const std::string& s) const { return s; }
  };
  return std::visit(Visitor{}, c);
}

std::string sector_label(const ParitySector& s) { return s.label(); }

HarmonicConfig harmonic_config(const RunConfig& c, const ParitySector& s, int n) {
  return make_harmonic_config(c.wigner, s, c.n_phi, c.mass, c.omega, c.a, n);
}

AnharmonicConfig anharmonic_config(const RunConfig& c, const ParitySector& s, int n) {
  return make_anharmonic_config(c.wigner, s, c.n_phi, c.mass, c.Omega, c.Lambda, c.Gamma, c.a, n);
}

struct QesRun {
  AnharmonicConfig config;
  QESSolution solution;
};

QesRun run_qes(const RunConfig& c, const ParitySector& s, int n) {
  QesRun out{anharmonic_config(c, s, n), {}};
  if (c.calibrate.empty()) {
    out.solution = solve_qes(out.config);
  } else {
    auto cal = calibrate_truncation(out.config, free_parameter_from_string(c.calibrate));
    for (const auto& t : cal.trace) log_message(t);
    out.config = cal.config;
    out.solution = cal.solution;
  }
  return out;
}

// Normalizes psi on [0, inf) in the measure rho^{1 + 2 xi}; the integration
// radius grows until the density is negligible.
double profile_norm(const std::function<double(double)>& psi, double xi_sum, double rho_max) {
  const double c = 1.0 + 2.0 * xi_sum;
  auto density = [&](double r) { return r == 0.0 ? 0.0 : psi(r) * psi(r) * std::pow(r, c); };
  double peak = 0.0;
  for (int i = 1; i <= 200; ++i) peak = std::max(peak, density(rho_max * i / 200.0));
  double r = rho_max;
  for (int i = 0; i < 40 && density(r) > 1e-32 * peak; ++i) r *= 1.5;
  const double norm = std::sqrt(trapezoid(density, 0.0, r, 20001));
  return norm > 0.0 ? norm : 1.0;
}

std::vector<double> profile_grid(const RunConfig& c) {
  std::vector<double> rho;
  for (int i = 0; i < c.profile_points; ++i) rho.push_back(c.rho_max * i / (c.profile_points - 1));
  return rho;
}

// ---- params ----

Table params_table(const RunConfig& c) {
  Table t;
  t.columns = {"r1", "r2", "xi1", "xi2", "mu1", "mu2", "nu1", "nu2", "k1", "k2", "m_prime_sq", "valid", "issues"};
  const auto d = derive_params(c.wigner);
  for (const auto& s : c.sector_list()) {
    const auto rep = validate(c.wigner, s, c.n_phi);
    const auto rad = k_radicands(d, s);
    std::string issues;
    for (const auto& chk : rep.checks) {
      if (!chk.ok) issues += (issues.empty() ? "" : "; ") + chk.name + ": " + chk.detail;
    }
    const bool k_real = rad[0] >= 0.0 && rad[1] >= 0.0;
    t.add({integer(s.r1), integer(s.r2), num(d.xi1), num(d.xi2), num(d.mu1), num(d.mu2), num(d.nu1), num(d.nu2),
           rad[0] >= 0.0 ? num(std::sqrt(rad[0])) : Cell{}, rad[1] >= 0.0 ? num(std::sqrt(rad[1])) : Cell{},
           k_real ? num(m_prime_squared(d, s, c.n_phi)) : Cell{}, rep.ok(), issues});
  }
  return t;
}

// ---- azimuthal ----

Table azimuthal_table(const RunConfig& c) {
  Table t;
  t.columns = {"n_phi", "r1", "r2", "k1", "k2", "m_prime_sq_closed", "m_prime_sq_oracle", "discrepancy"};
  const auto d = derive_params(c.wigner);
  std::optional<GridSpec> grid;
  if (c.oracle) grid = default_angular_grid(c.angular_points);
  for (const auto& s : c.sector_list()) {
    const auto sol = solve_azimuthal(d, s, c.n_phi, MPrimeSource::closed_form, grid);
    t.add({integer(c.n_phi), integer(s.r1), integer(s.r2), num(sol.k1), num(sol.k2), num(sol.closed_form_m_prime_sq),
           num(sol.oracle_m_prime_sq), num(sol.discrepancy)});
  }
  return t;
}

// ---- harmonic ----

std::vector<std::string> harmonic_columns() {
  return {"a", "n", "n_phi", "r1", "r2", "m_prime_sq", "E_closed", "E_oracle", "discrepancy"};
}

void harmonic_rows(const RunConfig& c, Table& t, const std::vector<Cell>& lead) {
  for (const auto& s : c.sector_list()) {
    for (int n : c.n) {
      const auto hc = harmonic_config(c, s, n);
      const auto level = solve_levels(hc);
      double e_oracle = kNaN;
      if (c.oracle) {
        const auto p = harmonic_radial_problem(hc, n + 1);
        e_oracle = radial_level(p, default_radial_grid(c.radial_points), n).energy;
      }
      std::vector<Cell> row = lead;
      for (Cell x : {num(c.a), integer(n), integer(c.n_phi), integer(s.r1), integer(s.r2),
                     num(hc.angular.m_prime_sq), num(level.energy()), num(e_oracle),
                     num(std::abs(level.energy() - e_oracle))}) {
        row.push_back(std::move(x));
      }
      t.add(std::move(row));
    }
  }
}

Table harmonic_profile_table(const RunConfig& c) {
  Table t;
  t.columns = {"rho"};
  std::vector<std::function<double(double)>> curves;
  for (const auto& s : c.sector_list()) {
    for (int n : c.n) {
      const auto hc = harmonic_config(c, s, n);
      const auto level = solve_levels(hc);
      auto psi = [hc, level](double r) { return harmonic_wavefunction(level, hc, r); };
      const double norm = profile_norm(psi, hc.angular.xi_sum(), c.rho_max);
      curves.push_back([psi, norm](double r) { return psi(r) / norm; });
      t.columns.push_back("psi_" + sector_label(s) + "_n" + std::to_string(n));
    }
  }
  for (double r : profile_grid(c)) {
    std::vector<Cell> row{num(r)};
    for (const auto& f : curves) row.push_back(num(f(r)));
    t.add(std::move(row));
  }
  return t;
}

// ---- anharmonic ----

std::vector<std::string> anharmonic_columns() {
  return {"a",        "n",    "n_phi", "r1", "r2", "m_prime_sq",   "Omega",      "Lambda",          "Gamma",
          "alpha2",   "E_qes", "E_printed", "A",  "B",  "D",       "coefficients", "truncation_residual",
          "E_oracle", "discrepancy", "overlap"};
}

std::string join_coeffs(const std::vector<double>& a) {
  std::string out;
  for (double x : a) out += (out.empty() ? "" : ";") + format_number(x);
  return out;
}

void anharmonic_rows(const RunConfig& c, Table& t, const std::vector<Cell>& lead) {
  for (const auto& s : c.sector_list()) {
    for (int n : c.n) {
      const auto run = run_qes(c, s, n);
      const auto& sol = run.solution;
      const auto& ac = run.config;
      std::optional<QesOracleCheck> check;
      if (c.oracle) check = qes_oracle_check(sol, default_radial_grid(c.radial_points));
      std::vector<Cell> row = lead;
      for (Cell x : {num(c.a), integer(n), integer(c.n_phi), integer(s.r1), integer(s.r2), num(ac.angular.m_prime_sq),
                     num(ac.Omega), num(ac.Lambda), num(ac.Gamma), num(ac.angular.wigner.alpha2), num(sol.energy),
                     num(sol.printed_energy), num(sol.gauge.A), num(sol.gauge.B), num(sol.gauge.D),
                     Cell{join_coeffs(sol.coeffs)}, num(sol.truncation_residual),
                     check ? num(check->oracle_energy) : Cell{},
                     check ? num(std::abs(check->oracle_energy - sol.energy)) : Cell{},
                     check ? num(check->overlap) : Cell{}}) {
        row.push_back(std::move(x));
      }
      t.add(std::move(row));
    }
  }
}

Table anharmonic_profile_table(const RunConfig& c) {
  Table t;
  t.columns = {"rho"};
  std::vector<std::function<double(double)>> curves;
  for (const auto& s : c.sector_list()) {
    for (int n : c.n) {
      const auto sol = run_qes(c, s, n).solution;
      auto psi = [sol](double r) { return qes_wavefunction(sol, r); };
      const double norm = profile_norm(psi, sol.config.angular.xi_sum(), c.rho_max);
      curves.push_back([psi, norm](double r) { return psi(r) / norm; });
      t.columns.push_back("psi_" + sector_label(s) + "_n" + std::to_string(n));
    }
  }
  for (double r : profile_grid(c)) {
    std::vector<Cell> row{num(r)};
    for (const auto& f : curves) row.push_back(num(f(r)));
    t.add(std::move(row));
  }
  return t;
}

// ---- sweep ----

Table sweep_table(const RunConfig& c) {
  Table t;
  const auto& sw = *c.sweep;
  const bool extra = sw.variable != "a";
  if (extra) t.columns.push_back(sw.variable);
  for (const auto& col : c.target == Target::harmonic ? harmonic_columns() : anharmonic_columns()) {
    t.columns.push_back(col);
  }
  for (double v : sw.points()) {
    RunConfig pc = with_variable(c, sw.variable, v);
    pc.validate();
    std::vector<Cell> lead;
    if (extra) lead.push_back(num(v));
    if (c.target == Target::harmonic) harmonic_rows(pc, t, lead);
    else anharmonic_rows(pc, t, lead);
  }
  return t;
}

// ---- verify ----

struct VerifyTable {
  Table table;
  bool trusted_failure = false;

  VerifyTable() { table.columns = {"check", "kind", "value", "tolerance", "status", "note"}; }

  void trusted(const std::string& name, double value, double tol, const std::string& note = "") {
    const bool ok = std::isfinite(value) && value <= tol;
    trusted_failure = trusted_failure || !ok;
    table.add({name, std::string("trusted"), num(value), num(tol), std::string(ok ? "pass" : "FAIL"), note});
  }
  void trusted_error(const std::string& name, const std::string& note) {
    trusted_failure = true;
    table.add({name, std::string("trusted"), Cell{}, Cell{}, std::string("FAIL"), note});
  }
  void logged(const std::string& name, double value, const std::string& note = "") {
    table.add({name, std::string("logged"), num(value), Cell{}, std::string("logged"), note});
  }
};

double max_monomial_residual(const DiffOp& lhs, const DiffOp& rhs) {
  double worst = 0.0;
  for (int k = 0; k <= 12; ++k) {
    Polynomial mono(static_cast<std::size_t>(k + 1), 0.0);
    mono.back() = 1.0;
    const auto a = lhs.apply(mono);
    const auto b = rhs.apply(mono);
    for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
      const double x = i < a.size() ? a[i] : 0.0;
      const double y = i < b.size() ? b[i] : 0.0;
      worst = std::max(worst, std::abs(x - y));
    }
  }
  return worst;
}

void verify_fixed_checks(VerifyTable& v, const RunConfig& c) {
  const DerivedParams zero{};
  const auto pp = ParitySector::make(1, 1);
  for (int n_phi = 0; n_phi <= 5; ++n_phi) {
    const double expected = 4.0 * (n_phi + 1) * (n_phi + 1);
    v.trusted("standard-limit m'^2 n_phi=" + std::to_string(n_phi), std::abs(m_prime_squared(zero, pp, n_phi) - expected),
              0.0);
  }
  const auto spec = angular_spectrum(zero, pp, default_angular_grid(c.angular_points), 4);
  const double expected[] = {0.0, 4.0, 16.0, 36.0};
  for (int k = 0; k < 4; ++k) {
    const double err = std::abs(spec.eigenvalues[static_cast<std::size_t>(k)] - expected[k]) / std::max(1.0, expected[k]);
    v.trusted("standard-limit angular oracle level " + std::to_string(k), err, 1e-4);
  }
  for (int n = 0; n <= 4; ++n) {
    const auto jp = j_plus(n), j0 = j_zero(n), jm = j_minus();
    const double r = std::max({max_monomial_residual(commutator(jp, jm), j0.scaled(-2.0)),
                               max_monomial_residual(commutator(jm, j0), jm),
                               max_monomial_residual(commutator(jp, j0), jp.scaled(-1.0))});
    v.trusted("sl2 commutators n=" + std::to_string(n), r, 1e-12);
  }
}

void verify_config_checks(VerifyTable& v, const RunConfig& c) {
  for (const auto& s : c.sector_list()) {
    const std::string tag = " [" + s.label() + "]";
    try {
      const auto in = make_angular_input(c.wigner, c.a, s, c.n_phi);
      const auto sol = solve_azimuthal(in.derived, s, c.n_phi, MPrimeSource::closed_form,
                                       default_angular_grid(c.angular_points));
      v.logged("azimuthal closed form vs oracle" + tag, sol.discrepancy.value_or(kNaN),
               "closed " + format_number(sol.closed_form_m_prime_sq) + ", oracle " +
                   format_number(sol.oracle_m_prime_sq.value_or(kNaN)));
    } catch (const std::exception& e) {
      v.logged("azimuthal closed form vs oracle" + tag, kNaN, e.what());
    }

    for (int n : c.n) {
      const std::string ntag = " n=" + std::to_string(n) + tag;
      if (c.target == Target::harmonic) {
        try {
          const auto hc = harmonic_config(c, s, n);
          const auto level = solve_levels(hc);
          const auto p = harmonic_radial_problem(hc, n + 1);
          const auto lvl = radial_level(p, default_radial_grid(c.radial_points), n);
          v.trusted("harmonic root vs oracle" + ntag,
                    std::abs(level.energy() - lvl.energy) / std::max(std::abs(lvl.energy), hc.mass), 1e-3,
                    "E " + format_number(level.energy()) + ", oracle " + format_number(lvl.energy));
          v.logged("harmonic printed closed form vs root" + ntag, level.printed_discrepancy,
                   "printed " + format_number(level.printed_closed_form));
        } catch (const std::exception& e) {
          v.trusted_error("harmonic root vs oracle" + ntag, e.what());
        }
        continue;
      }
      try {
        const auto run = run_qes(c, s, n);
        const auto& sol = run.solution;
        v.trusted("QES truncation |a_{n+1}|" + ntag, sol.truncation_residual, kTruncationTol);
        v.trusted("QES energy constraint" + ntag, sol.constraint_residual, 1e-8);
        v.trusted("sl2 reconstruction" + ntag, sl2_match(sol.config, sol.gauge, sol.lambdas).mismatch, 1e-12);
        double worst = 0.0;
        const auto& ac = sol.config;
        for (int i = 0; i < 1000; ++i) {
          const double r = 0.05 + (8.0 - 0.05) * i / 999.0;
          worst = std::max(worst, radial_residual(qes_wave_sample(sol, r), r, sol.energy, ac.mass, ac.angular.xi_sum(),
                                                  ac.angular.m_prime_sq, ac.potential(r)));
        }
        v.trusted("QES ODE residual" + ntag, worst, 1e-6);
        const auto check = qes_oracle_check(sol, default_radial_grid(c.radial_points));
        v.trusted("QES energy vs oracle" + ntag, check.relative_difference, 1e-3,
                  "E " + format_number(sol.energy) + ", oracle " + format_number(check.oracle_energy) + " (level " +
                      std::to_string(check.level) + ")");
        v.trusted("QES eigenvector 1 - overlap" + ntag, 1.0 - check.overlap, 1e-3);
        v.logged("QES printed closed form vs root" + ntag, std::abs(sol.printed_energy - sol.energy),
                 "printed " + format_number(sol.printed_energy));
        const auto printed = printed_recursion_coeffs(ac, sol.energy, sol.gauge, n + 2);
        v.logged("QES printed recursion a_{n+1}" + ntag, printed.back());
      } catch (const std::exception& e) {
        v.trusted_error("QES solution" + ntag, e.what());
      }
    }
  }
}

} // namespace

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::logic_error("Table::add: row width does not match the header");
  rows.push_back(std::move(row));
}

std::string format_number(double x) {
  if (!std::isfinite(x)) return "";
  if (x == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv(const Table& t, std::ostream& os) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << quote_csv(t.columns[i]);
  os << "\r\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << quote_csv(cell_text(row[i]));
    os << "\r\n";
  }
}

void write_json(const RunConfig& cfg, const Table& t, std::ostream& os) {
  nlohmann::ordered_json out;
  out["config"] = to_json(cfg);
  auto records = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json rec = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) rec[t.columns[i]] = cell_json(row[i]);
    records.push_back(std::move(rec));
  }
  out["records"] = std::move(records);
  os << out.dump(2) << "\n";
}

RunOutcome execute(const RunConfig& c) {
  c.validate();
  RunOutcome out;
  switch (c.mode) {
  case Mode::params: out.table = params_table(c); break;
  case Mode::azimuthal: out.table = azimuthal_table(c); break;
  case Mode::harmonic:
    if (c.profile) {
      out.table = harmonic_profile_table(c);
    } else {
      out.table.columns = harmonic_columns();
      harmonic_rows(c, out.table, {});
    }
    break;
  case Mode::anharmonic:
    if (c.profile) {
      out.table = anharmonic_profile_table(c);
    } else {
      out.table.columns = anharmonic_columns();
      anharmonic_rows(c, out.table, {});
    }
    break;
  case Mode::sweep: out.table = sweep_table(c); break;
  case Mode::verify: {
    VerifyTable v;
    verify_fixed_checks(v, c);
    verify_config_checks(v, c);
    out.table = std::move(v.table);
    out.status = v.trusted_failure ? kExitSolver : kExitOk;
    break;
  }
  }
  return out;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  RunOutcome result;
  try {
    result = execute(cfg);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  }

  std::ofstream file;
  std::ostream* os = &out;
  if (!cfg.out.empty()) {
    file.open(cfg.out, std::ios::binary);
    if (!file) {
      err << "error: cannot open output file '" << cfg.out << "'\n";
      return kExitValidation;
    }
    os = &file;
  }
  if (cfg.format == Format::csv) write_csv(result.table, *os);
  else write_json(cfg, result.table, *os);
  os->flush();
  if (result.status != kExitOk) err << "verify: at least one trusted check failed\n";
  return result.status;
}

int main_entry(int argc, char** argv) {
  set_log_sink([](const std::string& msg) { std::cerr << "[log] " << msg << "\n"; });
  std::optional<RunConfig> cfg;
  try {
    cfg = parse_command_line(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  if (!cfg) return kExitOk;
  return run(*cfg, std::cout, std::cerr);
}

} // namespace dkg::cli

// Acceptance suite: one PASS/FAIL line per criterion, details indented below.
// Usage: acceptance <path-to-dkg-cli>

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "dkg/anharmonic_qes.hpp"
#include "dkg/azimuthal.hpp"
#include "dkg/harmonic_radial.hpp"
#include "dkg/numerical_oracle.hpp"
#include "dkg/sl2.hpp"

using namespace dkg;

namespace {

// Tolerances and limits.
constexpr double kAnchorEnergy = 3.7525;
constexpr double kAnchorAbsTol = 1e-3;
constexpr double kOracleRelTol = 1e-3;
constexpr double kAngularRelTol = 1e-4;
constexpr double kResidualTol = 1e-6;
constexpr double kCollapseRatio = 0.10;
constexpr double kAlgebraTol = 1e-12;
constexpr double kOverlapMin = 0.999;

const WignerParams kUniformHalf{0.5, 0.5, 0.0, 0.5, 0.5, 0.0};

std::string cli_path;

std::string details;

void detail(const char* fmt, ...) __attribute__((format(printf, 1, 2)));
void detail(const char* fmt, ...) {
  char buf[1024];
  std::va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  details += "    ";
  details += buf;
  details += "\n";
}

struct Criterion {
  int id;
  const char* title;
  double time_limit; // seconds; <= 0 for none
  std::function<bool()> body;
};

int failures = 0;

void run(const Criterion& c) {
  details.clear();
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  std::string error;
  try {
    ok = c.body();
  } catch (const std::exception& e) {
    error = e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!error.empty()) detail("exception: %s", error.c_str());
  const bool in_time = c.time_limit <= 0.0 || secs < c.time_limit;
  if (!in_time) detail("runtime %.2f s exceeds %.0f s", secs, c.time_limit);
  ok = ok && in_time;
  if (!ok) ++failures;
  std::printf("%s criterion %d: %s (%.2f s)\n%s", ok ? "PASS" : "FAIL", c.id, c.title, secs, details.c_str());
  std::fflush(stdout);
}

double harmonic_energy(const WignerParams& w, const ParitySector& s, int n_phi, double a, int n) {
  return solve_levels(make_harmonic_config(w, s, n_phi, 1.0, 1.0, a, n)).energy();
}

std::vector<double> grid(double lo, double hi, int count) {
  std::vector<double> out;
  for (int i = 0; i < count; ++i) out.push_back(i + 1 == count ? hi : lo + (hi - lo) * i / (count - 1));
  return out;
}

bool monotone_nonincreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[i - 1]) return false;
  }
  return true;
}

bool c1_standard_limit() {
  bool ok = true;
  for (const auto& s : ParitySector::all()) {
    const auto k = compute_k(DerivedParams{}, s);
    ok = ok && k.k1 == 1.0 && k.k2 == 1.0;
    for (int n = 0; n <= 5; ++n) {
      const double expected = 4.0 * (n + 1) * (n + 1);
      const double got = m_prime_squared(DerivedParams{}, s, n);
      const bool within = std::abs(got - expected) <= std::nextafter(expected, 1e300) - expected;
      if (!within) detail("sector %s n_phi=%d: m'^2 = %.17g, expected %.17g", s.label().c_str(), n, got, expected);
      ok = ok && within;
    }
  }
  return ok;
}

bool c2_angular_oracle() {
  const auto spec = angular_spectrum(DerivedParams{}, {1, 1}, default_angular_grid(), 4);
  const double expected[] = {0.0, 4.0, 16.0, 36.0};
  bool ok = true;
  for (int k = 0; k < 4; ++k) {
    const double err = std::abs(spec.eigenvalues[k] - expected[k]) / std::max(1.0, expected[k]);
    detail("level %d: %.12g (relative error %.2e)", k, spec.eigenvalues[k], err);
    ok = ok && err <= kAngularRelTol;
  }
  // Closed form against the grid for deformed sets: reported only.
  const WignerParams sets[] = {{0.5, 0.5, 0.0, 0.5, 0.5, 0.0}, {0.5, 0.5, -0.6, 0.0, 0.0, 0.0},
                               {0.5, 1.0, -0.5, 6.908326, 1.0, -0.5}};
  for (const auto& w : sets) {
    const auto d = derive_params(w);
    for (const auto& s : {ParitySector{1, 1}, ParitySector{-1, -1}}) {
      const auto sol = solve_azimuthal(d, s, 0, MPrimeSource::closed_form, default_angular_grid());
      detail("report (%g,%g,%g,%g,%g,%g) %s: closed %.10g, oracle %.10g, |diff| %.3g", w.alpha1, w.beta1, w.gamma1,
             w.alpha2, w.beta2, w.gamma2, s.label().c_str(), sol.closed_form_m_prime_sq, *sol.oracle_m_prime_sq,
             *sol.discrepancy);
    }
  }
  return ok;
}

bool c3_harmonic_anchor() {
  const auto cfg = make_harmonic_config(WignerParams{}, {1, 1}, 0, 1.0, 1.0, 0.0, 0);
  const double e = solve_levels(cfg).energy();
  const auto lvl = radial_level(harmonic_radial_problem(cfg, 1), default_radial_grid(), 0);
  const double rel = std::abs(lvl.energy - e) / e;
  detail("m'^2 = %g, E = %.12g, oracle E = %.12g (relative %.2e)", cfg.angular.m_prime_sq, e, lvl.energy, rel);
  return std::abs(e - kAnchorEnergy) <= kAnchorAbsTol && rel <= kOracleRelTol;
}

bool c4_harmonic_residual() {
  bool ok = true;
  for (int n : {0, 1, 2}) {
    for (double a : {0.0, 0.3, 0.6}) {
      const auto cfg = make_harmonic_config(kUniformHalf, {1, 1}, 2, 1.0, 1.0, a, n);
      const auto level = solve_levels(cfg);
      double worst = 0.0;
      for (int i = 0; i < 1000; ++i) {
        const double rho = 0.05 + 7.95 * i / 999.0;
        worst = std::max(worst, radial_residual(harmonic_wave_sample(level, cfg, rho), rho, level.energy(), cfg.mass,
                                                cfg.angular.xi_sum(), cfg.angular.m_prime_sq,
                                                0.5 * cfg.coupling() * rho * rho));
      }
      detail("n=%d a=%.1f: E = %.10g, max relative residual %.2e", n, a, level.energy(), worst);
      ok = ok && worst <= kResidualTol;
    }
  }
  return ok;
}

bool collapse_check(const char* label, const std::function<double(double, int)>& energy) {
  const auto as = grid(0.0, 0.99, 20);
  std::vector<double> e0, e1;
  for (double a : as) {
    e0.push_back(energy(a, 0));
    e1.push_back(energy(a, 1));
  }
  const double gap0 = e1.front() - e0.front();
  const double gap1 = e1.back() - e0.back();
  const double ratio = gap1 / gap0;
  const bool mono = monotone_nonincreasing(e0) && monotone_nonincreasing(e1);
  detail("%s: gap(a=0) = %.6g, gap(a=0.99) = %.6g, ratio %.4f (limit %.2f), monotone %s", label, gap0, gap1, ratio,
         kCollapseRatio, mono ? "yes" : "no");
  return ratio < kCollapseRatio && mono;
}

bool c5_degeneracy() {
  bool ok = true;
  for (const auto& s : {ParitySector{1, 1}, ParitySector{-1, -1}}) {
    const std::string label = "harmonic " + s.label();
    ok = collapse_check(label.c_str(), [&](double a, int n) { return harmonic_energy(kUniformHalf, s, 2, a, n); }) && ok;
  }
  // Sextic model: quadratic coupling fixed by the n = 1 truncation at a = 0,
  // then held while a varies.
  const auto base = make_anharmonic_config(kUniformHalf, {1, 1}, 2, 1.0, 4.0, 0.5, 2.0, 0.0, 1);
  const auto cal = calibrate_truncation(base);
  detail("sextic: calibrated Omega = %.12g at a = 0 (|a_2| = %.1e)", cal.parameter, cal.solution.truncation_residual);
  ok = collapse_check("sextic ++",
                      [&](double a, int n) {
                        auto cfg = make_anharmonic_config(kUniformHalf, {1, 1}, 2, 1.0, cal.parameter, 0.5, 2.0, a, n);
                        return qes_energy(cfg).front();
                      }) &&
       ok;
  return ok;
}

double max_residual(const DiffOp& lhs, const DiffOp& rhs) {
  double worst = 0.0;
  for (int k = 0; k <= 12; ++k) {
    Polynomial z(static_cast<std::size_t>(k + 1), 0.0);
    z.back() = 1.0;
    const auto a = lhs.apply(z);
    const auto b = rhs.apply(z);
    for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
      worst = std::max(worst, std::abs((i < a.size() ? a[i] : 0.0) - (i < b.size() ? b[i] : 0.0)));
    }
  }
  return worst;
}

bool c6_sl2_algebra() {
  double worst = 0.0;
  for (int n = 0; n <= 12; ++n) {
    const auto jp = j_plus(n), j0 = j_zero(n), jm = j_minus();
    worst = std::max({worst, max_residual(commutator(jp, jm), j0.scaled(-2.0)), max_residual(commutator(jm, j0), jm),
                      max_residual(commutator(jp, j0), jp.scaled(-1.0))});
  }
  detail("max residual over n <= 12, Z^k with k <= 12: %.3g", worst);
  return worst <= kAlgebraTol;
}

bool c7_qes_consistency() {
  const auto base =
      make_anharmonic_config(WignerParams{0.5, 1.0, 0.0, 6.908326, 1.0, 0.0}, {1, 1}, 1, 1.0, 0.2, 3.0, 1.0, -0.5, 1);
  const auto cal = calibrate_truncation(base);
  const auto& sol = cal.solution;
  const auto& cfg = sol.config;
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double rho = 0.05 + 7.95 * i / 999.0;
    worst = std::max(worst, radial_residual(qes_wave_sample(sol, rho), rho, sol.energy, cfg.mass, cfg.angular.xi_sum(),
                                            cfg.angular.m_prime_sq, cfg.potential(rho)));
  }
  const auto check = qes_oracle_check(sol);
  detail("Omega = %.15g, E = %.15g, |a_2| = %.2e", cal.parameter, sol.energy, sol.truncation_residual);
  detail("ODE residual %.2e; oracle level %d E = %.12g (relative %.2e), overlap %.10f", worst, check.level,
         check.oracle_energy, check.relative_difference, check.overlap);
  return sol.truncation_residual <= kTruncationTol && worst <= kResidualTol &&
         check.relative_difference <= kOracleRelTol && check.overlap >= kOverlapMin;
}

bool c8_parity_split() {
  const ParitySector pp{1, 1}, mm{-1, -1};
  const double mp_pp = make_harmonic_config(kUniformHalf, pp, 2, 1.0, 1.0, 0.0, 0).angular.m_prime_sq;
  const double mp_mm = make_harmonic_config(kUniformHalf, mm, 2, 1.0, 1.0, 0.0, 0).angular.m_prime_sq;
  bool ok = mp_pp != mp_mm;
  std::vector<double> gaps;
  for (double a : grid(0.0, 0.99, 10)) {
    gaps.push_back(std::abs(harmonic_energy(kUniformHalf, pp, 2, a, 0) - harmonic_energy(kUniformHalf, mm, 2, a, 0)));
  }
  ok = ok && gaps.front() > 0.0;
  for (std::size_t i = 1; i < gaps.size(); ++i) ok = ok && gaps[i] < gaps[i - 1];
  detail("m'^2: ++ %g, -- %g; |dE| from %.6g (a=0) to %.6g (a=0.99)", mp_pp, mp_mm, gaps.front(), gaps.back());
  return ok;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool c9_determinism() {
  if (cli_path.empty()) {
    detail("no CLI path given");
    return false;
  }
  const auto dir = std::filesystem::temp_directory_path() / "dkg_acceptance";
  std::filesystem::create_directories(dir);
  const std::string common = " --alpha1 0.5 --beta1 0.5 --alpha2 0.5 --beta2 0.5 --n-phi 2 --sectors uniform";
  const std::vector<std::pair<std::string, std::string>> runs{
      {"verify", "--mode verify --n 0,1" + common},
      {"verify_qes", "--mode verify --target anharmonic --alpha1 0.5 --beta1 1 --alpha2 6.908326 --beta2 1 --n-phi 1 "
                     "--n 1 --Omega 0.2 --Lambda 3 --Gamma 1 --a -0.5 --calibrate Omega"},
      {"sweep_csv", "--mode sweep --sweep a:0:0.99:10 --n 0,1 --oracle" + common},
      {"sweep_json", "--mode sweep --sweep a:-0.9:0.99:8 --n 0,1 --format json" + common}};
  bool ok = true;
  for (const auto& [name, args] : runs) {
    std::string outputs[2];
    for (int rep = 0; rep < 2; ++rep) {
      const auto file = dir / (name + "_" + std::to_string(rep) + ".out");
      const std::string cmd = "\"" + cli_path + "\" " + args + " --out \"" + file.string() + "\" 2>/dev/null";
      const int status = std::system(cmd.c_str());
      if (status != 0) {
        detail("%s: exit status %d", name.c_str(), status);
        ok = false;
      }
      outputs[rep] = slurp(file);
    }
    const bool same = !outputs[0].empty() && outputs[0] == outputs[1];
    detail("%s: %zu bytes, %s", name.c_str(), outputs[0].size(), same ? "identical" : "DIFFERENT");
    ok = ok && same;
  }
  return ok;
}

} // namespace

int main(int argc, char** argv) {
  if (argc > 1) cli_path = argv[1];
  const std::vector<Criterion> criteria{
      {1, "standard-limit azimuthal exactness", 1.0, c1_standard_limit},
      {2, "angular oracle agreement in the standard limit", 30.0, c2_angular_oracle},
      {3, "harmonic quantization anchor", 30.0, c3_harmonic_anchor},
      {4, "harmonic ODE residual", 60.0, c4_harmonic_residual},
      {5, "degeneracy collapse as a -> 1", 0.0, c5_degeneracy},
      {6, "sl(2) commutation relations", 0.0, c6_sl2_algebra},
      {7, "QES consistency after calibration", 120.0, c7_qes_consistency},
      {8, "parity split of the uniform sectors", 0.0, c8_parity_split},
      {9, "byte-reproducible verify and sweep output", 0.0, c9_determinism},
  };
  for (const auto& c : criteria) run(c);
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}

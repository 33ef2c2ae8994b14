#include <doctest.h>

#include <cmath>

#include "dkg/errors.hpp"
#include "dkg/harmonic_radial.hpp"

using namespace dkg;

namespace {

const WignerParams kUniformHalf{0.5, 0.5, 0.0, 0.5, 0.5, 0.0};

double max_residual(const HarmonicConfig& cfg) {
  const auto level = solve_levels(cfg);
  const double e = level.energy();
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double rho = 0.05 + 7.95 * i / 999.0;
    const double v = 0.5 * cfg.coupling() * rho * rho;
    worst = std::max(worst, radial_residual(harmonic_wave_sample(level, cfg, rho), rho, e, cfg.mass,
                                            cfg.angular.xi_sum(), cfg.angular.m_prime_sq, v));
  }
  return worst;
}

} // namespace

TEST_CASE("quantization anchor") {
  const auto cfg = make_harmonic_config(WignerParams{}, {1, 1}, 0, 1.0, 1.0, 0.0, 0);
  CHECK(cfg.angular.m_prime_sq == 4.0);
  CHECK(cfg.big_m() == 1.5);
  const auto level = solve_levels(cfg);
  REQUIRE(level.energies.size() == 1);
  CHECK(level.energy() == doctest::Approx(3.752317474967829).epsilon(1e-14));
  CHECK(std::abs(quantization_residual(cfg, level.energy())) < 1e-12);
}

TEST_CASE("parity sectors split the spectrum") {
  const auto pp = solve_levels(make_harmonic_config(kUniformHalf, {1, 1}, 2, 1.0, 1.0, 0.0, 0));
  const auto mm = solve_levels(make_harmonic_config(kUniformHalf, {-1, -1}, 2, 1.0, 1.0, 0.0, 0));
  CHECK(pp.m_prime_sq == doctest::Approx(48.0));
  CHECK(mm.m_prime_sq == doctest::Approx(24.0));
  CHECK(pp.energy() == doctest::Approx(6.748081261479954).epsilon(1e-14));
  CHECK(mm.energy() == doctest::Approx(5.652519229126201).epsilon(1e-14));
}

TEST_CASE("energies decrease with the deformation a") {
  double prev = 1e300;
  for (int i = 0; i < 20; ++i) {
    const double a = 0.99 * i / 19.0;
    const double e = solve_levels(make_harmonic_config(kUniformHalf, {1, 1}, 2, 1.0, 1.0, a, 1)).energy();
    CHECK(e <= prev);
    prev = e;
  }
}

TEST_CASE("closed-form eigenpair solves the radial equation") {
  for (int n : {0, 1, 2}) {
    for (double a : {0.0, 0.3, 0.6}) {
      CAPTURE(n);
      CAPTURE(a);
      CHECK(max_residual(make_harmonic_config(kUniformHalf, {1, 1}, 2, 1.0, 1.0, a, n)) <= 1e-6);
    }
  }
}

TEST_CASE("wavefunction helpers") {
  const auto cfg = make_harmonic_config(kUniformHalf, {1, 1}, 2, 1.0, 1.0, 0.3, 1);
  const auto level = solve_levels(cfg);
  CHECK(level.wavefn.laguerre_scale == doctest::Approx(2.0 * level.wavefn.gaussian_scale));
  const double norm = harmonic_norm(level, cfg, 12.0);
  CHECK(norm > 0.0);
  CHECK(std::isfinite(norm));
  const auto s = harmonic_wave_sample(level, cfg, 1.3);
  CHECK(s.psi() == doctest::Approx(harmonic_wavefunction(level, cfg, 1.3)).epsilon(1e-12));
  CHECK(harmonic_wavefunction(level, cfg, 30.0) == doctest::Approx(0.0));
}

TEST_CASE("printed closed form is evaluated but not trusted") {
  const auto cfg = make_harmonic_config(WignerParams{}, {1, 1}, 0, 1.0, 1.0, 0.0, 0);
  const double printed = printed_harmonic_energy(cfg);
  const auto level = solve_levels(cfg);
  if (std::isfinite(printed)) CHECK(level.printed_discrepancy == doctest::Approx(std::abs(printed - level.energy())));
  else CHECK(std::isnan(level.printed_discrepancy));
}

TEST_CASE("domain errors") {
  const auto cfg = make_harmonic_config(WignerParams{}, {1, 1}, 0, 1.0, 1.0, 0.0, 0);
  CHECK_THROWS_AS(quantization_residual(cfg, -2.0), DomainError);
  CHECK_THROWS_AS(make_harmonic_config(WignerParams{}, {1, 1}, 0, 1.0, 1.0, 1.0, 0), DomainError);
  CHECK_THROWS_AS(make_harmonic_config(WignerParams{}, {1, 1}, 0, -1.0, 1.0, 0.0, 0), DomainError);
}

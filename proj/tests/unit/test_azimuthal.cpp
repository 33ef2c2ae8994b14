#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dkg/azimuthal.hpp"
#include "dkg/errors.hpp"

using namespace dkg;

namespace {

DerivedParams one_axis_params() {
  WignerParams w;
  w.alpha1 = 0.5;
  w.beta1 = 0.5;
  w.gamma1 = -0.6;
  return derive_params(w);
}

} // namespace

TEST_CASE("standard limit is exact in every sector") {
  const DerivedParams zero{};
  for (const auto& s : ParitySector::all()) {
    const auto k = compute_k(zero, s);
    CHECK(k.k1 == 1.0);
    CHECK(k.k2 == 1.0);
    for (int n = 0; n <= 5; ++n) CHECK(m_prime_squared(zero, s, n) == 4.0 * (n + 1) * (n + 1));
  }
}

TEST_CASE("k exponents of a deformed axis") {
  const auto d = one_axis_params();
  CHECK(compute_k(d, {1, 1}).k1 == doctest::Approx(3.5).epsilon(1e-14));
  CHECK(compute_k(d, {-1, 1}).k1 == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(compute_k(d, {1, -1}).k2 == doctest::Approx(1.0));
  // 3/2 + 5/4 + (3.5 + 1 + 1.75) - 1.25 + 5/4
  CHECK(m_prime_squared(d, {1, 1}, 0) == doctest::Approx(9.0).epsilon(1e-14));
}

TEST_CASE("negative radicand is reported") {
  // Real Wigner parameters always give a perfect square; build the derived
  // set directly.
  DerivedParams d;
  d.mu1 = 1.0;
  CHECK_THROWS_WITH_AS(compute_k(d, {1, 1}), doctest::Contains("k1"), DomainError);
  const auto rad = k_radicands(d, {1, 1});
  CHECK(rad[0] < 0.0);
}

TEST_CASE("closed-form eigenfunction") {
  const double phi = std::numbers::pi / 4;
  CHECK(azimuthal_wavefunction(DerivedParams{}, {1, 1}, 0, phi) ==
        doctest::Approx(std::exp(-0.5) * std::sqrt(2.0) / 2).epsilon(1e-14));
  CHECK(azimuthal_norm(one_axis_params(), {1, 1}, 1) > 0.0);
}

TEST_CASE("oracle comparison is reported, not enforced") {
  const auto sol = solve_azimuthal(one_axis_params(), {1, 1}, 0, MPrimeSource::closed_form, default_angular_grid(512));
  REQUIRE(sol.oracle_m_prime_sq);
  REQUIRE(sol.discrepancy);
  CHECK(sol.m_prime_sq == sol.closed_form_m_prime_sq);
  CHECK(*sol.discrepancy == doctest::Approx(std::abs(*sol.oracle_m_prime_sq - sol.closed_form_m_prime_sq)));

  const auto std_oracle = solve_azimuthal(DerivedParams{}, {1, 1}, 2, MPrimeSource::oracle, default_angular_grid(512));
  CHECK(std_oracle.m_prime_sq == doctest::Approx(16.0).epsilon(1e-4));
}

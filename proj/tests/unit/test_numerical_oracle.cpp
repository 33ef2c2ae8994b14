#include <doctest.h>

#include <cmath>

#include "dkg/errors.hpp"
#include "dkg/harmonic_radial.hpp"
#include "dkg/numerical_oracle.hpp"

using namespace dkg;

TEST_CASE("angular spectrum in the standard limit") {
  const auto pp = angular_spectrum(DerivedParams{}, {1, 1}, default_angular_grid(), 4);
  const double even[] = {0.0, 4.0, 16.0, 36.0};
  for (int k = 0; k < 4; ++k) {
    CHECK(std::abs(pp.eigenvalues[k] - even[k]) / std::max(1.0, even[k]) < 1e-4);
    CHECK(pp.convergence_estimate[k] < kConvergenceThreshold);
  }
  // Nodes at both axes: sin(2 j phi), j >= 1.
  const auto mm = angular_spectrum(DerivedParams{}, {-1, -1}, default_angular_grid(), 3);
  CHECK(mm.eigenvalues[0] == doctest::Approx(4.0).epsilon(1e-4));
  CHECK(mm.eigenvalues[1] == doctest::Approx(16.0).epsilon(1e-4));
  CHECK(mm.eigenvalues[2] == doctest::Approx(36.0).epsilon(1e-4));
  // Mixed sector: cos((2j + 1) phi).
  const auto pm = angular_spectrum(DerivedParams{}, {1, -1}, default_angular_grid(), 2);
  CHECK(pm.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(pm.eigenvalues[1] == doctest::Approx(9.0).epsilon(1e-4));
}

TEST_CASE("angular eigenvectors respect the sector boundary conditions") {
  const auto mm = angular_spectrum(DerivedParams{}, {-1, -1}, default_angular_grid(512), 1);
  const auto& v = mm.eigenvectors[0];
  double peak = 0.0;
  for (double x : v) peak = std::max(peak, std::abs(x));
  CHECK(std::abs(v.front()) < 0.02 * peak);
  CHECK(std::abs(v.back()) < 0.02 * peak);
}

TEST_CASE("radial oracle reproduces the harmonic anchor") {
  const auto cfg = make_harmonic_config(WignerParams{}, {1, 1}, 0, 1.0, 1.0, 0.0, 0);
  const auto p = harmonic_radial_problem(cfg, 1);
  const auto lvl = radial_level(p, default_radial_grid(), 0);
  // Real root of (E - 1)^2 (E + 1) = 36.
  CHECK(lvl.energy == doctest::Approx(3.752317474967829).epsilon(1e-6));
  CHECK(lvl.convergence_estimate < kConvergenceThreshold);

  // Grid convergence: a coarser solve agrees within its own estimate.
  const auto coarse = radial_level(p, default_radial_grid(1024), 0);
  CHECK(std::abs(coarse.energy - lvl.energy) / lvl.energy <= coarse.convergence_estimate + 1e-12);
}

TEST_CASE("radial operator is symmetric") {
  const auto cfg = make_harmonic_config(WignerParams{0.5, 0.5, 0, 0.5, 0.5, 0}, {1, 1}, 2, 1.0, 1.0, 0.3, 0);
  const auto p = harmonic_radial_problem(cfg, 1);
  GridSpec g = default_radial_grid(1024);
  g.x_max = 6.0;
  CHECK(radial_operator_matrix(p, g, 7.0).asymmetry() <= 1e-12);
}

TEST_CASE("radial spectrum shares one grid") {
  const auto cfg = make_harmonic_config(WignerParams{}, {1, 1}, 0, 1.0, 1.0, 0.0, 0);
  const auto s = radial_spectrum(harmonic_radial_problem(cfg, 3), default_radial_grid(2048), 3);
  REQUIRE(s.eigenvalues.size() == 3);
  CHECK(s.eigenvalues[0] < s.eigenvalues[1]);
  CHECK(s.eigenvalues[1] < s.eigenvalues[2]);
  for (const auto& v : s.eigenvectors) CHECK(static_cast<int>(v.size()) == s.grid.n_points);
}

TEST_CASE("negative m'^2 is rejected") {
  RadialProblem p;
  p.m_prime_sq = -1.0;
  p.potential = [](double r) { return r * r; };
  CHECK_THROWS_AS(radial_level(p, default_radial_grid(), 0), DomainError);
}

TEST_CASE("weighted overlap") {
  GridSpec g{0.0, 2.0, 100};
  std::vector<double> u;
  for (double x : g.nodes()) u.push_back(std::sin(x));
  auto w = [](double x) { return x; };
  CHECK(weighted_overlap(g, w, u, [](double x) { return 3.0 * std::sin(x); }) == doctest::Approx(1.0));
  CHECK(weighted_overlap(g, w, u, [](double x) { return std::cos(5 * x); }) < 0.9);
}

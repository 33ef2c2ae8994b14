#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dkg/sturm_liouville.hpp"

using namespace dkg;

TEST_CASE("grid layout") {
  GridSpec g{0.0, 1.0, 100};
  CHECK(g.h() == doctest::Approx(0.01));
  CHECK(g.node(0) == doctest::Approx(0.005));
  CHECK(g.nodes().size() == 100);
  CHECK(g.refined(2).n_points == 200);
  GridSpec small{0.0, 1.0, 10};
  CHECK_THROWS_AS(small.check(), std::invalid_argument);
}

TEST_CASE("Dirichlet and Neumann strings") {
  const double pi = std::numbers::pi;
  auto one = [](double) { return 1.0; };
  auto zero = [](double) { return 0.0; };

  GridSpec dd{0.0, pi, 2000, Boundary::dirichlet, Boundary::dirichlet};
  const auto e = tridiagonal_eigenpairs(assemble_sturm_liouville(dd, one, zero), 0, 2, false);
  CHECK(e.values[0] == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(e.values[1] == doctest::Approx(4.0).epsilon(1e-5));
  CHECK(e.values[2] == doctest::Approx(9.0).epsilon(1e-5));

  GridSpec nn{0.0, pi, 2000, Boundary::neumann, Boundary::neumann};
  const auto f = tridiagonal_eigenpairs(assemble_sturm_liouville(nn, one, zero), 0, 2, true);
  CHECK(std::abs(f.values[0]) < 1e-10);
  CHECK(f.values[1] == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(f.values[2] == doctest::Approx(4.0).epsilon(1e-5));
  REQUIRE(f.vectors.size() == 3);
  double norm = 0.0;
  for (double x : f.vectors[1]) norm += x * x;
  CHECK(norm == doctest::Approx(1.0));
}

TEST_CASE("weighted operator is symmetric after the similarity transform") {
  GridSpec g{0.0, 1.5, 512, Boundary::neumann, Boundary::dirichlet};
  auto w = [](double x) { return std::pow(x, 3.4) * std::exp(-x); };
  auto u = [](double x) { return 2.0 / (x * x) + x * x; };
  const auto m = assemble_sturm_liouville(g, w, u);
  CHECK(m.asymmetry() <= 1e-12);
}

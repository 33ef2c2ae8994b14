#include <doctest.h>

#include <cmath>
#include <cstring>

#include "dkg/errors.hpp"
#include "dkg/operator_params.hpp"

using namespace dkg;

TEST_CASE("zero deformation gives zero derived parameters") {
  const auto d = derive_params(WignerParams{});
  CHECK(d == DerivedParams{});
}

TEST_CASE("derived parameters by substitution") {
  WignerParams w;
  w.alpha1 = 0.5;
  w.beta1 = 0.5;
  w.gamma1 = -0.6;
  const auto d = derive_params(w);
  CHECK(d.xi1 == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(d.mu1 == doctest::Approx(-1.25).epsilon(1e-15));
  CHECK(d.nu1 == doctest::Approx(-1.25).epsilon(1e-15));
  CHECK(d.xi2 == 0.0);
}

TEST_CASE("gamma constraint") {
  WignerParams w;
  w.gamma1 = 1.0;
  CHECK_THROWS_AS(derive_params(w), DomainError);
  w.gamma1 = 0.2;
  w.gamma2 = -1.5;
  CHECK_THROWS_WITH_AS(derive_params(w), doctest::Contains("gamma2"), DomainError);

  WignerParams edge;
  edge.alpha1 = 0.3;
  edge.beta1 = 0.1;
  edge.gamma1 = 1.0 - 1e-9;
  const auto d = derive_params(edge);
  CHECK(std::isfinite(d.mu1));
  CHECK(std::isfinite(d.nu1));
  CHECK(d.xi1 > 1e7);
}

TEST_CASE("derive_params is bitwise deterministic") {
  WignerParams w{0.37, -1.2, 0.41, 2.5, 0.3, -0.77};
  const auto a = derive_params(w);
  const auto b = derive_params(w);
  CHECK(std::memcmp(&a, &b, sizeof a) == 0);
}

TEST_CASE("xi is smooth in gamma") {
  const double alpha = 0.7, beta = -0.4;
  for (double g : {-0.8, -0.3, 0.0, 0.45, 0.9}) {
    const double step = 1e-5;
    auto xi = [&](double gg) { return derive_params(WignerParams{alpha, beta, gg, 0, 0, 0}).xi1; };
    const double fd = (xi(g + step) - xi(g - step)) / (2 * step);
    const double d = 1 - g * g;
    const double exact = (-beta * d + 2 * g * (alpha - beta * g)) / (d * d);
    CHECK(fd == doctest::Approx(exact).epsilon(1e-6));
  }
}

TEST_CASE("parity sectors") {
  const auto all = ParitySector::all();
  CHECK(all[0] == ParitySector{1, 1});
  CHECK(all[1] == ParitySector{1, -1});
  CHECK(all[2] == ParitySector{-1, 1});
  CHECK(all[3] == ParitySector{-1, -1});
  CHECK(all[1].label() == "+-");
  CHECK_THROWS_AS(ParitySector::make(0, 1), DomainError);
}

TEST_CASE("validation report") {
  const auto ok = validate(WignerParams{}, ParitySector{1, 1});
  CHECK(ok.ok());
  REQUIRE(ok.find("gamma1 constraint"));
  CHECK(ok.find("gamma1 constraint")->ok);

  WignerParams bad;
  bad.gamma1 = 1.5;
  const auto rep = validate(bad, ParitySector{1, 1});
  CHECK_FALSE(rep.ok());
  CHECK_FALSE(rep.find("gamma1 constraint")->ok);
  CHECK(rep.find("gamma2 constraint")->ok);
}

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "dkg/special_functions.hpp"

using namespace dkg;

TEST_CASE("Laguerre recurrence") {
  // Explicit sum for L_3^{1/2}(2).
  CHECK(laguerre_eval({3, 0.5}, 2.0) == doctest::Approx(-0.8958333333333333).epsilon(1e-14));
  CHECK(laguerre_eval({0, 2.7}, 5.0) == 1.0);
  CHECK(laguerre_eval({1, 1.5}, 0.25) == doctest::Approx(2.25));
  CHECK(laguerre_eval({-1, 0.0}, 1.0) == 0.0);
  // L_n^a(0) = binomial(n + a, n).
  CHECK(laguerre_eval({4, 0.0}, 0.0) == doctest::Approx(1.0));
  CHECK(laguerre_eval({2, 1.0}, 0.0) == doctest::Approx(3.0));
}

TEST_CASE("bisection and bracketing") {
  auto f = [](double x) { return x * x - 2.0; };
  const double r = bisect(f, {0.0, 2.0, f(0.0), f(2.0)}, 1e-14);
  CHECK(r == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));

  auto s = [](double x) { return std::sin(x); };
  const auto roots = find_roots(s, 0.5, 10.0, 400);
  REQUIRE(roots.size() == 3);
  CHECK(roots[0] == doctest::Approx(std::numbers::pi).epsilon(1e-9));
  CHECK(roots[2] == doctest::Approx(3 * std::numbers::pi).epsilon(1e-9));

  auto holey = [](double x) { return x < 1.0 ? std::numeric_limits<double>::quiet_NaN() : x - 2.0; };
  const auto b = scan_brackets(holey, 0.0, 3.0, 30);
  REQUIRE(b.size() == 1);
  CHECK(b[0].lo <= 2.0);
  CHECK(b[0].hi >= 2.0);

  auto none = [](double x) { return x * x + 1.0; };
  CHECK(find_roots(none, -3.0, 3.0, 50).empty());
}

TEST_CASE("safeguarded secant") {
  auto f = [](double x) { return std::cos(x) - x; };
  const auto s = secant_in_bracket(f, {0.0, 1.0, f(0.0), f(1.0)}, 1e-14, 60);
  CHECK(s.converged);
  CHECK(s.root == doctest::Approx(0.7390851332151607).epsilon(1e-13));
  CHECK(s.iterations < 20);
}

TEST_CASE("trapezoid") {
  CHECK(trapezoid([](double x) { return 3 * x + 1; }, 0.0, 2.0, 3) == doctest::Approx(8.0));
  const std::vector<double> samples{0.0, 1.0, 4.0};
  CHECK(trapezoid(samples, 1.0) == doctest::Approx(3.0));
  CHECK(trapezoid([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, 2001) ==
        doctest::Approx(2.0).epsilon(1e-6));
}

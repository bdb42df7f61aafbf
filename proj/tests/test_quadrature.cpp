#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qest/quadrature.hpp"

using namespace qest;

TEST_CASE("single panel integrates polynomials up to degree 22 exactly") {
  for (int p = 0; p <= 22; ++p) {
    const auto r = integrate([p](double x) { return std::pow(x, p); }, 0.0, 1.0, {1e300, 0.0, 0});
    REQUIRE(r.value == doctest::Approx(1.0 / (p + 1)).epsilon(1e-14));
  }
}

TEST_CASE("adaptive refinement reaches the tolerance") {
  const auto r = integrate([](double x) { return std::exp(-x * x); }, -5.0, 5.0, {1e-13});
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(std::sqrt(std::numbers::pi) * std::erf(5.0)).epsilon(1e-13));
  const auto osc = integrate([](double x) { return std::sin(50.0 * x); }, 0.0, std::numbers::pi, {1e-12});
  CHECK(osc.converged);
  CHECK(std::abs(osc.value) < 1e-11);
}

TEST_CASE("integrable endpoint singularities") {
  const auto lg = integrate([](double x) { return std::log(x); }, 0.0, 1.0, {1e-11});
  CHECK(lg.value == doctest::Approx(-1.0).epsilon(1e-10));
  const auto root = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, {1e-9});
  CHECK(root.value == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("reversed and empty intervals") {
  const auto r = integrate([](double x) { return x; }, 1.0, 0.0);
  CHECK(r.value == doctest::Approx(-0.5));
  CHECK(integrate([](double) { return 1.0; }, 2.0, 2.0).value == 0.0);
}

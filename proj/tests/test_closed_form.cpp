#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qest/closed_form.hpp"
#include "qest/rng.hpp"

using namespace qest;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("exact Bures errors") {
  CHECK(mse_bures_gamma(2, 1, 2.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(mse_bures_gamma(3, 10, 2.0) == doctest::Approx(2.0 / 13.0).epsilon(1e-14));
  CHECK(mse_bures_gamma(4, 10, 2.0) == doctest::Approx(3.0 / 14.0).epsilon(1e-14));
  CHECK(std::abs(1e6 * mse_bures_gamma(2, 1000000, 2.0) - 1.0) < 1e-5);
  for (int k = 2; k <= 16; ++k) {
    for (int n = 1; n <= 200; n += 7) {
      REQUIRE(mse_bures_gamma(k, n, 2.0) == doctest::Approx((k - 1.0) / (n + k)).epsilon(1e-13));
    }
  }
  CHECK_THROWS(mse_bures_gamma(2, 0, 2.0));
  CHECK_THROWS(mse_bures_gamma(2, 5, -1.0));
}

TEST_CASE("Bures errors decrease in n") {
  for (double g : {0.5, 1.0, 2.0, 3.0}) {
    for (int n = 1; n < 100; ++n) REQUIRE(mse_bures_gamma(3, n + 1, g) < mse_bures_gamma(3, n, g));
  }
}

TEST_CASE("Fubini-Study series against quadrature and expansion") {
  CHECK(mse_fs2_series(3, 50) / 50.0 ==
        doctest::Approx(generic_error_quadrature(3, 50, DeviationMeasure::fs_squared()).value).epsilon(1e-9));
  CHECK(mse_fs2_series(2, 100000) == doctest::Approx(1.0).epsilon(2e-5));
  const double expansion = 1.0 - (4.0 / 3.0) / 100 + (2.0 * 39.0 / 45.0) / (100.0 * 100.0);
  CHECK(std::abs(mse_fs2_series(2, 100) - expansion) < 1e-5);
  CHECK(mse_fs2_asymptotic(2, 10) == doctest::Approx(1.0 - 4.0 / 30.0 + 2.0 * 39.0 / (45.0 * 100.0)));
  CHECK(mse_fs2_asymptotic(2, 10) == doctest::Approx(0.884).epsilon(1e-3));
  // first-order coefficient at k=3
  const double n = 1e6;
  CHECK((mse_fs2_asymptotic(3, 1000000) - 2.0) * n == doctest::Approx(-4.0).epsilon(1e-4));
  CHECK_THROWS(mse_fs2_series(2, 10, 0.1));
}

TEST_CASE("Fubini-Study error exceeds Bures error") {
  for (int k = 2; k <= 6; ++k) {
    for (int n = 1; n <= 300; n += 13) REQUIRE(mse_fs2_series(k, n) / n > mse_bures_gamma(k, n, 2.0));
  }
}

TEST_CASE("tail probability") {
  CHECK(tail_probability(2, 1, kPi / 4) == doctest::Approx(0.25).epsilon(1e-14));
  for (int n = 1; n <= 1000; n += 37) {
    for (double eps : {0.05, 0.3, 0.9, 1.4}) {
      REQUIRE(std::abs(tail_probability(2, n, eps) - std::pow(std::cos(eps), 2.0 * (n + 1))) < 1e-12);
    }
  }
  CHECK(tail_probability(3, 10, kPi / 2 - 1e-9) < 1e-100);
  CHECK(log_tail_probability(2, 100000, 0.3) ==
        doctest::Approx(100001 * std::log(std::cos(0.3) * std::cos(0.3))).epsilon(1e-12));
  CHECK_THROWS(tail_probability(2, 1, 0.0));
  CHECK_THROWS(tail_probability(2, 1, kPi / 2));
  CHECK(tail_probability(3, 20, 0.4) ==
        doctest::Approx(generic_error_quadrature(3, 20, DeviationMeasure::ball_indicator(0.4)).value).epsilon(1e-9));
}

TEST_CASE("tail large-deviation expansion") {
  const double c2 = std::cos(kPi / 4) * std::cos(kPi / 4);
  CHECK(tail_log_asymptotic(2, 1000000000, kPi / 4) == doctest::Approx(std::log(c2)).epsilon(1e-8));
  // k=2: exact (1/n) log Pr = (1 + 1/n) log cos^2 eps
  for (int n : {10, 100, 1000}) {
    const double eps = 0.7;
    CHECK(tail_log_asymptotic(2, n, eps) == doctest::Approx(log_tail_probability(2, n, eps) / n).epsilon(1e-13));
  }
  const double e200 = std::abs(log_tail_probability(3, 200, 0.5) / 200 - tail_log_asymptotic(3, 200, 0.5));
  const double e400 = std::abs(log_tail_probability(3, 400, 0.5) / 400 - tail_log_asymptotic(3, 400, 0.5));
  CHECK(e200 / e400 > 6.0);
  CHECK(e200 / e400 < 10.0);
}

TEST_CASE("large-deviation rate") {
  CHECK(std::abs(ld_rate(2, 10000, 0.05) + 1.0) < 3e-3);
  const double exact = 2.0 * 10001 * std::log(std::cos(0.05)) / (0.05 * 0.05 * 10000);
  CHECK(ld_rate(2, 10000, 0.05) == doctest::Approx(exact).epsilon(1e-12));
  const double limit = std::log(std::cos(0.3) * std::cos(0.3)) / 0.09;
  CHECK(limit < -1.0);
  CHECK(std::abs(ld_rate(2, 2000, 0.3) - limit) < std::abs(ld_rate(2, 1000, 0.3) - limit));
  CHECK(std::abs(ld_rate(2, 100000000, 0.001) + 1.0) < 1e-5);
}

TEST_CASE("generic quadrature reproduces the closed forms") {
  CHECK(generic_error_quadrature(2, 5, DeviationMeasure::bures_power(2.0)).value ==
        doctest::Approx(1.0 / 7.0).epsilon(1e-10));
  RandomStream rng(41, 0);
  for (int i = 0; i < 20; ++i) {
    const int k = 2 + static_cast<int>(rng.uniform() * 7.0);
    const int n = 1 + static_cast<int>(rng.uniform() * 500.0);
    const double g = 0.5 + 3.0 * rng.uniform();
    const auto q = generic_error_quadrature(k, n, DeviationMeasure::bures_power(g));
    REQUIRE(q.converged);
    REQUIRE(std::abs(q.value - mse_bures_gamma(k, n, g)) < 1e-9);
  }
}

TEST_CASE("deviation measures") {
  CHECK(DeviationMeasure::bures_power(2.0)(kPi / 4) == doctest::Approx(0.5));
  CHECK(DeviationMeasure::fs_squared()(0.5) == doctest::Approx(0.25));
  CHECK(DeviationMeasure::ball_indicator(0.3)(0.31) == 1.0);
  CHECK(DeviationMeasure::ball_indicator(0.3)(0.29) == 0.0);
  CHECK(DeviationMeasure::bures_power(2.0).name() == "bures2");
  CHECK(DeviationMeasure::fs_squared().name() == "fs2");
  CHECK_THROWS(DeviationMeasure::bures_power(0.0));
  CHECK_THROWS(DeviationMeasure::ball_indicator(2.0));
}

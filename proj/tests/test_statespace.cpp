#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "qest/ks.hpp"
#include "qest/quadrature.hpp"
#include "qest/special.hpp"
#include "qest/statespace.hpp"

using namespace qest;

namespace {

constexpr double kPi = std::numbers::pi;

PureState plus() {
  Eigen::VectorXcd v(2);
  v << 1.0, 1.0;
  return PureState::normalized(v);
}

}  // namespace

TEST_CASE("construction enforces unit norm and dimension") {
  Eigen::VectorXcd v(2);
  v << 1.0, 1.0;
  CHECK_THROWS_AS(PureState{v}, std::invalid_argument);
  CHECK_THROWS_AS(PureState::basis(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(PureState::basis(17, 0), std::invalid_argument);
  CHECK_THROWS_AS(PureState::normalized(Eigen::VectorXcd::Zero(3)), std::invalid_argument);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(2, 2);
  m(0, 1) = 0.5;
  CHECK_THROWS_AS(Unitary{m}, std::invalid_argument);
}

TEST_CASE("overlap examples") {
  const auto e1 = PureState::basis(2, 0);
  const auto e2 = PureState::basis(2, 1);
  CHECK(overlap(e1, e1) == doctest::Approx(1.0));
  CHECK(overlap(e1, e2) == doctest::Approx(0.0));
  CHECK(overlap(plus(), e1) == doctest::Approx(0.5));
  CHECK_THROWS_AS(overlap(e1, PureState::basis(3, 0)), IncompatibleStates);
}

TEST_CASE("distance examples") {
  const auto e1 = PureState::basis(2, 0);
  const auto e2 = PureState::basis(2, 1);
  CHECK(fs_distance(e1, e1) == doctest::Approx(0.0));
  CHECK(fs_distance(e1, e2) == doctest::Approx(kPi / 2));
  CHECK(fs_distance(plus(), e1) == doctest::Approx(kPi / 4));
  CHECK(bures_distance(e1, e1) == doctest::Approx(0.0));
  CHECK(bures_distance(e1, e2) == doctest::Approx(1.0));
  CHECK(bures_distance(plus(), e1) == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("distances are phase invariant and accurate near zero") {
  RandomStream rng(11, 0);
  const auto a = haar_state(4, rng);
  CHECK(fs_distance(a, a.with_phase(1.3)) < 1e-14);
  // A state 1e-9 radians away: arccos of the overlap would lose this.
  Eigen::VectorXcd v(2);
  v << std::cos(1e-9), std::sin(1e-9);
  const PureState near{v};
  CHECK(fs_distance(PureState::basis(2, 0), near) == doctest::Approx(1e-9).epsilon(1e-6));
}

TEST_CASE("metric properties on random triples") {
  RandomStream rng(12, 0);
  for (int trial = 0; trial < 2000; ++trial) {
    const int k = 2 + trial % 6;
    const auto a = haar_state(k, rng);
    const auto b = haar_state(k, rng);
    const auto c = haar_state(k, rng);
    const double ab = fs_distance(a, b);
    REQUIRE(ab >= 0.0);
    REQUIRE(ab <= kPi / 2 + 1e-15);
    REQUIRE(ab == doctest::Approx(fs_distance(b, a)).epsilon(1e-14));
    REQUIRE(fs_distance(a, c) <= ab + fs_distance(b, c) + 1e-12);
    REQUIRE(bures_distance(a, b) == doctest::Approx(std::sin(ab)).epsilon(1e-12));
    REQUIRE(overlap(a, b) == doctest::Approx(std::cos(ab) * std::cos(ab)).epsilon(1e-12));
  }
}

TEST_CASE("unitary invariance of the distances") {
  RandomStream rng(13, 0);
  for (int trial = 0; trial < 500; ++trial) {
    const int k = 2 + trial % 5;
    const auto u = haar_unitary(k, rng);
    const auto a = haar_state(k, rng);
    const auto b = haar_state(k, rng);
    REQUIRE(fs_distance(u.apply(a), u.apply(b)) == doctest::Approx(fs_distance(a, b)).epsilon(1e-12));
  }
}

TEST_CASE("chart examples") {
  const auto e1 = from_chart(AngleChart(3, {0, 0, 0, 0}));
  CHECK(overlap(e1, PureState::basis(3, 0)) == doctest::Approx(1.0));
  const auto e2 = from_chart(AngleChart(2, {kPi / 2, 0}));
  CHECK(overlap(e2, PureState::basis(2, 1)) == doctest::Approx(1.0));
  const auto s = from_chart(AngleChart(2, {kPi / 4, kPi}));
  CHECK(s[0].real() == doctest::Approx(std::cos(kPi / 4)));
  CHECK(s[1].real() == doctest::Approx(-std::sin(kPi / 4)));
  CHECK(std::abs(s[1].imag()) < 1e-15);
  CHECK_THROWS_AS(AngleChart(2, {0.0}), std::invalid_argument);
  CHECK_THROWS_AS(AngleChart(2, {2.0, 0.0}), std::invalid_argument);
}

TEST_CASE("invariant density examples and normalisation") {
  CHECK(invariant_density_weight(AngleChart(2, {0.0, 0.0})) == doctest::Approx(0.0));
  CHECK(invariant_density_weight(AngleChart(2, {kPi / 4, 0.0})) == doctest::Approx(1.0 / (2 * kPi)));
  const QuadratureOptions opts{1e-13};
  const auto k2 = integrate([](double t) { return invariant_density_weight(AngleChart(2, {t, 0.0})); }, 0.0,
                            kPi / 2, opts);
  CHECK(k2.value * 2 * kPi == doctest::Approx(1.0).epsilon(1e-12));
  const auto k3 = integrate(
      [&](double t1) {
        return integrate([&](double t2) { return invariant_density_weight(AngleChart(3, {t1, t2, 0.0, 0.0})); },
                         0.0, kPi / 2, opts)
            .value;
      },
      0.0, kPi / 2, opts);
  CHECK(k3.value * 4 * kPi * kPi == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("haar states: overlap with e1 is Beta(1, k-1)") {
  for (int k : {2, 3, 5}) {
    RandomStream rng(14, static_cast<std::uint64_t>(k));
    std::vector<double> t;
    double sum = 0.0;
    for (int i = 0; i < 20000; ++i) {
      const auto s = haar_state(k, rng);
      REQUIRE(s.amplitudes().norm() == doctest::Approx(1.0).epsilon(1e-14));
      t.push_back(overlap(s, PureState::basis(k, 0)));
      sum += t.back();
    }
    CHECK(sum / 20000 == doctest::Approx(1.0 / k).epsilon(0.03));
    const auto ks = ks_one_sample(t, [k](double x) { return incomplete_beta(1.0, k - 1.0, x); });
    CHECK(ks.pass);
  }
}

TEST_CASE("haar unitaries are unitary and have Haar columns") {
  RandomStream rng(15, 0);
  std::vector<double> t;
  for (int i = 0; i < 20000; ++i) {
    const auto u = haar_unitary(3, rng);
    const Eigen::MatrixXcd g = u.matrix().adjoint() * u.matrix();
    REQUIRE((g - Eigen::MatrixXcd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-10);
    REQUIRE(std::abs(u.matrix().determinant()) == doctest::Approx(1.0).epsilon(1e-12));
    t.push_back(std::norm(u.matrix()(0, 0)));
  }
  CHECK(ks_one_sample(t, [](double x) { return incomplete_beta(1.0, 2.0, x); }).pass);
}

TEST_CASE("orthogonal complement samples") {
  RandomStream rng(16, 0);
  const auto e1 = PureState::basis(2, 0);
  for (int i = 0; i < 100; ++i) {
    const auto s = orthogonal_complement_sample(e1, rng);
    REQUIRE(overlap(s, e1) < 1e-20);
    REQUIRE(overlap(s, PureState::basis(2, 1)) == doctest::Approx(1.0));
  }
  const auto e3 = PureState::basis(3, 0);
  std::vector<double> t;
  for (int i = 0; i < 20000; ++i) {
    const auto s = orthogonal_complement_sample(e3, rng);
    REQUIRE(overlap(s, e3) < 1e-20);
    t.push_back(overlap(s, PureState::basis(3, 1)));
  }
  CHECK(ks_one_sample(t, [](double x) { return x; }).pass);
  const auto phi = haar_state(6, rng);
  CHECK(overlap(orthogonal_complement_sample(phi, rng), phi) < 1e-20);
}

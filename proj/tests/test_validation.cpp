#include <cmath>
#include <numbers>
#include <set>

#include "doctest.h"
#include "qest/validation.hpp"

using namespace qest;

namespace {
constexpr double kPi = std::numbers::pi;

std::string prefix(const std::string& id) { return id.substr(0, id.find(':')); }
}  // namespace

TEST_CASE("alternating binomial identity in exact rationals") {
  const auto a = check_lemma_to(1, 1);
  CHECK(a.pass);
  CHECK(a.lhs == doctest::Approx(0.5));
  const auto b = check_lemma_to(2, 3);
  CHECK(b.pass);
  CHECK(b.rhs == doctest::Approx(1.0 / 30.0));
  CHECK(check_lemma_to(12, 12).pass);
  CHECK(check_lemma_to(12, 12).abs_diff == 0.0);
  CHECK_THROWS(check_lemma_to(13, 1));
}

TEST_CASE("logarithmic moment integrals") {
  const auto zero = check_lemma_hohe(0, 1.0);
  CHECK(zero.first.pass);
  CHECK(zero.first.lhs == 0.0);
  CHECK(zero.first.rhs == doctest::Approx(0.0));
  const auto one = check_lemma_hohe(1, 1.0);
  CHECK(one.second.rhs == doctest::Approx(0.5 * (-std::log(2.0) + 0.5)));
  CHECK(one.second.pass);
  for (auto [m, a] : std::vector<std::pair<int, double>>{{3, 2.5}, {50, 0.05}, {7, 10.0}, {20, 0.9}}) {
    const auto h = check_lemma_hohe(m, a);
    CHECK(h.first.pass);
    CHECK(h.second.pass);
  }
  const auto wide = check_lemma_hohe(33, 7.74);
  CHECK(std::abs(wide.first.rhs) > 1e20);
  CHECK(wide.first.pass);
  CHECK(wide.first.tolerance == doctest::Approx(1e-9 * std::abs(wide.first.rhs)));
  CHECK(wide.second.tolerance == 1e-9);
  CHECK_THROWS(check_lemma_hohe(2, 0.0));
  CHECK_THROWS(check_lemma_hohe(51, 1.0));
}

TEST_CASE("positivity lemma: coefficients, growth, expansion") {
  Lem1Instance flat;
  flat.terms = 1;
  flat.angles = 2;
  flat.power = 3;
  flat.c = Eigen::MatrixXd::Zero(1, 3);
  flat.d = Eigen::MatrixXd::Zero(1, 3);
  flat.c(0, 0) = 0.7;
  flat.d(0, 0) = 1.1;
  const double f0 = lem1_function(flat, 0.0);
  CHECK(lem1_function(flat, 2.0) == doctest::Approx(f0));
  CHECK(f0 == doctest::Approx(std::pow(0.49, 3) * 4 * kPi * kPi));
  CHECK(check_lemma_lem1(flat).pass);
  for (std::uint64_t i = 0; i < 30; ++i) {
    const auto inst = random_lem1_instance(3, i);
    REQUIRE(lem1_min_coefficient(inst) >= -1e-12);
    REQUIRE(lem1_function(inst, 0.0) <= lem1_function(inst, 1.0) + 1e-10);
    REQUIRE(lem1_function(inst, 1.0) <= lem1_function(inst, 2.0) + 1e-10);
    REQUIRE(check_lemma_lem1(inst).pass);
  }
}

TEST_CASE("ratio order equivalence") {
  Eigen::VectorXcd phi(3);
  phi << 1.0, Complex(0.0, 2.0), -0.5;
  Eigen::VectorXcd psi(3);
  psi << 0.3, 0.1, Complex(1.0, 1.0);
  const auto id = check_lemma_le2(phi, psi, Eigen::MatrixXcd::Identity(3, 3));
  CHECK(id.pass);
  CHECK(id.lhs == 1.0);
  const auto zero = check_lemma_le2(phi, psi, Eigen::MatrixXcd::Zero(3, 3));
  CHECK(zero.pass);
  CHECK(zero.rhs == 1.0);
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(3, 3);
  a(0, 0) = 0.9;
  a(2, 2) = 0.2;
  CHECK(check_lemma_le2(phi, psi, a).pass);
  CHECK(check_lemma_le2(phi, phi * 1.000000001, a).pass);
  CHECK_THROWS(check_lemma_le2(phi, psi, 2.0 * Eigen::MatrixXcd::Identity(3, 3)));
  const auto batch = check_lemma_le2_batch(3000, 4);
  CHECK(batch.pass);
  CHECK(batch.lhs == 3000.0);
}

TEST_CASE("overlap marginal matches Beta") {
  CHECK(check_overlap_marginal(2, 1).pass);
  CHECK(check_overlap_marginal(3, 4).pass);
  CHECK(check_overlap_marginal(16, 10000).pass);
}

TEST_CASE("divergence quadrature") {
  CHECK(kl_divergence_quadrature(2, 1, 0.0) == 0.0);
  CHECK(kl_divergence_quadrature(2, 1, kPi / 4) == doctest::Approx(0.5).epsilon(1e-6));
  const auto r = check_kl_formula(3, 2, 0.5);
  CHECK(r.pass);
  CHECK(r.rhs == doctest::Approx(2.0 * (std::pow(std::sin(0.5), 2) + std::pow(std::sin(0.5), 4) / 2)));
  CHECK_THROWS(check_kl_formula(2, 4, 0.5));
}

TEST_CASE("Fisher scaling") {
  const auto a = check_fisher_scaling(2, 1);
  CHECK(a.pass);
  CHECK(a.rhs == 2.0);
  const auto b = check_fisher_scaling(3, 2);
  CHECK(b.pass);
  CHECK(b.lhs == doctest::Approx(4.0).epsilon(1e-3));
  const auto c = check_fisher_scaling(2, 4);
  CHECK(c.lhs == doctest::Approx(4.0 * a.lhs).epsilon(1e-3));
}

TEST_CASE("qubit tail closed form") {
  CHECK(check_tail_qubit(1).pass);
  CHECK(check_tail_qubit(1000).pass);
}

TEST_CASE("covariant families are never better than the product seed") {
  CovariantSeed product{{Complex(1.0, 0.0)}, {PureState::basis(2, 0)}};
  const auto base = covariant_family_error(product, 2, 20000, 1);
  CHECK(base.mean == doctest::Approx(0.25).epsilon(0.03));
  CHECK(std::abs(base.difference) < 1e-15);
  const auto r = check_covariant_optimality(2, 2, 20, 5000, 2);
  CHECK(r.pass);
  CHECK(r.lhs >= r.rhs - 0.02);
}

TEST_CASE("registry audit: every derived fact has a check in a suite") {
  const auto checks = run_suite("appendix", 1);
  std::set<std::string> produced;
  for (const auto& c : checks) produced.insert(prefix(c.lemma_id));
  for (const auto& fact : derived_fact_registry()) {
    INFO(fact.fact);
    CHECK(produced.count(fact.check) == 1);
  }
  for (const auto& id : appendix_check_ids()) CHECK(produced.count(id) == 1);
  for (const auto& c : checks) {
    INFO(c.lemma_id);
    CHECK(c.pass == (c.abs_diff <= c.tolerance));
  }
  CHECK_THROWS(run_suite("nope", 1));
}

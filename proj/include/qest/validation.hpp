#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qest/parallel.hpp"
#include "qest/statespace.hpp"

namespace qest {

struct LemmaCheckResult {
  std::string lemma_id;
  double lhs = 0.0;
  double rhs = 0.0;
  double abs_diff = 0.0;
  double tolerance = 0.0;
  bool pass = false;  // abs_diff <= tolerance
};

LemmaCheckResult make_check(std::string id, double lhs, double rhs, double tolerance);

// sum_i binom(n,i) (-1)^i / (m+i) == 1 / (m binom(m+n, n)) in exact rationals.
// Requires 1 <= n, m <= 12.
LemmaCheckResult check_lemma_to(int n, int m);

// The two logarithmic moment integrals on [0, 1-a] and [0, a/(1+a)] against
// their closed forms, tolerance 1e-9 times max(1, |rhs|). Requires 0 <= m <= 50, 0 < a <= 10.
struct HoheCheck {
  LemmaCheckResult first;
  LemmaCheckResult second;
};
HoheCheck check_lemma_hohe(int m, double a);

// Coefficients for the positivity lemma: the function
//   f(x) = int_{T^k} |sum_a (c_a^0 e^{i d_a^0} + x sum_j c_a^j e^{i(theta_j + d_a^j)})^n|^2
// c and d are terms x (k+1).
struct Lem1Instance {
  int terms = 1;   // m
  int angles = 1;  // k
  int power = 1;   // n
  Eigen::MatrixXd c;
  Eigen::MatrixXd d;
};

// Random instance with terms, angles <= 3 and power <= 4.
Lem1Instance random_lem1_instance(std::uint64_t seed, std::uint64_t index);

// Torus integral of f by the periodic trapezoid rule (exact for these
// trigonometric polynomials).
double lem1_function(const Lem1Instance& inst, double x);
// (2 pi)^k sum_I C(I)^2 D(I) x^(2n - 2 I_0).
double lem1_expansion(const Lem1Instance& inst, double x);
// min over multi-indices of D(I), from the double-sum definition.
double lem1_min_coefficient(const Lem1Instance& inst);

// Three conditions, each divided by its own tolerance: min D(I) >= -1e-12,
// f non-decreasing on a grid of [0, 4] within 1e-10 (relative), and the
// torus integral equal to the expansion within 1e-10 (relative). abs_diff
// is the worst normalised violation and tolerance is 1. lhs = min D(I),
// rhs = smallest grid increment.
LemmaCheckResult check_lemma_lem1(const Lem1Instance& inst);

// Boolean equivalence of
//   <phi|A|phi>/<phi|phi> >= <psi|A|psi>/<psi|psi>
//   <phi|A|phi><psi|1-A|psi> >= <psi|A|psi><phi|1-A|phi>
// Near-ties (within 1e-12 relative) count as agreement. lhs and rhs are the
// two booleans as 0/1.
LemmaCheckResult check_lemma_le2(const Eigen::VectorXcd& phi, const Eigen::VectorXcd& psi,
                                 const Eigen::MatrixXcd& a);
// `count` random instances (a third of them near the boundary). lhs is the
// number of agreements, rhs the count.
LemmaCheckResult check_lemma_le2_batch(std::int64_t count, std::uint64_t seed,
                                       const Execution& exec = {});

// Sup over a 1001-point grid of the difference between the cumulative
// quadrature of the angular marginal and Beta(n+1, k-1); the pdf used by
// the sampler is integrated and compared too. Tolerance 1e-9.
LemmaCheckResult check_overlap_marginal(int k, std::int64_t n);

// KL divergence between the m-copy outcome laws at states eps apart by
// quadrature in the reduced angles, against m sum_{i<=m} sin^{2i}(eps)/i.
// Relative tolerance 1e-3 (abs_diff is relative).
double kl_divergence_quadrature(int k, int m, double eps);
LemmaCheckResult check_kl_formula(int k, int m, double eps);

// Richardson limit of 2 KL(eps)/eps^2 at eps = 0.1, 0.05, 0.025 against 2m.
// Relative tolerance 1e-3.
LemmaCheckResult check_fisher_scaling(int k, int m);

// tail_probability(2, n, eps) against cos^{2(n+1)} eps, sup over a grid.
LemmaCheckResult check_tail_qubit(std::int64_t n);

// Covariant measurement family g P0 g^dagger (times the symmetric-subspace
// dimension) seeded by Psi = sum_i c_i phi_i^{(x)n}. Error is the mean
// squared Bures distance, by Monte Carlo over Haar g.
struct CovariantSeed {
  std::vector<Complex> coefficients;
  std::vector<PureState> vectors;
};

CovariantSeed random_covariant_seed(int k, std::uint64_t seed, std::uint64_t index);

struct CovariantError {
  double mean = 0.0;       // estimated error of the seeded family
  double std_error = 0.0;
  double difference = 0.0;  // mean minus the product-seed estimate (common g samples)
  double difference_std_error = 0.0;
};

CovariantError covariant_family_error(const CovariantSeed& seed_state, int n,
                                      std::int64_t samples, std::uint64_t seed);

// 200 random seeds for k = 2, n = 2 with 1e4 rotations each; passes when
// every family is no better than the optimal value (k-1)/(n+k) minus 1e-9
// beyond three standard errors of the common-sample difference.
// lhs = smallest mean error, rhs = (k-1)/(n+k).
LemmaCheckResult check_covariant_optimality(int k, int n, int seeds, std::int64_t samples,
                                            std::uint64_t seed, const Execution& exec = {});

struct DerivedFact {
  std::string fact;
  std::string used_by;
  std::string check;  // lemma_id prefix of the check covering it
};

std::vector<DerivedFact> derived_fact_registry();

// lemma_id prefixes produced by run_suite("appendix").
std::vector<std::string> appendix_check_ids();

// Suites: "appendix" (all lemma checks) and "optimality".
std::vector<LemmaCheckResult> run_suite(const std::string& suite, std::uint64_t seed,
                                        const Execution& exec = {});
std::vector<std::string> suite_names();

}  // namespace qest

#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "qest/quadrature.hpp"

namespace qest {

// Deviation measures of the form W = h(d_fs) with h non-decreasing.
struct BuresPower {
  double gamma;  // W = d_b^gamma = sin^gamma(d_fs)
};
struct FsSquared {};  // W = d_fs^2
struct BallIndicator {
  double eps;  // W = 1{d_fs >= eps}
};

class DeviationMeasure {
 public:
  using Kind = std::variant<BuresPower, FsSquared, BallIndicator>;

  static DeviationMeasure bures_power(double gamma);
  static DeviationMeasure fs_squared();
  static DeviationMeasure ball_indicator(double eps);

  const Kind& kind() const { return kind_; }
  // h evaluated at a Fubini-Study distance theta in [0, pi/2].
  double operator()(double fs_dist) const;
  std::string name() const;

 private:
  explicit DeviationMeasure(Kind kind) : kind_(kind) {}
  Kind kind_;
};

// Exact mean d_b^gamma error of the optimal measurement:
// Gamma(n+k)/Gamma(n+k+gamma/2) * Gamma(k-1+gamma/2)/Gamma(k-1).
double mse_bures_gamma(int k, std::int64_t n, double gamma);

// n times the exact mean d_fs^2 error, from the arcsin^2 power series
// theta^2 = sum_i (2i-2)!!/((2i-1)!! i) sin^(2i) theta applied termwise to
// mse_bures_gamma(k, n, 2i). Stops once a term is below tol and i > 8.
double mse_fs2_series(int k, std::int64_t n, double tol = 1e-15);

// Three-term large-n expansion of n times the mean d_fs^2 error.
double mse_fs2_asymptotic(int k, std::int64_t n);

// Pr{d_fs(rho, outcome) >= eps} = I_{cos^2 eps}(n + 1, k - 1).
double tail_probability(int k, std::int64_t n, double eps);
double log_tail_probability(int k, std::int64_t n, double eps);

// Large-n expansion of (1/n) log Pr{d_fs >= eps} through order 1/n^2.
double tail_log_asymptotic(int k, std::int64_t n, double eps);

// (1 / (eps^2 n)) log Pr{d_fs >= eps}.
double ld_rate(int k, std::int64_t n, double eps);

// Mean error 2(k-1) C(n+k-1,k-1) int_0^{pi/2} h(theta) cos^(2n+1) sin^(2k-3)
// by adaptive quadrature. `error` carries the achieved bound; callers must
// check `converged`.
QuadratureResult generic_error_quadrature(int k, std::int64_t n, const DeviationMeasure& w,
                                          const QuadratureOptions& opts = {});

}  // namespace qest

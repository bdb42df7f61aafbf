#include "qest/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

namespace qest {

double log_multiplicity(std::int64_t n, int k) {
  if (n < 0 || k < 1) throw std::invalid_argument("log_multiplicity: need n >= 0, k >= 1");
  double s = 0.0;
  const auto nd = static_cast<double>(n);
  for (int i = 1; i < k; ++i) s += std::log1p(nd / i);
  return s;
}

double multiplicity(std::int64_t n, int k) { return std::exp(log_multiplicity(n, k)); }

double gamma_ratio(double x, double delta) { return boost::math::tgamma_delta_ratio(x, delta); }

double log_beta(double a, double b) {
  if (!(a > 0.0 && b > 0.0)) throw std::invalid_argument("log_beta: parameters must be positive");
  if (a < b) std::swap(a, b);
  if (b > 64.0) return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  return std::lgamma(b) + std::log(gamma_ratio(a, b));
}

namespace {

constexpr double kTiny = 1e-300;

// Continued fraction for I_x(a, b) * a * B(a, b) / (x^a (1-x)^b).
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIter = 200000;
  constexpr double kEps = 1e-16;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw std::runtime_error("incomplete beta continued fraction did not converge");
}

// log of x^a (1-x)^b / (a B(a, b)) * CF, valid on the direct side of the switch.
double log_direct(double a, double b, double x) {
  return a * std::log(x) + b * std::log1p(-x) - log_beta(a, b) - std::log(a) +
         std::log(beta_continued_fraction(a, b, x));
}

void check_args(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0)) throw std::invalid_argument("incomplete beta: a, b must be positive");
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("incomplete beta: x outside [0, 1]");
}

}  // namespace

double log_incomplete_beta(double a, double b, double x) {
  check_args(a, b, x);
  if (x == 0.0) return -std::numeric_limits<double>::infinity();
  if (x == 1.0) return 0.0;
  if (x < (a + 1.0) / (a + b + 2.0)) return log_direct(a, b, x);
  return std::log1p(-std::exp(log_direct(b, a, 1.0 - x)));
}

double incomplete_beta(double a, double b, double x) {
  check_args(a, b, x);
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  if (x < (a + 1.0) / (a + b + 2.0)) return std::exp(log_direct(a, b, x));
  return -std::expm1(log_direct(b, a, 1.0 - x));
}

}  // namespace qest

#include "qest/closed_form.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qest/special.hpp"
#include "qest/statespace.hpp"

namespace qest {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

void require_copies(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("copy count n must be at least 1");
}

void require_radius(double eps) {
  if (!(eps > 0.0 && eps < kHalfPi)) throw std::invalid_argument("radius eps must lie in (0, pi/2)");
}

}  // namespace

DeviationMeasure DeviationMeasure::bures_power(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw std::invalid_argument("Bures exponent must be positive");
  }
  return DeviationMeasure(BuresPower{gamma});
}

DeviationMeasure DeviationMeasure::fs_squared() { return DeviationMeasure(FsSquared{}); }

DeviationMeasure DeviationMeasure::ball_indicator(double eps) {
  require_radius(eps);
  return DeviationMeasure(BallIndicator{eps});
}

double DeviationMeasure::operator()(double fs_dist) const {
  struct Visitor {
    double theta;
    double operator()(const BuresPower& b) const { return std::pow(std::sin(theta), b.gamma); }
    double operator()(const FsSquared&) const { return theta * theta; }
    double operator()(const BallIndicator& ball) const { return theta >= ball.eps ? 1.0 : 0.0; }
  };
  return std::visit(Visitor{fs_dist}, kind_);
}

std::string DeviationMeasure::name() const {
  struct Visitor {
    std::string operator()(const BuresPower& b) const {
      if (b.gamma == 2.0) return "bures2";
      std::ostringstream os;
      os << "buresgamma=" << b.gamma;
      return os.str();
    }
    std::string operator()(const FsSquared&) const { return "fs2"; }
    std::string operator()(const BallIndicator&) const { return "ball"; }
  };
  return std::visit(Visitor{}, kind_);
}

double mse_bures_gamma(int k, std::int64_t n, double gamma) {
  require_dimension(k);
  require_copies(n);
  if (!(gamma > 0.0)) throw std::invalid_argument("Bures exponent must be positive");
  const double half = gamma / 2.0;
  return gamma_ratio(static_cast<double>(n + k), half) / gamma_ratio(k - 1.0, half);
}

double mse_fs2_series(int k, std::int64_t n, double tol) {
  require_dimension(k);
  require_copies(n);
  if (!(tol > 0.0 && tol <= 1e-6)) throw std::invalid_argument("series tolerance must lie in (0, 1e-6]");
  constexpr int kMinTerms = 8;
  constexpr int kMaxTerms = 10'000'000;
  const auto nd = static_cast<double>(n);
  double double_factorial_ratio = 1.0;  // (2i-2)!! / (2i-1)!!
  double product = 1.0;                 // prod_{j<i} (k-1+j)/(n+k+j)
  double sum = 0.0;
  for (int i = 1; i <= kMaxTerms; ++i) {
    if (i > 1) double_factorial_ratio *= (2.0 * i - 2.0) / (2.0 * i - 1.0);
    product *= (k - 1.0 + (i - 1)) / (nd + k + (i - 1));
    const double term = double_factorial_ratio / i * product * nd;
    sum += term;
    if (term < tol && i > kMinTerms) return sum;
  }
  throw std::runtime_error("fs^2 series did not reach tolerance");
}

double mse_fs2_asymptotic(int k, std::int64_t n) {
  require_dimension(k);
  require_copies(n);
  const double kd = k;
  const auto nd = static_cast<double>(n);
  return (kd - 1.0) - (2.0 / 3.0) * kd * (kd - 1.0) / nd +
         kd * (kd - 1.0) * (23.0 * kd - 7.0) / 45.0 / (nd * nd);
}

double tail_probability(int k, std::int64_t n, double eps) {
  require_dimension(k);
  require_copies(n);
  require_radius(eps);
  const double c = std::cos(eps);
  return incomplete_beta(static_cast<double>(n) + 1.0, k - 1.0, c * c);
}

double log_tail_probability(int k, std::int64_t n, double eps) {
  require_dimension(k);
  require_copies(n);
  require_radius(eps);
  const double c = std::cos(eps);
  return log_incomplete_beta(static_cast<double>(n) + 1.0, k - 1.0, c * c);
}

double tail_log_asymptotic(int k, std::int64_t n, double eps) {
  require_dimension(k);
  require_copies(n);
  require_radius(eps);
  const double kd = k;
  const auto nd = static_cast<double>(n);
  const double log_cos = std::log(std::cos(eps));
  const double log_sin = std::log(std::sin(eps));
  const double cot = 1.0 / std::tan(eps);
  const double first = (kd - 2.0) * std::log(nd) / nd;
  // -log (k-2)! + 2(k-2) log sin eps + 2 log cos eps
  const double constant = -std::lgamma(kd - 1.0) + 2.0 * (kd - 2.0) * log_sin + 2.0 * log_cos;
  const double second = (kd * kd - kd - 2.0) / 2.0 + (kd - 2.0) * cot * cot;
  return 2.0 * log_cos + first + constant / nd + second / (nd * nd);
}

double ld_rate(int k, std::int64_t n, double eps) {
  return log_tail_probability(k, n, eps) / (eps * eps * static_cast<double>(n));
}

QuadratureResult generic_error_quadrature(int k, std::int64_t n, const DeviationMeasure& w,
                                          const QuadratureOptions& opts) {
  require_dimension(k);
  require_copies(n);
  const double log_front = std::log(2.0 * (k - 1.0)) + log_multiplicity(n, k);
  const double cos_power = 2.0 * static_cast<double>(n) + 1.0;
  const double sin_power = 2.0 * k - 3.0;
  auto integrand = [&](double theta) {
    const double h = w(theta);
    if (h == 0.0) return 0.0;
    return h * std::exp(log_front + cos_power * std::log(std::cos(theta)) +
                        sin_power * std::log(std::sin(theta)));
  };
  double lower = 0.0;
  if (const auto* ball = std::get_if<BallIndicator>(&w.kind())) lower = ball->eps;
  return integrate(integrand, lower, kHalfPi, opts);
}

}  // namespace qest

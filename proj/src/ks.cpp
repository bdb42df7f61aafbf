#include "qest/ks.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qest {

namespace {

double stephens_lambda(double d, double ne) {
  const double root = std::sqrt(ne);
  return (root + 0.12 + 0.11 / root) * d;
}

KsStatistic finish(double d, double ne) {
  KsStatistic out;
  out.statistic = d;
  out.effective_size = ne;
  out.p_value = kolmogorov_survival(stephens_lambda(d, ne));
  out.critical_value = ks_critical_value(ne);
  out.pass = out.p_value > 0.01;
  return out;
}

}  // namespace

double kolmogorov_survival(double lambda) {
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int j = 1; j <= 200; ++j) {
    const double term = sign * std::exp(-2.0 * j * j * lambda * lambda);
    sum += term;
    if (std::abs(term) < 1e-16 * std::abs(sum)) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

double ks_critical_value(double effective_size, double alpha) {
  if (!(effective_size > 0.0)) throw std::invalid_argument("KS effective size must be positive");
  // Invert Q(lambda) = alpha by bisection, then undo the Stephens scaling.
  double lo = 0.2;
  double hi = 5.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (kolmogorov_survival(mid) > alpha) lo = mid;
    else hi = mid;
  }
  const double root = std::sqrt(effective_size);
  return 0.5 * (lo + hi) / (root + 0.12 + 0.11 / root);
}

KsStatistic ks_one_sample(std::vector<double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw std::invalid_argument("KS test needs a nonempty sample");
  std::sort(sample.begin(), sample.end());
  const auto n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return finish(d, n);
}

KsStatistic ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("KS test needs nonempty samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const auto na = static_cast<double>(a.size());
  const auto nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  return finish(d, na * nb / (na + nb));
}

}  // namespace qest

#pragma once

#include <functional>
#include <span>
#include <vector>

namespace qest {

struct KsStatistic {
  double statistic = 0.0;       // sup |F_a - F_b|
  double effective_size = 0.0;  // n for one-sample, n m / (n + m) for two-sample
  double p_value = 1.0;
  double critical_value = 0.0;  // at the 1% level
  bool pass = true;             // p_value > 0.01
};

// Kolmogorov limiting survival function Q(lambda) = 2 sum (-1)^(j-1) e^(-2 j^2 lambda^2).
double kolmogorov_survival(double lambda);

// The 1% critical value of sup|F_n - F| for effective size ne, with the
// Stephens small-sample correction.
double ks_critical_value(double effective_size, double alpha = 0.01);

KsStatistic ks_one_sample(std::vector<double> sample, const std::function<double(double)>& cdf);
KsStatistic ks_two_sample(std::vector<double> a, std::vector<double> b);

}  // namespace qest

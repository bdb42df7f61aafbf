#pragma once

#include <cstdint>

namespace qest {

// log C(n + k - 1, k - 1), summed as sum_{i=1}^{k-1} log((n + i) / i).
double log_multiplicity(std::int64_t n, int k);
// C(n + k - 1, k - 1) as a double.
double multiplicity(std::int64_t n, int k);

// Gamma(x) / Gamma(x + delta), accurate for large x.
double gamma_ratio(double x, double delta);
// log B(a, b).
double log_beta(double a, double b);

// Regularised incomplete beta I_x(a, b) and its logarithm. Continued
// fraction (modified Lentz) with the symmetry switch
// I_x(a, b) = 1 - I_{1-x}(b, a) at x >= (a + 1) / (a + b + 2).
double incomplete_beta(double a, double b, double x);
double log_incomplete_beta(double a, double b, double x);

}  // namespace qest

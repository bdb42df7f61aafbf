#include "qest/optimal_measurement.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qest/special.hpp"

namespace qest {

OutcomeDistribution::OutcomeDistribution(PureState rho, std::int64_t n)
    : rho_(std::move(rho)), n_(n) {
  require_dimension(rho_.dimension());
  if (n_ < 1) throw std::invalid_argument("copy count n must be at least 1");
  multiplicity_ = qest::multiplicity(n_, rho_.dimension());
}

double outcome_density(const OutcomeDistribution& dist, const PureState& candidate) {
  const double t = overlap(dist.state(), candidate);
  if (t == 0.0) return 0.0;
  return std::exp(log_multiplicity(dist.copies(), dist.dimension()) +
                  static_cast<double>(dist.copies()) * std::log(t));
}

double overlap_marginal_pdf(int k, std::int64_t n, double t) {
  require_dimension(k);
  if (n < 1) throw std::invalid_argument("copy count n must be at least 1");
  if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("overlap t outside [0, 1]");
  if (t == 0.0) return 0.0;
  if (t == 1.0) return k == 2 ? (k - 1) * multiplicity(n, k) : 0.0;
  return std::exp(std::log(k - 1.0) + log_multiplicity(n, k) +
                  static_cast<double>(n) * std::log(t) + (k - 2) * std::log1p(-t));
}

PureState sample_outcome(const OutcomeDistribution& dist, RandomStream& rng) {
  const PureState& rho = dist.state();
  const double x = rng.gamma(static_cast<double>(dist.copies()) + 1.0);
  const double y = rng.gamma(dist.dimension() - 1.0);
  const double t = x / (x + y);
  const PureState psi = orthogonal_complement_sample(rho, rng);
  const double alpha = 2.0 * std::numbers::pi * rng.uniform();
  const Eigen::VectorXcd v = std::sqrt(t) * std::polar(1.0, alpha) * rho.amplitudes() +
                             std::sqrt(1.0 - t) * psi.amplitudes();
  return PureState::normalized(v);
}

PureState sample_outcome_random_basis(const PureState& rho, RandomStream& rng) {
  const int k = rho.dimension();
  const Unitary g = haar_unitary(k, rng);
  const Eigen::VectorXcd amps = g.matrix().adjoint() * rho.amplitudes();
  double u = rng.uniform() * amps.squaredNorm();
  for (int i = 0; i < k - 1; ++i) {
    u -= std::norm(amps[i]);
    if (u < 0.0) return g.column(i);
  }
  return g.column(k - 1);
}

}  // namespace qest

#pragma once

#include <cstdint>

#include "qest/rng.hpp"
#include "qest/statespace.hpp"

namespace qest {

// Outcome law of the optimal covariant measurement on n copies of rho.
// Against the invariant measure the outcome density is
// C(n+k-1, k-1) * |<rho|candidate>|^(2n); the overlap t = |<rho|outcome>|^2
// is then Beta(n + 1, k - 1) distributed (substitute t = cos^2(theta) in the
// angular marginal 2(k-1) C(n+k-1,k-1) cos^(2n+1) sin^(2k-3)).
class OutcomeDistribution {
 public:
  OutcomeDistribution(PureState rho, std::int64_t n);

  int dimension() const { return rho_.dimension(); }
  std::int64_t copies() const { return n_; }
  const PureState& state() const { return rho_; }
  // C(n + k - 1, k - 1).
  double multiplicity() const { return multiplicity_; }

 private:
  PureState rho_;
  std::int64_t n_;
  double multiplicity_;
};

double outcome_density(const OutcomeDistribution& dist, const PureState& candidate);

// Beta(n + 1, k - 1) density (k-1) C(n+k-1,k-1) t^n (1-t)^(k-2).
double overlap_marginal_pdf(int k, std::int64_t n, double t);

// Exact sampler: t ~ Beta(n+1, k-1), psi uniform in rho's orthogonal
// complement, alpha uniform; returns sqrt(t) e^{i alpha} rho + sqrt(1-t) psi.
PureState sample_outcome(const OutcomeDistribution& dist, RandomStream& rng);

// Single-copy realisation: draw a Haar unitary, measure rho in its column
// basis, report the selected column.
PureState sample_outcome_random_basis(const PureState& rho, RandomStream& rng);

}  // namespace qest

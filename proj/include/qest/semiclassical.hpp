#pragma once

#include <cstdint>
#include <vector>

#include "qest/rng.hpp"
#include "qest/statespace.hpp"

namespace qest {

// n_batches groups of m copies, each group measured with the optimal
// m-copy measurement. Total copies = n_batches * m.
struct SemiclassicalConfig {
  int m = 1;
  std::int64_t n_batches = 1;

  void validate() const;
  std::int64_t total_copies() const { return m * n_batches; }
};

class BatchData {
 public:
  BatchData(std::vector<PureState> outcomes, int m);

  int dimension() const { return outcomes_.front().dimension(); }
  int batch_size() const { return m_; }
  std::size_t size() const { return outcomes_.size(); }
  const std::vector<PureState>& outcomes() const { return outcomes_; }

 private:
  std::vector<PureState> outcomes_;
  int m_;
};

struct EstimatorOptions {
  int max_iterations = 500;
  double convergence_tol = 1e-10;  // Fubini-Study radians
  int restarts = 0;
  std::uint64_t restart_seed = 0;

  void validate() const;
};

// D_m(eps) / m = sum_{i=1}^m sin^(2i)(eps) / i.
double kl_divergence_per_copy(int m, double eps);
// -m log cos^2(eps) - D_m(eps).
double first_order_gap(int m, double eps);
// sqrt(2m) * d_fs.
double fisher_geodesic_distance(int m, double fs_dist);

BatchData run_batched_measurement(const PureState& rho, const SemiclassicalConfig& config,
                                  RandomStream& rng);

// m * sum_j log |<phi|outcome_j>|^2, or -inf if some outcome is orthogonal
// to phi.
double log_likelihood(const PureState& phi, const BatchData& data);

struct SpectralEstimate {
  PureState state;
  double eigenvalue;
  bool degenerate;
};

// Dominant eigenvector of the mean outcome projector by power iteration.
// Ties are broken by starting from the lowest-index basis vector with the
// largest diagonal entry; the second eigenvalue is found by deflation and a
// gap below 1e-12 sets `degenerate`.
SpectralEstimate spectral_estimate(const BatchData& data);

struct MleResult {
  PureState state;
  double log_likelihood;
  double initial_log_likelihood;  // at the spectral initializer
  int iterations;
  bool converged;
};

// Maximum-likelihood state by the fixed-point map
// phi <- normalize(sum_j P_j phi / <phi|P_j|phi>), started at the spectral
// estimate. A step that would lower the likelihood is diluted toward phi
// (halving) until it does not, so the likelihood never decreases.
MleResult mle_estimate(const BatchData& data, const EstimatorOptions& opts = {});

}  // namespace qest

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qest/closed_form.hpp"
#include "qest/ks.hpp"
#include "qest/parallel.hpp"
#include "qest/semiclassical.hpp"

namespace qest {

struct ExperimentConfig {
  int k = 2;
  // Copies for collective experiments; batch count for compare_protocols,
  // where the copy budget is n * m.
  std::int64_t n = 1;
  int m = 1;
  std::int64_t trials = 100000;
  std::optional<double> eps;
  std::uint64_t seed = 1;
  DeviationMeasure deviation = DeviationMeasure::bures_power(2.0);

  static constexpr std::int64_t kMinTrials = 100;

  void validate() const;
};

enum class Provenance { kMonteCarlo, kClosedForm, kAsymptotic };

std::string to_string(Provenance p);

struct ErrorReport {
  std::string experiment;
  int k = 0;
  std::int64_t n = 0;
  int m = 1;
  std::optional<double> eps;
  std::int64_t trials_used = 0;
  std::uint64_t seed = 0;

  double estimate = 0.0;
  double std_error = 0.0;
  Provenance estimate_provenance = Provenance::kMonteCarlo;
  std::optional<double> reference;
  Provenance reference_provenance = Provenance::kClosedForm;
  // Binomial estimates: standard error implied by the reference, used for
  // the band so that zero hits do not collapse it.
  std::optional<double> band_std_error;
  // Set when the event is too rare for plain Monte Carlo and the estimate
  // is the analytic value.
  bool analytic_only = false;

  // |estimate - reference| / std_error; nullopt without a reference or
  // with zero standard error.
  std::optional<double> sigma_units() const;
  // True when the reference is exact and the estimate lies within
  // `sigmas` standard errors of it (asymptotic references always pass).
  bool within_band(double sigmas = 3.0) const;
};

// The fixed true state of an experiment, drawn from the seed.
PureState experiment_truth(int k, std::uint64_t seed);

// Mean W(rho, outcome) of the optimal measurement on n copies. The
// reference is mse_bures_gamma, mse_fs2_series / n or tail_probability.
ErrorReport estimate_collective_error(const ExperimentConfig& config, const Execution& exec = {});

// Frequency of d_fs >= eps against tail_probability, binomial error. Below
// kEmpiricalTailFloor the report is analytic only.
ErrorReport estimate_tail(const ExperimentConfig& config, const Execution& exec = {});

// (1/(eps^2 n)) log of the empirical tail frequency against ld_rate. Falls
// back to the analytic value when the exact tail is below 1e-4 or no trial
// hits the tail.
ErrorReport estimate_ld_rate(const ExperimentConfig& config, const Execution& exec = {});

inline constexpr double kEmpiricalTailFloor = 1e-4;

struct ProtocolComparison {
  ErrorReport collective;     // n m * mean d_fs^2 of the optimal measurement on n m copies
  ErrorReport semiclassical;  // n m * mean d_fs^2 of batched measurement + MLE
  std::optional<ErrorReport> collective_tail;
  std::optional<ErrorReport> semiclassical_tail;
};

// Optimal collective measurement on n*m copies against n batches of m
// copies followed by maximum likelihood, on shared truth and seed.
ProtocolComparison compare_protocols(const ExperimentConfig& config, const Execution& exec = {},
                                     const EstimatorOptions& mle = {});

// Registered samplers of overlap with the true state:
//   "optimal"          sample_outcome with n copies
//   "random_basis"     sample_outcome_random_basis (requires n = 1)
//   "optimal_rotated"  sample_outcome for U rho, overlap with U rho
//   "haar_state"       haar_state
// Reference CDFs: "beta" (Beta(n+1, k-1)) or "beta:A:B".
struct KsRequest {
  std::string sampler_a;
  std::string sampler_b;  // sampler id or reference CDF id
  int k = 2;
  std::int64_t n = 1;
  std::int64_t trials = 100000;
  std::uint64_t seed = 1;
};

struct KsOutcome {
  KsRequest request;
  KsStatistic result;
  bool two_sample = false;
};

std::vector<std::string> registered_samplers();
KsOutcome ks_overlap_test(const KsRequest& request, const Execution& exec = {});

// Overlap samples of one registered sampler; stream tag separates a / b.
std::vector<double> draw_overlaps(const std::string& sampler, int k, std::int64_t n,
                                  std::int64_t trials, std::uint64_t seed, StreamTag tag,
                                  const Execution& exec = {});

}  // namespace qest

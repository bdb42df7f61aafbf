#include "qest/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qest/optimal_measurement.hpp"
#include "qest/special.hpp"

namespace qest {

namespace {

RandomStream trial_stream(std::uint64_t seed, StreamTag tag, std::int64_t index) {
  return RandomStream(seed, stream_id(tag, static_cast<std::uint64_t>(index)));
}

ErrorReport make_report(const std::string& name, const ExperimentConfig& c) {
  ErrorReport r;
  r.experiment = name;
  r.k = c.k;
  r.n = c.n;
  r.m = c.m;
  r.eps = c.eps;
  r.trials_used = c.trials;
  r.seed = c.seed;
  return r;
}

double require_eps(const ExperimentConfig& c) {
  if (!c.eps) throw std::invalid_argument("this experiment needs a radius eps");
  return *c.eps;
}

std::vector<double> tail_indicators(const ExperimentConfig& c, const Execution& exec) {
  const double eps = require_eps(c);
  const PureState rho = experiment_truth(c.k, c.seed);
  const OutcomeDistribution dist(rho, c.n);
  return run_trials(c.trials, exec, [&](std::int64_t i) {
    RandomStream rng = trial_stream(c.seed, StreamTag::kTail, i);
    return fs_distance(rho, sample_outcome(dist, rng)) >= eps ? 1.0 : 0.0;
  });
}

double binomial_error(double p, std::int64_t trials) {
  return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

void make_analytic(ErrorReport& r) {
  r.analytic_only = true;
  r.trials_used = 0;
  r.estimate = *r.reference;
  r.std_error = 0.0;
  r.band_std_error.reset();
  r.estimate_provenance = Provenance::kClosedForm;
}

}  // namespace

void ExperimentConfig::validate() const {
  require_dimension(k);
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  if (trials < kMinTrials) throw std::invalid_argument("trials must be at least 100");
  if (eps && !(*eps > 0.0 && *eps < std::numbers::pi / 2)) {
    throw std::invalid_argument("eps must lie in (0, pi/2)");
  }
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::kMonteCarlo: return "mc";
    case Provenance::kClosedForm: return "closed_form";
    case Provenance::kAsymptotic: return "asymptotic";
  }
  return "unknown";
}

std::optional<double> ErrorReport::sigma_units() const {
  const double se = band_std_error.value_or(std_error);
  if (!reference || !(se > 0.0)) return std::nullopt;
  return std::abs(estimate - *reference) / se;
}

bool ErrorReport::within_band(double sigmas) const {
  if (!reference || reference_provenance != Provenance::kClosedForm) return true;
  if (analytic_only) return true;
  const double se = band_std_error.value_or(std_error);
  if (!(se > 0.0)) return estimate == *reference;
  return std::abs(estimate - *reference) <= sigmas * se;
}

PureState experiment_truth(int k, std::uint64_t seed) {
  RandomStream rng(seed, stream_id(StreamTag::kTruth, 0));
  return haar_state(k, rng);
}

ErrorReport estimate_collective_error(const ExperimentConfig& c, const Execution& exec) {
  c.validate();
  const PureState rho = experiment_truth(c.k, c.seed);
  const OutcomeDistribution dist(rho, c.n);
  const DeviationMeasure& w = c.deviation;
  const auto values = run_trials(c.trials, exec, [&](std::int64_t i) {
    RandomStream rng = trial_stream(c.seed, StreamTag::kCollective, i);
    return w(fs_distance(rho, sample_outcome(dist, rng)));
  });
  const SampleMoments mom = sample_moments(values);

  ErrorReport r = make_report("mse", c);
  r.estimate = mom.mean;
  r.std_error = mom.std_error;
  r.reference_provenance = Provenance::kClosedForm;
  if (const auto* b = std::get_if<BuresPower>(&w.kind())) {
    r.reference = mse_bures_gamma(c.k, c.n, b->gamma);
  } else if (std::holds_alternative<FsSquared>(w.kind())) {
    r.reference = mse_fs2_series(c.k, c.n) / static_cast<double>(c.n);
  } else {
    const auto& ball = std::get<BallIndicator>(w.kind());
    r.reference = tail_probability(c.k, c.n, ball.eps);
    r.band_std_error = binomial_error(*r.reference, c.trials);
    r.eps = ball.eps;
  }
  return r;
}

ErrorReport estimate_tail(const ExperimentConfig& c, const Execution& exec) {
  c.validate();
  const double eps = require_eps(c);
  ErrorReport r = make_report("tail", c);
  r.reference = tail_probability(c.k, c.n, eps);
  r.reference_provenance = Provenance::kClosedForm;
  if (*r.reference < kEmpiricalTailFloor) {
    make_analytic(r);
    return r;
  }
  const auto hits = tail_indicators(c, exec);
  const double p = pairwise_sum(hits) / static_cast<double>(c.trials);
  r.estimate = p;
  r.std_error = binomial_error(p, c.trials);
  r.band_std_error = binomial_error(*r.reference, c.trials);
  return r;
}

ErrorReport estimate_ld_rate(const ExperimentConfig& c, const Execution& exec) {
  c.validate();
  const double eps = require_eps(c);
  const double scale = eps * eps * static_cast<double>(c.n);

  ErrorReport r = make_report("ldp", c);
  r.reference = ld_rate(c.k, c.n, eps);
  r.reference_provenance = Provenance::kClosedForm;

  const double exact_tail = tail_probability(c.k, c.n, eps);
  double p = 0.0;
  if (exact_tail >= kEmpiricalTailFloor) {
    const auto hits = tail_indicators(c, exec);
    p = pairwise_sum(hits) / static_cast<double>(c.trials);
  }
  if (p > 0.0) {
    r.estimate = std::log(p) / scale;
    r.std_error = std::sqrt((1.0 - p) / (static_cast<double>(c.trials) * p)) / scale;
  } else {
    make_analytic(r);
  }
  return r;
}

ProtocolComparison compare_protocols(const ExperimentConfig& c, const Execution& exec,
                                     const EstimatorOptions& mle) {
  c.validate();
  mle.validate();
  const std::int64_t total = c.n * c.m;
  const auto total_d = static_cast<double>(total);
  const PureState rho = experiment_truth(c.k, c.seed);
  const OutcomeDistribution collective_dist(rho, total);
  const SemiclassicalConfig batches{c.m, c.n};

  const auto collective_dist2 = run_trials(c.trials, exec, [&](std::int64_t i) {
    RandomStream rng = trial_stream(c.seed, StreamTag::kCollective, i);
    const double d = fs_distance(rho, sample_outcome(collective_dist, rng));
    return d * d;
  });
  const auto semiclassical_dist2 = run_trials(c.trials, exec, [&](std::int64_t i) {
    RandomStream rng = trial_stream(c.seed, StreamTag::kSemiclassical, i);
    const BatchData data = run_batched_measurement(rho, batches, rng);
    const MleResult est = mle_estimate(data, mle);
    const double d = fs_distance(rho, est.state);
    return d * d;
  });

  auto scaled_report = [&](const std::string& name, const std::vector<double>& dist2) {
    std::vector<double> scaled(dist2.size());
    for (std::size_t i = 0; i < dist2.size(); ++i) scaled[i] = total_d * dist2[i];
    const SampleMoments mom = sample_moments(scaled);
    ErrorReport r = make_report(name, c);
    r.estimate = mom.mean;
    r.std_error = mom.std_error;
    return r;
  };

  ProtocolComparison out{scaled_report("compare_collective", collective_dist2),
                         scaled_report("compare_semiclassical", semiclassical_dist2),
                         std::nullopt, std::nullopt};
  out.collective.reference = mse_fs2_asymptotic(c.k, total);
  out.collective.reference_provenance = Provenance::kAsymptotic;
  out.semiclassical.reference = c.k - 1.0;
  out.semiclassical.reference_provenance = Provenance::kAsymptotic;

  if (c.eps) {
    const double eps2 = *c.eps * *c.eps;
    auto tail_report = [&](const std::string& name, const std::vector<double>& dist2) {
      std::vector<double> hits(dist2.size());
      for (std::size_t i = 0; i < dist2.size(); ++i) hits[i] = dist2[i] >= eps2 ? 1.0 : 0.0;
      const double p = pairwise_sum(hits) / static_cast<double>(c.trials);
      ErrorReport r = make_report(name, c);
      r.estimate = p;
      r.std_error = binomial_error(p, c.trials);
      return r;
    };
    out.collective_tail = tail_report("compare_collective_tail", collective_dist2);
    auto& ct = *out.collective_tail;
    ct.reference = tail_probability(c.k, total, *c.eps);
    ct.reference_provenance = Provenance::kClosedForm;
    if (*ct.reference < kEmpiricalTailFloor) {
      make_analytic(ct);
    } else {
      ct.band_std_error = binomial_error(*ct.reference, c.trials);
    }
    out.semiclassical_tail = tail_report("compare_semiclassical_tail", semiclassical_dist2);
  }
  return out;
}

std::vector<std::string> registered_samplers() {
  return {"optimal", "random_basis", "optimal_rotated", "haar_state"};
}

std::vector<double> draw_overlaps(const std::string& sampler, int k, std::int64_t n,
                                  std::int64_t trials, std::uint64_t seed, StreamTag tag,
                                  const Execution& exec) {
  require_dimension(k);
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  if (trials < 1) throw std::invalid_argument("trials must be positive");
  const PureState rho = experiment_truth(k, seed);
  if (sampler == "optimal") {
    const OutcomeDistribution dist(rho, n);
    return run_trials(trials, exec, [&](std::int64_t i) {
      RandomStream rng = trial_stream(seed, tag, i);
      return overlap(rho, sample_outcome(dist, rng));
    });
  }
  if (sampler == "random_basis") {
    if (n != 1) throw std::invalid_argument("random_basis realises the single-copy measurement only (n = 1)");
    return run_trials(trials, exec, [&](std::int64_t i) {
      RandomStream rng = trial_stream(seed, tag, i);
      return overlap(rho, sample_outcome_random_basis(rho, rng));
    });
  }
  if (sampler == "optimal_rotated") {
    RandomStream rot(seed, stream_id(StreamTag::kRotation, 0));
    const PureState rotated = haar_unitary(k, rot).apply(rho);
    const OutcomeDistribution dist(rotated, n);
    return run_trials(trials, exec, [&](std::int64_t i) {
      RandomStream rng = trial_stream(seed, tag, i);
      return overlap(rotated, sample_outcome(dist, rng));
    });
  }
  if (sampler == "haar_state") {
    return run_trials(trials, exec, [&](std::int64_t i) {
      RandomStream rng = trial_stream(seed, tag, i);
      return overlap(rho, haar_state(k, rng));
    });
  }
  throw std::invalid_argument("unknown sampler id '" + sampler + "'");
}

namespace {

std::optional<std::pair<double, double>> parse_beta_reference(const std::string& id, int k,
                                                              std::int64_t n) {
  if (id == "beta") return std::pair{static_cast<double>(n) + 1.0, k - 1.0};
  if (id.rfind("beta:", 0) != 0) return std::nullopt;
  const auto second = id.find(':', 5);
  if (second == std::string::npos) throw std::invalid_argument("reference must look like beta:A:B");
  std::size_t used_a = 0;
  std::size_t used_b = 0;
  const std::string a_text = id.substr(5, second - 5);
  const std::string b_text = id.substr(second + 1);
  double a = 0.0;
  double b = 0.0;
  try {
    a = std::stod(a_text, &used_a);
    b = std::stod(b_text, &used_b);
  } catch (const std::exception&) {
    throw std::invalid_argument("reference must look like beta:A:B");
  }
  if (used_a != a_text.size() || used_b != b_text.size() || !(a > 0.0) || !(b > 0.0)) {
    throw std::invalid_argument("reference must look like beta:A:B with positive A, B");
  }
  return std::pair{a, b};
}

}  // namespace

KsOutcome ks_overlap_test(const KsRequest& req, const Execution& exec) {
  KsOutcome out;
  out.request = req;
  const auto samplers = registered_samplers();
  auto known = [&](const std::string& id) {
    return std::find(samplers.begin(), samplers.end(), id) != samplers.end();
  };
  if (!known(req.sampler_a)) throw std::invalid_argument("unknown sampler id '" + req.sampler_a + "'");
  auto a = draw_overlaps(req.sampler_a, req.k, req.n, req.trials, req.seed, StreamTag::kSamplerA, exec);
  if (const auto beta = parse_beta_reference(req.sampler_b, req.k, req.n)) {
    const auto [pa, pb] = *beta;
    out.result = ks_one_sample(std::move(a), [pa, pb](double t) {
      return incomplete_beta(pa, pb, std::clamp(t, 0.0, 1.0));
    });
    return out;
  }
  if (!known(req.sampler_b)) throw std::invalid_argument("unknown sampler id '" + req.sampler_b + "'");
  auto b = draw_overlaps(req.sampler_b, req.k, req.n, req.trials, req.seed, StreamTag::kSamplerB, exec);
  out.two_sample = true;
  out.result = ks_two_sample(std::move(a), std::move(b));
  return out;
}

}  // namespace qest

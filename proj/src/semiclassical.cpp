#include "qest/semiclassical.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "qest/optimal_measurement.hpp"

namespace qest {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_batch_size(int m) {
  if (m < 1) throw std::invalid_argument("batch size m must be at least 1");
}

void require_radius(double eps) {
  if (!(eps >= 0.0 && eps < std::numbers::pi / 2)) {
    throw std::invalid_argument("radius eps must lie in [0, pi/2)");
  }
}

// Outcomes as the columns of a k x N matrix.
Eigen::MatrixXcd outcome_matrix(const BatchData& data) {
  const int k = data.dimension();
  Eigen::MatrixXcd o(k, static_cast<Eigen::Index>(data.size()));
  for (std::size_t j = 0; j < data.size(); ++j) {
    o.col(static_cast<Eigen::Index>(j)) = data.outcomes()[j].amplitudes();
  }
  return o;
}

double likelihood_from_inner(const Eigen::VectorXcd& inner, int m) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < inner.size(); ++j) {
    const double t = std::norm(inner[j]);
    if (t == 0.0) return kNegInf;
    s += std::log(t);
  }
  return m * s;
}

double step_distance(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  return fs_distance(PureState::normalized(a), PureState::normalized(b));
}

struct PowerResult {
  Eigen::VectorXcd vector;
  double eigenvalue;
};

PowerResult power_iteration(const Eigen::MatrixXcd& mat) {
  constexpr int kMaxIter = 200000;
  constexpr double kTol = 1e-12;
  const int k = static_cast<int>(mat.rows());
  int start = 0;
  for (int i = 1; i < k; ++i) {
    if (mat(i, i).real() > mat(start, start).real()) start = i;
  }
  Eigen::VectorXcd v = Eigen::VectorXcd::Unit(k, start);
  if (mat(start, start).real() <= 0.0) return {v, 0.0};
  for (int it = 0; it < kMaxIter; ++it) {
    Eigen::VectorXcd w = mat * v;
    const double norm = w.norm();
    if (norm == 0.0) break;
    w /= norm;
    const double step = step_distance(v, w);
    v = w;
    if (step < kTol) break;
  }
  return {v, v.dot(mat * v).real()};
}

}  // namespace

void SemiclassicalConfig::validate() const {
  require_batch_size(m);
  if (n_batches < 1) throw std::invalid_argument("batch count must be at least 1");
}

BatchData::BatchData(std::vector<PureState> outcomes, int m) : outcomes_(std::move(outcomes)), m_(m) {
  require_batch_size(m_);
  if (outcomes_.empty()) throw std::invalid_argument("batch data must be nonempty");
  const int k = outcomes_.front().dimension();
  for (const auto& o : outcomes_) {
    if (o.dimension() != k) throw IncompatibleStates("batch outcomes have mixed dimensions");
  }
}

void EstimatorOptions::validate() const {
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be positive");
  if (!(convergence_tol > 0.0)) throw std::invalid_argument("convergence_tol must be positive");
  if (restarts < 0) throw std::invalid_argument("restarts must be nonnegative");
}

double kl_divergence_per_copy(int m, double eps) {
  require_batch_size(m);
  require_radius(eps);
  const double s = std::sin(eps) * std::sin(eps);
  double power = 1.0;
  double sum = 0.0;
  for (int i = 1; i <= m; ++i) {
    power *= s;
    sum += power / i;
  }
  return sum;
}

double first_order_gap(int m, double eps) {
  const double per_copy = kl_divergence_per_copy(m, eps);
  const double s = std::sin(eps) * std::sin(eps);
  return m * (-std::log1p(-s) - per_copy);
}

double fisher_geodesic_distance(int m, double fs_dist) {
  require_batch_size(m);
  if (!(fs_dist >= 0.0 && fs_dist <= std::numbers::pi / 2 + 1e-12)) {
    throw std::invalid_argument("Fubini-Study distance outside [0, pi/2]");
  }
  return std::sqrt(2.0 * m) * fs_dist;
}

BatchData run_batched_measurement(const PureState& rho, const SemiclassicalConfig& config,
                                  RandomStream& rng) {
  config.validate();
  const OutcomeDistribution dist(rho, config.m);
  std::vector<PureState> outcomes;
  outcomes.reserve(static_cast<std::size_t>(config.n_batches));
  for (std::int64_t j = 0; j < config.n_batches; ++j) outcomes.push_back(sample_outcome(dist, rng));
  return BatchData(std::move(outcomes), config.m);
}

double log_likelihood(const PureState& phi, const BatchData& data) {
  if (phi.dimension() != data.dimension()) throw IncompatibleStates("state and data dimensions differ");
  const Eigen::MatrixXcd o = outcome_matrix(data);
  return likelihood_from_inner(o.adjoint() * phi.amplitudes(), data.batch_size());
}

SpectralEstimate spectral_estimate(const BatchData& data) {
  const Eigen::MatrixXcd o = outcome_matrix(data);
  const Eigen::MatrixXcd mean = o * o.adjoint() / static_cast<double>(data.size());
  const PowerResult top = power_iteration(mean);
  const Eigen::MatrixXcd deflated = mean - top.eigenvalue * top.vector * top.vector.adjoint();
  const PowerResult second = power_iteration(deflated);
  const bool degenerate = top.eigenvalue - second.eigenvalue <= 1e-12;
  return {PureState::normalized(top.vector), top.eigenvalue, degenerate};
}

namespace {

struct Ascent {
  Eigen::VectorXcd phi;
  double likelihood;
  int iterations;
  bool converged;
};

Ascent fixed_point_ascent(const Eigen::MatrixXcd& o, int m, Eigen::VectorXcd phi,
                          const EstimatorOptions& opts) {
  constexpr int kMaxHalvings = 60;
  const auto count = static_cast<double>(o.cols());
  Eigen::VectorXcd inner = o.adjoint() * phi;
  double current = likelihood_from_inner(inner, m);
  for (int it = 1; it <= opts.max_iterations; ++it) {
    if (current == kNegInf) return {phi, current, it - 1, false};
    const Eigen::VectorXcd weights = inner.cwiseQuotient(inner.cwiseAbs2().cast<Complex>());
    const Eigen::VectorXcd target = o * weights / count;

    Eigen::VectorXcd candidate = target.normalized();
    Eigen::VectorXcd cand_inner = o.adjoint() * candidate;
    double cand_like = likelihood_from_inner(cand_inner, m);
    double t = 1.0;
    for (int h = 0; h < kMaxHalvings && !(cand_like >= current); ++h) {
      t *= 0.5;
      candidate = (phi + t * (target - phi)).normalized();
      cand_inner = o.adjoint() * candidate;
      cand_like = likelihood_from_inner(cand_inner, m);
    }
    if (!(cand_like >= current)) {
      // No ascent available at working precision: phi is stationary.
      return {phi, current, it, true};
    }
    if (cand_like < current - 1e-12 * std::max(1.0, std::abs(current))) {
      throw std::logic_error("likelihood decreased during fixed-point ascent");
    }
    const double step = step_distance(phi, candidate);
    phi = std::move(candidate);
    inner = std::move(cand_inner);
    current = cand_like;
    if (step < opts.convergence_tol) return {phi, current, it, true};
  }
  return {phi, current, opts.max_iterations, false};
}

}  // namespace

MleResult mle_estimate(const BatchData& data, const EstimatorOptions& opts) {
  opts.validate();
  const Eigen::MatrixXcd o = outcome_matrix(data);
  const int m = data.batch_size();
  const SpectralEstimate init = spectral_estimate(data);
  const double init_like = likelihood_from_inner(o.adjoint() * init.state.amplitudes(), m);

  Ascent best = fixed_point_ascent(o, m, init.state.amplitudes(), opts);
  for (int r = 0; r < opts.restarts; ++r) {
    RandomStream rng(opts.restart_seed, stream_id(StreamTag::kRestart, static_cast<std::uint64_t>(r)));
    const PureState start = haar_state(data.dimension(), rng);
    Ascent trial = fixed_point_ascent(o, m, start.amplitudes(), opts);
    if (trial.likelihood > best.likelihood) best = std::move(trial);
  }
  return {PureState::normalized(best.phi), best.likelihood, init_like, best.iterations, best.converged};
}

}  // namespace qest

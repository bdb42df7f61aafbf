#include "qest/statespace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qest {

namespace {

void require_same_dimension(const PureState& a, const PureState& b) {
  if (a.dimension() != b.dimension()) {
    throw IncompatibleStates("states have dimensions " + std::to_string(a.dimension()) + " and " +
                             std::to_string(b.dimension()));
  }
}

Eigen::VectorXcd gaussian_vector(int k, RandomStream& rng) {
  Eigen::VectorXcd v(k);
  for (int i = 0; i < k; ++i) {
    const double re = rng.normal();
    const double im = rng.normal();
    v[i] = Complex(re, im);
  }
  return v;
}

}  // namespace

void require_dimension(int k) {
  if (k < kMinDimension || k > kMaxDimension) {
    throw std::invalid_argument("dimension k must lie in [2, 16], got " + std::to_string(k));
  }
}

PureState::PureState(Eigen::VectorXcd amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() == 0) throw std::invalid_argument("empty state vector");
  if (std::abs(amps_.norm() - 1.0) > 1e-12) {
    throw std::invalid_argument("state vector is not normalised");
  }
}

PureState PureState::normalized(const Eigen::VectorXcd& v) {
  const double norm = v.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw std::invalid_argument("cannot normalise a zero or non-finite vector");
  }
  return PureState(v / norm);
}

PureState PureState::basis(int k, int index) {
  require_dimension(k);
  if (index < 0 || index >= k) throw std::out_of_range("basis index out of range");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(k);
  v[index] = 1.0;
  return PureState(std::move(v));
}

PureState PureState::with_phase(double alpha) const {
  return PureState(amps_ * std::polar(1.0, alpha));
}

Unitary::Unitary(Eigen::MatrixXcd entries) : m_(std::move(entries)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0) {
    throw std::invalid_argument("unitary must be a nonempty square matrix");
  }
  const Eigen::MatrixXcd defect =
      m_.adjoint() * m_ - Eigen::MatrixXcd::Identity(m_.rows(), m_.cols());
  if (defect.cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("matrix is not unitary");
  }
}

PureState Unitary::column(int i) const { return PureState::normalized(m_.col(i)); }

PureState Unitary::apply(const PureState& s) const {
  if (s.dimension() != dimension()) {
    throw IncompatibleStates("unitary and state dimensions differ");
  }
  return PureState::normalized(m_ * s.amplitudes());
}

Unitary Unitary::adjoint() const { return Unitary(m_.adjoint()); }

AngleChart::AngleChart(int k, std::vector<double> theta) : k_(k), theta_(std::move(theta)) {
  require_dimension(k);
  if (theta_.size() != static_cast<std::size_t>(2 * k - 2)) {
    throw std::invalid_argument("chart needs 2k-2 angles");
  }
  constexpr double kHalfPi = std::numbers::pi / 2;
  constexpr double kTwoPi = 2 * std::numbers::pi;
  for (int j = 0; j < k - 1; ++j) {
    if (!(theta_[j] >= 0.0 && theta_[j] <= kHalfPi)) {
      throw std::invalid_argument("polar chart angle outside [0, pi/2]");
    }
    const double phase = theta_[k - 1 + j];
    if (!(phase >= 0.0 && phase < kTwoPi)) {
      throw std::invalid_argument("phase chart angle outside [0, 2pi)");
    }
  }
}

double overlap(const PureState& a, const PureState& b) {
  require_same_dimension(a, b);
  const double v = std::norm(a.amplitudes().dot(b.amplitudes()));
  return std::clamp(v, 0.0, 1.0);
}

namespace {

// |<a|b>| and the norm of b's component orthogonal to a.
std::pair<double, double> parallel_perpendicular(const PureState& a, const PureState& b) {
  require_same_dimension(a, b);
  const Complex ip = a.amplitudes().dot(b.amplitudes());
  const double perp = (b.amplitudes() - ip * a.amplitudes()).norm();
  return {std::abs(ip), perp};
}

}  // namespace

double fs_distance(const PureState& a, const PureState& b) {
  const auto [par, perp] = parallel_perpendicular(a, b);
  return std::atan2(perp, par);
}

// sqrt(1 - |<a|b>|^2) equals |b_perp| / |b| for a unit, which avoids the
// cancellation in 1 - overlap near coincident states.
double bures_distance(const PureState& a, const PureState& b) {
  const auto [par, perp] = parallel_perpendicular(a, b);
  return std::min(1.0, perp / std::hypot(par, perp));
}

PureState from_chart(const AngleChart& chart) {
  const int k = chart.dimension();
  const auto polar = chart.polar();
  const auto phases = chart.phases();
  Eigen::VectorXcd v(k);
  double sin_prod = 1.0;
  for (int i = 0; i < k; ++i) {
    const double radial = (i < k - 1) ? sin_prod * std::cos(polar[i]) : sin_prod;
    const Complex phase = (i == 0) ? Complex(1.0) : std::polar(1.0, phases[i - 1]);
    v[i] = phase * radial;
    if (i < k - 1) sin_prod *= std::sin(polar[i]);
  }
  return PureState::normalized(v);
}

double invariant_density_weight(const AngleChart& chart) {
  const int k = chart.dimension();
  const auto polar = chart.polar();
  double w = std::tgamma(static_cast<double>(k)) / std::pow(std::numbers::pi, k - 1);
  for (int j = 0; j < k - 1; ++j) {
    const int sin_power = 2 * (k - 1 - j) - 1;
    w *= std::pow(std::sin(polar[j]), sin_power) * std::cos(polar[j]);
  }
  return std::max(w, 0.0);
}

PureState haar_state(int k, RandomStream& rng) {
  require_dimension(k);
  return PureState::normalized(gaussian_vector(k, rng));
}

Unitary haar_unitary(int k, RandomStream& rng) {
  require_dimension(k);
  Eigen::MatrixXcd z(k, k);
  for (int j = 0; j < k; ++j) z.col(j) = gaussian_vector(k, rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < k; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(j) *= d / mag;
  }
  return Unitary(std::move(q));
}

PureState orthogonal_complement_sample(const PureState& phi, RandomStream& rng) {
  const int k = phi.dimension();
  require_dimension(k);
  for (;;) {
    Eigen::VectorXcd g = gaussian_vector(k, rng);
    g -= phi.amplitudes().dot(g) * phi.amplitudes();
    // Second pass removes the residual left by rounding.
    g -= phi.amplitudes().dot(g) * phi.amplitudes();
    if (g.norm() > 1e-8) return PureState::normalized(g);
  }
}

}  // namespace qest

#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qest/rng.hpp"

namespace qest {

using Complex = std::complex<double>;

inline constexpr int kMinDimension = 2;
inline constexpr int kMaxDimension = 16;

class IncompatibleStates : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Throws std::invalid_argument unless 2 <= k <= 16.
void require_dimension(int k);

// Unit vector in C^k. Global phase is never canonicalised; every functional
// in this library is phase invariant.
class PureState {
 public:
  // Requires unit norm within 1e-12.
  explicit PureState(Eigen::VectorXcd amplitudes);

  // Normalises a nonzero vector.
  static PureState normalized(const Eigen::VectorXcd& v);
  static PureState basis(int k, int index);

  int dimension() const { return static_cast<int>(amps_.size()); }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  Complex operator[](int i) const { return amps_[i]; }

  PureState with_phase(double alpha) const;

 private:
  Eigen::VectorXcd amps_;
};

class Unitary {
 public:
  // Requires U^dagger U = I within 1e-10 in max-norm.
  explicit Unitary(Eigen::MatrixXcd entries);

  int dimension() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return m_; }
  PureState column(int i) const;
  PureState apply(const PureState& s) const;
  Unitary adjoint() const;

 private:
  Eigen::MatrixXcd m_;
};

// Hyperspherical chart: theta[0..k-2] are the polar angles in [0, pi/2],
// theta[k-1..2k-3] are relative phases in [0, 2pi).
class AngleChart {
 public:
  AngleChart(int k, std::vector<double> theta);

  int dimension() const { return k_; }
  std::span<const double> polar() const { return {theta_.data(), static_cast<std::size_t>(k_ - 1)}; }
  std::span<const double> phases() const {
    return {theta_.data() + (k_ - 1), static_cast<std::size_t>(k_ - 1)};
  }
  const std::vector<double>& values() const { return theta_; }

 private:
  int k_;
  std::vector<double> theta_;
};

// |<a|b>|^2, clamped to [0, 1].
double overlap(const PureState& a, const PureState& b);
// arccos sqrt(overlap), evaluated as atan2(|b_perp|, |<a|b>|) so that small
// distances keep full relative precision.
double fs_distance(const PureState& a, const PureState& b);
// sqrt(1 - overlap), in [0, 1].
double bures_distance(const PureState& a, const PureState& b);

PureState from_chart(const AngleChart& chart);
// Density of the unitarily invariant probability measure in chart
// coordinates: (k-1)!/pi^(k-1) * prod_j sin^(2(k-j)-1)(theta_j) cos(theta_j).
double invariant_density_weight(const AngleChart& chart);

PureState haar_state(int k, RandomStream& rng);
// Ginibre matrix orthonormalised by QR, with the phases of R's diagonal
// folded into Q so the law is exactly Haar.
Unitary haar_unitary(int k, RandomStream& rng);
// Uniform unit vector in the orthogonal complement of phi.
PureState orthogonal_complement_sample(const PureState& phi, RandomStream& rng);

}  // namespace qest

#include "qest/validation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

#include "qest/closed_form.hpp"
#include "qest/optimal_measurement.hpp"
#include "qest/quadrature.hpp"
#include "qest/rng.hpp"
#include "qest/special.hpp"

namespace qest {

namespace {

constexpr double kPi = std::numbers::pi;

// Stream index offsets inside the validation tag.
constexpr std::uint64_t kLem1Streams = 0;
constexpr std::uint64_t kLe2Streams = 1ULL << 32;
constexpr std::uint64_t kHoheStreams = 2ULL << 32;
constexpr std::uint64_t kSeedStreams = 3ULL << 32;

std::string tagged(const std::string& id, std::initializer_list<std::pair<const char*, double>> params) {
  std::string out = id;
  for (const auto& [name, value] : params) {
    char buf[64];
    std::snprintf(buf, sizeof buf, ":%s=%.17g", name, value);
    out += buf;
  }
  return out;
}

// Quadrature error estimate is folded into the difference when the
// integral did not converge.
double folded_diff(double lhs, double rhs, const QuadratureResult& q) {
  const double diff = std::abs(lhs - rhs);
  return q.converged ? diff : std::max(diff, q.error);
}

void for_each_multi_index(int parts, int total, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> idx(static_cast<std::size_t>(parts), 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == parts - 1) {
      idx[static_cast<std::size_t>(pos)] = left;
      fn(idx);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      idx[static_cast<std::size_t>(pos)] = v;
      rec(pos + 1, left - v);
    }
  };
  rec(0, total);
}

Complex cis(double theta) { return {std::cos(theta), std::sin(theta)}; }

double multinomial(int total, const std::vector<int>& idx) {
  double out = std::tgamma(total + 1.0);
  for (int v : idx) out /= std::tgamma(v + 1.0);
  return out;
}

double lem1_coefficient(const Lem1Instance& inst, const std::vector<int>& idx) {
  Complex sum{0.0, 0.0};
  std::vector<double> v(static_cast<std::size_t>(inst.terms));
  std::vector<double> y(static_cast<std::size_t>(inst.terms));
  for (int a = 0; a < inst.terms; ++a) {
    double prod = 1.0;
    double phase = 0.0;
    for (int j = 0; j <= inst.angles; ++j) {
      for (int p = 0; p < idx[static_cast<std::size_t>(j)]; ++p) prod *= inst.c(a, j);
      phase += idx[static_cast<std::size_t>(j)] * inst.d(a, j);
    }
    v[static_cast<std::size_t>(a)] = prod;
    y[static_cast<std::size_t>(a)] = phase;
  }
  for (int a = 0; a < inst.terms; ++a) {
    for (int b = 0; b < inst.terms; ++b) {
      sum += v[static_cast<std::size_t>(a)] * v[static_cast<std::size_t>(b)] *
             cis(y[static_cast<std::size_t>(a)] - y[static_cast<std::size_t>(b)]);
    }
  }
  return sum.real();
}

double angular_marginal(int k, std::int64_t n, double log_norm, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  if (c <= 0.0 || s <= 0.0) return 0.0;
  return std::exp(log_norm + (2.0 * static_cast<double>(n) + 1.0) * std::log(c) + (2.0 * k - 3.0) * std::log(s));
}

double kl_formula(int m, double eps) {
  double sum = 0.0;
  const double s2 = std::sin(eps) * std::sin(eps);
  double power = 1.0;
  for (int i = 1; i <= m; ++i) {
    power *= s2;
    sum += power / i;
  }
  return m * sum;
}

}  // namespace

LemmaCheckResult make_check(std::string id, double lhs, double rhs, double tolerance) {
  LemmaCheckResult r;
  r.lemma_id = std::move(id);
  r.lhs = lhs;
  r.rhs = rhs;
  r.abs_diff = std::abs(lhs - rhs);
  r.tolerance = tolerance;
  r.pass = r.abs_diff <= tolerance;
  return r;
}

LemmaCheckResult check_lemma_to(int n, int m) {
  if (n < 1 || n > 12 || m < 1 || m > 12) throw std::invalid_argument("check_lemma_to needs 1 <= n, m <= 12");
  using boost::multiprecision::cpp_rational;
  cpp_rational lhs = 0;
  cpp_rational binom = 1;
  for (int i = 0; i <= n; ++i) {
    const cpp_rational term = binom / cpp_rational(m + i);
    lhs += (i % 2 == 0) ? term : cpp_rational(-term);
    binom = binom * (n - i) / (i + 1);
  }
  cpp_rational total = 1;
  for (int i = 1; i <= n; ++i) total = total * (m + i) / i;
  const cpp_rational rhs = 1 / (m * total);
  LemmaCheckResult r;
  r.lemma_id = tagged("to", {{"n", n}, {"m", m}});
  r.lhs = static_cast<double>(lhs);
  r.rhs = static_cast<double>(rhs);
  r.abs_diff = static_cast<double>(abs(lhs - rhs));
  r.tolerance = 0.0;
  r.pass = lhs == rhs;
  return r;
}

HoheCheck check_lemma_hohe(int m, double a) {
  if (m < 0 || m > 50) throw std::invalid_argument("check_lemma_hohe needs 0 <= m <= 50");
  if (!(a > 0.0 && a <= 10.0)) throw std::invalid_argument("check_lemma_hohe needs a in (0, 10]");
  constexpr double kTol = 1e-9;
  const QuadratureOptions opts{1e-13, 1e-14, 20000};

  const auto q1 = integrate(
      [m, a](double x) { return std::pow(x, m) * std::log((1.0 - x) / a); }, 0.0, 1.0 - a, opts);
  double sum1 = 0.0;
  double pw = 1.0;
  for (int i = 1; i <= m + 1; ++i) {
    pw *= 1.0 - a;
    sum1 += pw / i;
  }
  const double rhs1 = (-std::log(a) - sum1) / (m + 1);

  const double upper = a / (1.0 + a);
  const auto q2 = integrate(
      [m, a](double x) { return std::pow(x, m) * std::log(x / (a * (1.0 - x))); }, 0.0, upper, opts);
  double sum2 = 0.0;
  pw = 1.0;
  for (int i = 1; i <= m; ++i) {
    pw *= upper;
    sum2 += pw / i;
  }
  const double rhs2 = (-std::log1p(a) + sum2) / (m + 1);

  // For a > 1 the first integrand reaches |1-a|^m, so the tolerance scales with the value.
  const double tol1 = kTol * std::max(1.0, std::abs(rhs1));
  const double tol2 = kTol * std::max(1.0, std::abs(rhs2));
  HoheCheck out{make_check(tagged("hohe_log1m", {{"m", m}, {"a", a}}), q1.value, rhs1, tol1),
                make_check(tagged("hohe_logit", {{"m", m}, {"a", a}}), q2.value, rhs2, tol2)};
  out.first.abs_diff = folded_diff(q1.value, rhs1, q1);
  out.first.pass = out.first.abs_diff <= tol1;
  out.second.abs_diff = folded_diff(q2.value, rhs2, q2);
  out.second.pass = out.second.abs_diff <= tol2;
  return out;
}

Lem1Instance random_lem1_instance(std::uint64_t seed, std::uint64_t index) {
  RandomStream rng(seed, stream_id(StreamTag::kValidation, kLem1Streams + index));
  Lem1Instance inst;
  inst.terms = 1 + static_cast<int>(rng.uniform() * 3.0);
  inst.angles = 1 + static_cast<int>(rng.uniform() * 3.0);
  inst.power = 1 + static_cast<int>(rng.uniform() * 4.0);
  inst.c.resize(inst.terms, inst.angles + 1);
  inst.d.resize(inst.terms, inst.angles + 1);
  for (int a = 0; a < inst.terms; ++a) {
    for (int j = 0; j <= inst.angles; ++j) {
      inst.c(a, j) = 2.0 * rng.uniform() - 1.0;
      inst.d(a, j) = 2.0 * kPi * rng.uniform();
    }
  }
  return inst;
}

double lem1_function(const Lem1Instance& inst, double x) {
  const int grid = inst.power + 1;
  std::vector<int> pos(static_cast<std::size_t>(inst.angles), 0);
  const double step = 2.0 * kPi / grid;
  double total = 0.0;
  while (true) {
    Complex sum{0.0, 0.0};
    for (int a = 0; a < inst.terms; ++a) {
      Complex base = inst.c(a, 0) * cis(inst.d(a, 0));
      for (int j = 1; j <= inst.angles; ++j) {
        base += x * inst.c(a, j) * cis(step * pos[static_cast<std::size_t>(j - 1)] + inst.d(a, j));
      }
      Complex pw{1.0, 0.0};
      for (int p = 0; p < inst.power; ++p) pw *= base;
      sum += pw;
    }
    total += std::norm(sum);
    int j = 0;
    while (j < inst.angles && ++pos[static_cast<std::size_t>(j)] == grid) pos[static_cast<std::size_t>(j++)] = 0;
    if (j == inst.angles) break;
  }
  return total * std::pow(step, inst.angles);
}

double lem1_expansion(const Lem1Instance& inst, double x) {
  double total = 0.0;
  for_each_multi_index(inst.angles + 1, inst.power, [&](const std::vector<int>& idx) {
    const double c = multinomial(inst.power, idx);
    total += c * c * lem1_coefficient(inst, idx) * std::pow(x, 2 * (inst.power - idx[0]));
  });
  return total * std::pow(2.0 * kPi, inst.angles);
}

double lem1_min_coefficient(const Lem1Instance& inst) {
  double lowest = std::numeric_limits<double>::infinity();
  for_each_multi_index(inst.angles + 1, inst.power,
                       [&](const std::vector<int>& idx) { lowest = std::min(lowest, lem1_coefficient(inst, idx)); });
  return lowest;
}

LemmaCheckResult check_lemma_lem1(const Lem1Instance& inst) {
  if (inst.terms < 1 || inst.angles < 1 || inst.power < 1 || inst.c.rows() != inst.terms ||
      inst.c.cols() != inst.angles + 1 || inst.d.rows() != inst.terms || inst.d.cols() != inst.angles + 1) {
    throw std::invalid_argument("malformed positivity-lemma instance");
  }
  constexpr int kGrid = 40;
  constexpr double kUpper = 4.0;
  std::vector<double> f(kGrid + 1);
  double scale = 1.0;
  double mismatch = 0.0;
  for (int i = 0; i <= kGrid; ++i) {
    const double x = kUpper * i / kGrid;
    f[static_cast<std::size_t>(i)] = lem1_function(inst, x);
    scale = std::max(scale, std::abs(f[static_cast<std::size_t>(i)]));
  }
  double min_increment = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kGrid; ++i) {
    const double x = kUpper * i / kGrid;
    mismatch = std::max(mismatch, std::abs(f[static_cast<std::size_t>(i)] - lem1_expansion(inst, x)));
    if (i > 0) min_increment = std::min(min_increment, f[static_cast<std::size_t>(i)] - f[static_cast<std::size_t>(i - 1)]);
  }
  const double min_d = lem1_min_coefficient(inst);

  const double d_violation = std::max(0.0, -min_d) / 1e-12;
  const double mono_violation = std::max(0.0, -min_increment / scale) / 1e-10;
  const double expansion_violation = mismatch / scale / 1e-10;

  LemmaCheckResult r;
  r.lemma_id = tagged("lem1", {{"terms", inst.terms}, {"angles", inst.angles}, {"power", inst.power}});
  r.lhs = min_d;
  r.rhs = min_increment;
  r.abs_diff = std::max({d_violation, mono_violation, expansion_violation});
  r.tolerance = 1.0;
  r.pass = r.abs_diff <= r.tolerance;
  return r;
}

LemmaCheckResult check_lemma_le2(const Eigen::VectorXcd& phi, const Eigen::VectorXcd& psi,
                                 const Eigen::MatrixXcd& a) {
  const auto k = a.rows();
  if (a.cols() != k || phi.size() != k || psi.size() != k) {
    throw std::invalid_argument("check_lemma_le2: dimension mismatch");
  }
  if (phi.squaredNorm() == 0.0 || psi.squaredNorm() == 0.0) {
    throw std::invalid_argument("check_lemma_le2: vectors must be nonzero");
  }
  if ((a - a.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("check_lemma_le2: operator must be selfadjoint");
  }
  const Eigen::VectorXd spectrum = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(a).eigenvalues();
  if (spectrum.minCoeff() < -1e-10 || spectrum.maxCoeff() > 1.0 + 1e-10) {
    throw std::invalid_argument("check_lemma_le2: spectrum must lie in [0, 1]");
  }
  const double a_phi = phi.dot(a * phi).real();
  const double a_psi = psi.dot(a * psi).real();
  const double n_phi = phi.squaredNorm();
  const double n_psi = psi.squaredNorm();
  const double gap_ratio = a_phi / n_phi - a_psi / n_psi;
  const double gap_cross = a_phi * (n_psi - a_psi) - a_psi * (n_phi - a_phi);
  const bool tie = std::abs(gap_ratio) <= 1e-12 || std::abs(gap_cross) <= 1e-12 * n_phi * n_psi;
  const double first = tie || gap_ratio >= 0.0 ? 1.0 : 0.0;
  const double second = tie || gap_cross >= 0.0 ? 1.0 : 0.0;
  return make_check("le2", first, second, 0.0);
}

LemmaCheckResult check_lemma_le2_batch(std::int64_t count, std::uint64_t seed, const Execution& exec) {
  if (count < 1) throw std::invalid_argument("check_lemma_le2_batch needs a positive count");
  const auto agree = run_trials(count, exec, [seed](std::int64_t i) {
    RandomStream rng(seed, stream_id(StreamTag::kValidation, kLe2Streams + static_cast<std::uint64_t>(i)));
    const int k = 2 + static_cast<int>(rng.uniform() * 5.0);
    auto gaussian = [&] {
      Eigen::VectorXcd v(k);
      for (int j = 0; j < k; ++j) {
        const double re = rng.normal();
        v[j] = Complex(re, rng.normal());
      }
      return v;
    };
    const Unitary u = haar_unitary(k, rng);
    Eigen::VectorXd lambda(k);
    for (int j = 0; j < k; ++j) lambda[j] = rng.uniform();
    const Eigen::MatrixXcd a = u.matrix() * lambda.cast<Complex>().asDiagonal() * u.matrix().adjoint();
    const Eigen::VectorXcd raw = gaussian();
    const Eigen::VectorXcd phi = raw * (0.1 + 3.0 * rng.uniform());
    Eigen::VectorXcd psi;
    switch (i % 6) {
      case 0: {  // exact tie up to a complex scale
        const double scale = 0.5 + rng.uniform();
        psi = phi * scale * cis(2.0 * kPi * rng.uniform());
        break;
      }
      case 3: {  // tiny perturbation around the tie
        const Eigen::VectorXcd kick = gaussian();
        psi = phi + kick * std::pow(10.0, -6.0 - 4.0 * rng.uniform());
        break;
      }
      default:
        psi = gaussian();
    }
    const auto r = check_lemma_le2(phi, psi, a);
    return r.pass ? 1.0 : 0.0;
  });
  const double agreements = pairwise_sum(agree);
  LemmaCheckResult r = make_check(tagged("le2_batch", {{"count", static_cast<double>(count)}}), agreements,
                                  static_cast<double>(count), 0.0);
  return r;
}

LemmaCheckResult check_overlap_marginal(int k, std::int64_t n) {
  require_dimension(k);
  if (n < 1 || n > 10000) throw std::invalid_argument("check_overlap_marginal needs 1 <= n <= 1e4");
  constexpr int kPoints = 1001;
  constexpr double kTol = 1e-9;
  const QuadratureOptions opts{1e-14, 1e-13, 4000};
  const double log_norm = std::log(2.0 * (k - 1)) + log_multiplicity(n, k);
  const double a = static_cast<double>(n) + 1.0;
  const double b = k - 1.0;

  double angular_cdf = 0.0;
  double pdf_cdf = 0.0;
  double worst = 0.0;
  double worst_lhs = 0.0;
  double worst_rhs = 0.0;
  bool converged = true;
  double prev_t = 0.0;
  for (int j = 1; j < kPoints; ++j) {
    const double t = static_cast<double>(j) / (kPoints - 1);
    // overlap cos^2 theta <= t  <=>  theta >= arccos sqrt t
    const auto qa = integrate([&](double th) { return angular_marginal(k, n, log_norm, th); },
                              std::acos(std::sqrt(t)), std::acos(std::sqrt(prev_t)), opts);
    const auto qp = integrate([&](double s) { return overlap_marginal_pdf(k, n, s); }, prev_t, t, opts);
    converged = converged && qa.converged && qp.converged;
    angular_cdf += qa.value;
    pdf_cdf += qp.value;
    const double beta = incomplete_beta(a, b, t);
    const double diff = std::max(std::abs(angular_cdf - beta), std::abs(pdf_cdf - beta));
    if (diff > worst) {
      worst = diff;
      worst_lhs = std::abs(angular_cdf - beta) >= std::abs(pdf_cdf - beta) ? angular_cdf : pdf_cdf;
      worst_rhs = beta;
    }
    prev_t = t;
  }
  LemmaCheckResult r;
  r.lemma_id = tagged("overlap_marginal", {{"k", k}, {"n", static_cast<double>(n)}});
  r.lhs = worst_lhs;
  r.rhs = worst_rhs;
  r.abs_diff = converged ? worst : std::max(worst, 2.0 * kTol);
  r.tolerance = kTol;
  r.pass = r.abs_diff <= kTol;
  return r;
}

double kl_divergence_quadrature(int k, int m, double eps) {
  require_dimension(k);
  if (m < 1) throw std::invalid_argument("kl_divergence_quadrature needs m >= 1");
  if (!(eps >= 0.0 && eps < kPi / 2)) throw std::invalid_argument("eps must lie in [0, pi/2)");
  if (eps == 0.0) return 0.0;
  const double ce = std::cos(eps);
  const double se = std::sin(eps);
  const QuadratureOptions inner{1e-13, 1e-12, 2000};
  const QuadratureOptions outer{1e-12, 1e-11, 2000};

  // Phase integral over [0, pi], doubled by the reflection symmetry.
  auto phase_average = [&](double c1, double s1, double c2) {
    const double a = ce * c1;
    const double b = se * s1 * c2;
    const double log_p = std::log(c1 * c1);
    const auto q = integrate(
        [&](double ph) {
          const double half = std::cos(0.5 * ph);
          const double qv = (a - b) * (a - b) + 4.0 * a * b * half * half;
          return log_p - std::log(qv);
        },
        0.0, kPi, inner);
    return 2.0 * q.value;
  };

  if (k == 2) {
    const double norm = (m + 1) / kPi * m;
    const auto q = integrate(
        [&](double t1) {
          const double c1 = std::cos(t1);
          const double s1 = std::sin(t1);
          return norm * std::pow(c1, 2 * m + 1) * s1 * phase_average(c1, s1, 1.0);
        },
        0.0, kPi / 2, outer);
    return q.value;
  }
  const double norm = multiplicity(m, k) * 2.0 * (k - 1) * (k - 2) / kPi * m;
  const auto q = integrate(
      [&](double t1) {
        const double c1 = std::cos(t1);
        const double s1 = std::sin(t1);
        const double w1 = std::pow(c1, 2 * m + 1) * std::pow(s1, 2 * k - 3);
        const auto q2 = integrate(
            [&](double t2) {
              const double c2 = std::cos(t2);
              return c2 * std::pow(std::sin(t2), 2 * k - 5) * phase_average(c1, s1, c2);
            },
            0.0, kPi / 2, inner);
        return norm * w1 * q2.value;
      },
      0.0, kPi / 2, outer);
  return q.value;
}

LemmaCheckResult check_kl_formula(int k, int m, double eps) {
  if (m < 1 || m > 3) throw std::invalid_argument("check_kl_formula needs 1 <= m <= 3");
  if (!(eps >= 0.1 && eps <= 1.0)) throw std::invalid_argument("check_kl_formula needs eps in [0.1, 1]");
  const double lhs = kl_divergence_quadrature(k, m, eps);
  const double rhs = kl_formula(m, eps);
  LemmaCheckResult r;
  r.lemma_id = tagged("kl_formula", {{"k", k}, {"m", m}, {"eps", eps}});
  r.lhs = lhs;
  r.rhs = rhs;
  r.abs_diff = std::abs(lhs - rhs) / std::abs(rhs);
  r.tolerance = 1e-3;
  r.pass = r.abs_diff <= r.tolerance;
  return r;
}

LemmaCheckResult check_fisher_scaling(int k, int m) {
  if (k < 2 || k > 4 || m < 1 || m > 4) throw std::invalid_argument("check_fisher_scaling needs k <= 4, m <= 4");
  auto g = [&](double eps) { return 2.0 * kl_divergence_quadrature(k, m, eps) / (eps * eps); };
  const double h = 0.1;
  const double g1 = g(h);
  const double g2 = g(h / 2);
  const double g4 = g(h / 4);
  const double r1 = (4.0 * g2 - g1) / 3.0;
  const double r2 = (4.0 * g4 - g2) / 3.0;
  const double limit = (16.0 * r2 - r1) / 15.0;
  const double target = 2.0 * m;
  LemmaCheckResult r;
  r.lemma_id = tagged("fisher_scaling", {{"k", k}, {"m", m}});
  r.lhs = limit;
  r.rhs = target;
  r.abs_diff = std::abs(limit - target) / target;
  r.tolerance = 1e-3;
  r.pass = r.abs_diff <= r.tolerance;
  return r;
}

LemmaCheckResult check_tail_qubit(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("check_tail_qubit needs n >= 1");
  double worst = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  for (int j = 1; j <= 40; ++j) {
    const double eps = (kPi / 2) * j / 41.0;
    const double exact = std::pow(std::cos(eps), 2.0 * (static_cast<double>(n) + 1.0));
    const double value = tail_probability(2, n, eps);
    if (std::abs(value - exact) >= worst) {
      worst = std::abs(value - exact);
      lhs = value;
      rhs = exact;
    }
  }
  LemmaCheckResult r = make_check(tagged("tail_qubit", {{"n", static_cast<double>(n)}}), lhs, rhs, 1e-12);
  return r;
}

CovariantSeed random_covariant_seed(int k, std::uint64_t seed, std::uint64_t index) {
  require_dimension(k);
  RandomStream rng(seed, stream_id(StreamTag::kValidation, kSeedStreams + index));
  CovariantSeed out;
  const int terms = 1 + static_cast<int>(rng.uniform() * 3.0);
  for (int i = 0; i < terms; ++i) {
    const double re = rng.normal();
    out.coefficients.emplace_back(re, rng.normal());
    out.vectors.push_back(haar_state(k, rng));
  }
  return out;
}

namespace {

struct RotationSample {
  double error;     // squared Bures distance between e_0 and g e_0
  Eigen::VectorXcd row;  // first row of g
};

std::vector<RotationSample> rotation_samples(int k, std::int64_t samples, std::uint64_t seed) {
  std::vector<RotationSample> out;
  out.reserve(static_cast<std::size_t>(samples));
  for (std::int64_t s = 0; s < samples; ++s) {
    RandomStream rng(seed, stream_id(StreamTag::kRotation, static_cast<std::uint64_t>(s)));
    const Unitary g = haar_unitary(k, rng);
    const Eigen::VectorXcd row = g.matrix().row(0).transpose();
    out.push_back({1.0 - std::norm(row[0]), row});
  }
  return out;
}

CovariantError covariant_error_on(const CovariantSeed& seed_state, int n,
                                  const std::vector<RotationSample>& rotations) {
  if (seed_state.coefficients.empty() || seed_state.coefficients.size() != seed_state.vectors.size()) {
    throw std::invalid_argument("covariant seed needs matching coefficients and vectors");
  }
  const int k = seed_state.vectors.front().dimension();
  const double dim = multiplicity(n, k);
  const std::size_t terms = seed_state.vectors.size();
  double norm2 = 0.0;
  for (std::size_t i = 0; i < terms; ++i) {
    for (std::size_t j = 0; j < terms; ++j) {
      const Complex inner = seed_state.vectors[i].amplitudes().dot(seed_state.vectors[j].amplitudes());
      norm2 += (std::conj(seed_state.coefficients[i]) * seed_state.coefficients[j] * std::pow(inner, n)).real();
    }
  }
  if (!(norm2 > 1e-300)) throw std::invalid_argument("covariant seed vector vanishes");

  std::vector<double> values(rotations.size());
  std::vector<double> diffs(rotations.size());
  for (std::size_t s = 0; s < rotations.size(); ++s) {
    const auto& rot = rotations[s];
    Complex amp{0.0, 0.0};
    for (std::size_t i = 0; i < terms; ++i) {
      const Complex inner = (rot.row.transpose() * seed_state.vectors[i].amplitudes())(0);
      amp += seed_state.coefficients[i] * std::pow(inner, n);
    }
    const double prob = dim * std::norm(amp) / norm2;
    const double product = dim * std::pow(std::norm(rot.row[0]), n);
    values[s] = rot.error * prob;
    diffs[s] = rot.error * (prob - product);
  }
  const SampleMoments v = sample_moments(values);
  const SampleMoments d = sample_moments(diffs);
  return {v.mean, v.std_error, d.mean, d.std_error};
}

}  // namespace

CovariantError covariant_family_error(const CovariantSeed& seed_state, int n, std::int64_t samples,
                                      std::uint64_t seed) {
  if (n < 1 || samples < 2) throw std::invalid_argument("covariant_family_error needs n >= 1, samples >= 2");
  if (seed_state.vectors.empty()) throw std::invalid_argument("covariant seed is empty");
  return covariant_error_on(seed_state, n, rotation_samples(seed_state.vectors.front().dimension(), samples, seed));
}

LemmaCheckResult check_covariant_optimality(int k, int n, int seeds, std::int64_t samples, std::uint64_t seed,
                                            const Execution& exec) {
  require_dimension(k);
  if (n < 1 || seeds < 1 || samples < 2) throw std::invalid_argument("check_covariant_optimality: bad sizes");
  const auto rotations = rotation_samples(k, samples, seed);
  std::vector<CovariantError> results(static_cast<std::size_t>(seeds));
  for_each_task(seeds, exec, [&](std::int64_t i) {
    results[static_cast<std::size_t>(i)] =
        covariant_error_on(random_covariant_seed(k, seed, static_cast<std::uint64_t>(i)), n, rotations);
  });
  const double optimum = (k - 1.0) / (n + k);
  double lowest = std::numeric_limits<double>::infinity();
  double shortfall = 0.0;
  for (const auto& r : results) {
    lowest = std::min(lowest, r.mean);
    shortfall = std::max(shortfall, -(r.difference + 3.0 * r.difference_std_error));
  }
  LemmaCheckResult r;
  r.lemma_id = tagged("covariant_optimality", {{"k", k}, {"n", n}, {"seeds", seeds}});
  r.lhs = lowest;
  r.rhs = optimum;
  r.abs_diff = shortfall;
  r.tolerance = 1e-9;
  r.pass = r.abs_diff <= r.tolerance;
  return r;
}

std::vector<DerivedFact> derived_fact_registry() {
  return {
      {"overlap with the truth is Beta(n+1, k-1)", "optimal_measurement", "overlap_marginal"},
      {"qubit tail equals cos^(2(n+1)) eps", "closed_form", "tail_qubit"},
      {"KL divergence m sum sin^(2i) eps / i", "semiclassical", "kl_formula"},
      {"logarithmic moment integrals", "semiclassical", "hohe_logit"},
      {"logarithmic moment integrals (shifted)", "semiclassical", "hohe_log1m"},
      {"Fisher information 2m g_fs", "semiclassical", "fisher_scaling"},
      {"alternating binomial sum", "closed_form", "to"},
      {"ratio and cross-product orders agree", "optimal_measurement", "le2_batch"},
      {"expansion coefficients are nonnegative", "optimal_measurement", "lem1"},
  };
}

std::vector<std::string> appendix_check_ids() {
  return {"to", "hohe_log1m", "hohe_logit", "lem1", "le2_batch", "overlap_marginal", "kl_formula",
          "fisher_scaling", "tail_qubit"};
}

std::vector<std::string> suite_names() { return {"appendix", "optimality"}; }

std::vector<LemmaCheckResult> run_suite(const std::string& suite, std::uint64_t seed, const Execution& exec) {
  using Task = std::function<std::vector<LemmaCheckResult>()>;
  std::vector<Task> tasks;
  if (suite == "appendix") {
    for (int n = 1; n <= 12; ++n) {
      for (int m = 1; m <= 12; ++m) tasks.emplace_back([n, m] { return std::vector{check_lemma_to(n, m)}; });
    }
    std::vector<std::pair<int, double>> hohe_grid = {{0, 1.0}, {1, 1.0}, {3, 2.5}, {50, 0.05}};
    for (std::uint64_t i = 0; hohe_grid.size() < 20; ++i) {
      RandomStream rng(seed, stream_id(StreamTag::kValidation, kHoheStreams + i));
      const int m = static_cast<int>(rng.uniform() * 51.0);
      hohe_grid.emplace_back(m, 10.0 * (1.0 - rng.uniform()));
    }
    for (const auto& [m, a] : hohe_grid) {
      tasks.emplace_back([m, a] {
        const auto h = check_lemma_hohe(m, a);
        return std::vector{h.first, h.second};
      });
    }
    for (std::uint64_t i = 0; i < 100; ++i) {
      tasks.emplace_back([seed, i] { return std::vector{check_lemma_lem1(random_lem1_instance(seed, i))}; });
    }
    tasks.emplace_back([seed] { return std::vector{check_lemma_le2_batch(10000, seed, Execution::serial())}; });
    for (int k : {2, 3, 4, 5, 8}) {
      for (std::int64_t n : {1, 2, 4, 10, 50, 100}) {
        tasks.emplace_back([k, n] { return std::vector{check_overlap_marginal(k, n)}; });
      }
    }
    for (int k : {2, 3}) {
      for (int m : {1, 2, 3}) {
        for (double eps : {0.3, 0.5, 0.8}) {
          tasks.emplace_back([k, m, eps] { return std::vector{check_kl_formula(k, m, eps)}; });
        }
      }
    }
    tasks.emplace_back([] { return std::vector{check_fisher_scaling(2, 1)}; });
    tasks.emplace_back([] { return std::vector{check_fisher_scaling(3, 2)}; });
    for (std::int64_t n : {1, 10, 100, 1000}) {
      tasks.emplace_back([n] { return std::vector{check_tail_qubit(n)}; });
    }
  } else if (suite == "optimality") {
    tasks.emplace_back([seed] {
      return std::vector{check_covariant_optimality(2, 2, 200, 10000, seed, Execution::serial())};
    });
  } else {
    throw std::invalid_argument("unknown validation suite '" + suite + "'");
  }

  std::vector<std::vector<LemmaCheckResult>> parts(tasks.size());
  for_each_task(static_cast<std::int64_t>(tasks.size()), exec, [&](std::int64_t i) {
    parts[static_cast<std::size_t>(i)] = tasks[static_cast<std::size_t>(i)]();
  });
  std::vector<LemmaCheckResult> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

}  // namespace qest

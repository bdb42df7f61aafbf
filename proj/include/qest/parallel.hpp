#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qest {

// Worker count for OpenMP kernels; 0 means the OpenMP default.
struct Execution {
  int workers = 0;
  bool serial_reference = false;  // plain loop, no OpenMP region

  static Execution serial() { return Execution{1, true}; }
};

// Evaluates fn(i) for i in [0, count) and stores the results by index, so
// the output never depends on the schedule.
template <class Fn>
std::vector<double> evaluate_trials(std::int64_t count, const Execution& exec, Fn&& fn) {
  std::vector<double> out(static_cast<std::size_t>(count));
#ifdef _OPENMP
  const int threads = exec.workers > 0 ? exec.workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 64) num_threads(threads)
  for (std::int64_t i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = fn(i);
#else
  (void)exec;
  for (std::int64_t i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = fn(i);
#endif
  return out;
}

// Serial reference for evaluate_trials; kept for equivalence tests and the
// benchmark.
template <class Fn>
std::vector<double> evaluate_trials_serial(std::int64_t count, Fn&& fn) {
  std::vector<double> out(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = fn(i);
  return out;
}

// Dispatches to the serial reference when requested.
template <class Fn>
std::vector<double> run_trials(std::int64_t count, const Execution& exec, Fn&& fn) {
  if (exec.serial_reference) return evaluate_trials_serial(count, fn);
  return evaluate_trials(count, exec, fn);
}

// Runs fn(i) for i in [0, count) one index at a time; meant for a few
// heavy, uneven tasks.
template <class Fn>
void for_each_task(std::int64_t count, const Execution& exec, Fn&& fn) {
  if (exec.serial_reference) {
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
#ifdef _OPENMP
  const int threads = exec.workers > 0 ? exec.workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::int64_t i = 0; i < count; ++i) fn(i);
#else
  for (std::int64_t i = 0; i < count; ++i) fn(i);
#endif
}

// Pairwise (cascade) summation; the split points depend only on the length.
inline double pairwise_sum(std::span<const double> v) {
  constexpr std::size_t kBlock = 32;
  if (v.size() <= kBlock) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

struct SampleMoments {
  double mean = 0.0;
  double std_error = 0.0;
};

inline SampleMoments sample_moments(std::span<const double> v) {
  SampleMoments out;
  if (v.empty()) return out;
  const auto count = static_cast<double>(v.size());
  out.mean = pairwise_sum(v) / count;
  if (v.size() < 2) return out;
  std::vector<double> sq(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double d = v[i] - out.mean;
    sq[i] = d * d;
  }
  const double variance = pairwise_sum(sq) / (count - 1.0);
  out.std_error = std::sqrt(variance / count);
  return out;
}

}  // namespace qest

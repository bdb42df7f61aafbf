// Serial reference vs OpenMP kernels on the heavier experiments.
#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>

#include "qest/montecarlo.hpp"
#include "qest/validation.hpp"

using namespace qest;

namespace {

double seconds(const std::function<void()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void row(const char* name, const std::function<double(const Execution&)>& kernel, int workers) {
  double serial_value = 0.0;
  double parallel_value = 0.0;
  const double ts = seconds([&] { serial_value = kernel(Execution::serial()); });
  const double tp = seconds([&] { parallel_value = kernel(Execution{workers, false}); });
  const bool same = std::memcmp(&serial_value, &parallel_value, sizeof(double)) == 0;
  std::printf("%-28s %10.3f %10.3f %8.2fx  %s\n", name, ts, tp, ts / tp, same ? "identical" : "DIFFERENT");
}

}  // namespace

int main(int argc, char** argv) {
  int workers = 0;
  if (argc > 1) workers = std::atoi(argv[1]);
  std::printf("%-28s %10s %10s %9s  %s\n", "kernel", "serial[s]", "omp[s]", "speedup", "result");

  row("mse k=4 n=10 1e6 trials",
      [](const Execution& e) {
        ExperimentConfig c;
        c.k = 4;
        c.n = 10;
        c.trials = 1000000;
        return estimate_collective_error(c, e).estimate;
      },
      workers);

  row("tail k=3 n=20 1e6 trials",
      [](const Execution& e) {
        ExperimentConfig c;
        c.k = 3;
        c.n = 20;
        c.eps = 0.4;
        c.trials = 1000000;
        return estimate_tail(c, e).estimate;
      },
      workers);

  row("compare k=2 n=1000 2e3",
      [](const Execution& e) {
        ExperimentConfig c;
        c.k = 2;
        c.n = 1000;
        c.trials = 2000;
        return compare_protocols(c, e).semiclassical.estimate;
      },
      workers);

  row("le2 batch 2e5",
      [](const Execution& e) { return check_lemma_le2_batch(200000, 1, e).lhs; }, workers);

  row("appendix suite",
      [](const Execution& e) {
        double worst = 0.0;
        for (const auto& c : run_suite("appendix", 1, e)) worst = std::max(worst, c.abs_diff);
        return worst;
      },
      workers);
  return 0;
}

#include "qest/cli.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "qest/montecarlo.hpp"
#include "qest/report.hpp"
#include "qest/validation.hpp"

namespace qest {

namespace {

struct Options {
  int k = 2;
  std::int64_t n = 1;
  int m = 1;
  std::int64_t trials = 100000;
  std::optional<double> eps;
  std::uint64_t seed = 1;
  std::string deviation = "bures2";
  std::string format = "csv";
  std::string out_path;
  int workers = 0;
  std::string suite = "appendix";
  std::string sampler = "optimal";
  std::string reference = "beta";
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

DeviationMeasure parse_deviation(const std::string& text, const std::optional<double>& eps) {
  if (text == "bures2") return DeviationMeasure::bures_power(2.0);
  if (text == "fs2") return DeviationMeasure::fs_squared();
  if (text == "ball") {
    if (!eps) throw UsageError("--deviation ball needs --eps");
    return DeviationMeasure::ball_indicator(*eps);
  }
  const std::string prefix = "buresgamma=";
  if (text.rfind(prefix, 0) == 0) {
    const std::string value = text.substr(prefix.size());
    std::size_t used = 0;
    double gamma = 0.0;
    try {
      gamma = std::stod(value, &used);
    } catch (const std::exception&) {
      throw UsageError("cannot read gamma in '" + text + "'");
    }
    if (used != value.size()) throw UsageError("cannot read gamma in '" + text + "'");
    return DeviationMeasure::bures_power(gamma);
  }
  throw UsageError("unknown deviation '" + text + "' (bures2, buresgamma=G, fs2, ball)");
}

ExperimentConfig make_config(const Options& o) {
  ExperimentConfig c;
  c.k = o.k;
  c.n = o.n;
  c.m = o.m;
  c.trials = o.trials;
  c.eps = o.eps;
  c.seed = o.seed;
  c.deviation = parse_deviation(o.deviation, o.eps);
  c.validate();
  return c;
}

void add_common(CLI::App* sub, Options& o, bool experiment) {
  sub->add_option("--seed", o.seed, "master seed");
  sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", o.out_path, "write the report to this path");
  sub->add_option("--workers", o.workers, "OpenMP workers (0 = default)")->check(CLI::NonNegativeNumber);
  if (!experiment) return;
  sub->add_option("--k", o.k, "Hilbert space dimension");
  sub->add_option("--n", o.n, "copies (batches for compare)");
  sub->add_option("--m", o.m, "copies per batch");
  sub->add_option("--trials", o.trials, "Monte Carlo trials");
  sub->add_option("--eps", o.eps, "radius in radians");
}

int report_exit(const std::vector<ErrorReport>& reports, OutputFormat format, std::ostream& err) {
  std::vector<ErrorReport> failing;
  for (const auto& r : reports) {
    if (!r.within_band(3.0)) failing.push_back(r);
  }
  if (failing.empty()) return kExitOk;
  err << "estimate outside the 3 sigma band of its exact reference:\n";
  write_reports(err, failing, format);
  return kExitCheckFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Pure-state estimation lab: optimal collective and batched measurements"};
  app.name("qest");
  app.require_subcommand(1, 1);

  auto* mse = app.add_subcommand("mse", "mean deviation of the optimal measurement");
  add_common(mse, o, true);
  mse->add_option("--deviation", o.deviation, "bures2 | buresgamma=G | fs2 | ball");
  auto* tail = app.add_subcommand("tail", "tail probability P(d_fs >= eps)");
  add_common(tail, o, true);
  auto* ldp = app.add_subcommand("ldp", "large-deviation rate log P / (eps^2 n)");
  add_common(ldp, o, true);
  auto* compare = app.add_subcommand("compare", "collective vs batched + MLE on n*m copies");
  add_common(compare, o, true);
  auto* sample = app.add_subcommand("sample", "KS test of an overlap sampler");
  add_common(sample, o, true);
  sample->add_option("--sampler", o.sampler, "sampler id");
  sample->add_option("--reference", o.reference, "sampler id, beta or beta:A:B");
  auto* validate = app.add_subcommand("validate", "appendix identity checks");
  add_common(validate, o, false);
  validate->add_option("--suite", o.suite, "appendix | optimality")->check(CLI::IsMember(suite_names()));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  const OutputFormat format = o.format == "json" ? OutputFormat::kJson : OutputFormat::kCsv;
  const Execution exec{o.workers, false};

  // Run into a buffer so a failed run leaves no partial file.
  std::ostringstream buffer;
  int code = kExitOk;
  try {
    if (mse->parsed()) {
      const auto config = make_config(o);
      const std::vector reports{estimate_collective_error(config, exec)};
      write_reports(buffer, reports, format);
      code = report_exit(reports, format, err);
    } else if (tail->parsed() || ldp->parsed()) {
      if (!o.eps) throw UsageError("--eps is required");
      const auto config = make_config(o);
      const std::vector reports{tail->parsed() ? estimate_tail(config, exec) : estimate_ld_rate(config, exec)};
      write_reports(buffer, reports, format);
      code = report_exit(reports, format, err);
    } else if (compare->parsed()) {
      const auto config = make_config(o);
      const auto cmp = compare_protocols(config, exec);
      std::vector reports{cmp.collective, cmp.semiclassical};
      if (cmp.collective_tail) reports.push_back(*cmp.collective_tail);
      if (cmp.semiclassical_tail) reports.push_back(*cmp.semiclassical_tail);
      write_reports(buffer, reports, format);
      code = report_exit(reports, format, err);
    } else if (sample->parsed()) {
      require_dimension(o.k);
      if (o.trials < ExperimentConfig::kMinTrials) throw UsageError("--trials must be at least 100");
      const auto outcome = ks_overlap_test({o.sampler, o.reference, o.k, o.n, o.trials, o.seed}, exec);
      write_ks(buffer, outcome, format);
      if (!outcome.result.pass) {
        err << "KS test rejects at the 1% level:\n";
        write_ks(err, outcome, format);
        code = kExitCheckFailed;
      }
    } else if (validate->parsed()) {
      const auto checks = run_suite(o.suite, o.seed, exec);
      write_checks(buffer, checks, format);
      std::vector<LemmaCheckResult> failing;
      std::copy_if(checks.begin(), checks.end(), std::back_inserter(failing),
                   [](const LemmaCheckResult& c) { return !c.pass; });
      if (!failing.empty()) {
        err << failing.size() << " check(s) failed:\n";
        write_checks(err, failing, format);
        code = kExitCheckFailed;
      }
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (o.out_path.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(o.out_path, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << o.out_path << "\n";
      return kExitUsage;
    }
    file << buffer.str();
  }
  return code;
}

}  // namespace qest

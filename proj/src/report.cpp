#include "qest/report.hpp"

#include <charconv>
#include <cmath>
#include <optional>
#include <system_error>

#include "json.hpp"

namespace qest {

namespace {

using nlohmann::ordered_json;

struct Row {
  std::string experiment;
  int k;
  std::int64_t n;
  int m;
  std::optional<double> eps;
  std::int64_t trials;
  std::uint64_t seed;
  std::optional<double> estimate;
  std::optional<double> std_error;
  std::optional<double> reference;
  Provenance provenance;
};

std::vector<Row> rows_of(const ErrorReport& r) {
  std::vector<Row> rows;
  rows.push_back({r.experiment, r.k, r.n, r.m, r.eps, r.trials_used, r.seed, r.estimate,
                  r.analytic_only ? std::nullopt : std::optional<double>(r.std_error), std::nullopt,
                  r.estimate_provenance});
  if (r.reference) {
    rows.push_back({r.experiment, r.k, r.n, r.m, r.eps, r.trials_used, r.seed, std::nullopt, std::nullopt,
                    r.reference, r.reference_provenance});
  }
  return rows;
}

std::string cell(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

ordered_json json_number(const std::optional<double>& v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return *v;
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  if (res.ec != std::errc()) return "nan";
  return std::string(buf, res.ptr);
}

void write_reports(std::ostream& out, const std::vector<ErrorReport>& reports, OutputFormat format) {
  std::vector<Row> rows;
  for (const auto& r : reports) {
    auto part = rows_of(r);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  if (format == OutputFormat::kCsv) {
    out << "experiment,k,n,m,eps,trials,seed,estimate,std_error,reference,provenance\n";
    for (const auto& r : rows) {
      out << r.experiment << ',' << r.k << ',' << r.n << ',' << r.m << ',' << cell(r.eps) << ',' << r.trials
          << ',' << r.seed << ',' << cell(r.estimate) << ',' << cell(r.std_error) << ',' << cell(r.reference)
          << ',' << to_string(r.provenance) << '\n';
    }
    return;
  }
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows) {
    arr.push_back({{"experiment", r.experiment},
                   {"k", r.k},
                   {"n", r.n},
                   {"m", r.m},
                   {"eps", json_number(r.eps)},
                   {"trials", r.trials},
                   {"seed", r.seed},
                   {"estimate", json_number(r.estimate)},
                   {"std_error", json_number(r.std_error)},
                   {"reference", json_number(r.reference)},
                   {"provenance", to_string(r.provenance)}});
  }
  out << arr.dump(2) << '\n';
}

void write_checks(std::ostream& out, const std::vector<LemmaCheckResult>& checks, OutputFormat format) {
  if (format == OutputFormat::kCsv) {
    out << "lemma_id,lhs,rhs,abs_diff,tolerance,pass\n";
    for (const auto& c : checks) {
      out << c.lemma_id << ',' << format_number(c.lhs) << ',' << format_number(c.rhs) << ','
          << format_number(c.abs_diff) << ',' << format_number(c.tolerance) << ',' << (c.pass ? "true" : "false")
          << '\n';
    }
    return;
  }
  ordered_json arr = ordered_json::array();
  for (const auto& c : checks) {
    arr.push_back({{"lemma_id", c.lemma_id},
                   {"lhs", json_number(c.lhs)},
                   {"rhs", json_number(c.rhs)},
                   {"abs_diff", json_number(c.abs_diff)},
                   {"tolerance", json_number(c.tolerance)},
                   {"pass", c.pass}});
  }
  out << arr.dump(2) << '\n';
}

void write_ks(std::ostream& out, const KsOutcome& o, OutputFormat format) {
  const auto& q = o.request;
  const auto& s = o.result;
  if (format == OutputFormat::kCsv) {
    out << "sampler_a,sampler_b,k,n,trials,seed,statistic,p_value,critical_value,pass\n";
    out << q.sampler_a << ',' << q.sampler_b << ',' << q.k << ',' << q.n << ',' << q.trials << ',' << q.seed << ','
        << format_number(s.statistic) << ',' << format_number(s.p_value) << ',' << format_number(s.critical_value)
        << ',' << (s.pass ? "true" : "false") << '\n';
    return;
  }
  ordered_json obj = {{"sampler_a", q.sampler_a},
                      {"sampler_b", q.sampler_b},
                      {"k", q.k},
                      {"n", q.n},
                      {"trials", q.trials},
                      {"seed", q.seed},
                      {"statistic", s.statistic},
                      {"p_value", s.p_value},
                      {"critical_value", s.critical_value},
                      {"pass", s.pass}};
  out << ordered_json::array({obj}).dump(2) << '\n';
}

}  // namespace qest

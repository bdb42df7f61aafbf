#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "qest/cli.hpp"
#include "qest/report.hpp"

using namespace qest;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("number formatting is shortest round trip") {
  CHECK(format_number(0.25) == "0.25");
  CHECK(format_number(1.0 / 7.0) == "0.14285714285714285");
  CHECK(format_number(1e-20) == "1e-20");
  CHECK(format_number(3.0) == "3");
}

TEST_CASE("mse report with exact reference") {
  const auto r = run({"mse", "--k", "2", "--n", "5", "--deviation", "bures2", "--trials", "100000", "--seed", "7"});
  CHECK(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == "experiment,k,n,m,eps,trials,seed,estimate,std_error,reference,provenance");
  CHECK(rows[1].rfind("mse,2,5,1,,100000,7,", 0) == 0);
  CHECK(rows[1].substr(rows[1].size() - 3) == ",mc");
  CHECK(rows[2] == "mse,2,5,1,,100000,7,,,0.14285714285714285,closed_form");
}

TEST_CASE("tail report") {
  const auto r = run({"tail", "--k", "2", "--n", "1", "--eps", "0.7853981633974483", "--trials", "200000", "--seed", "1"});
  CHECK(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[2].find(",0.25") != std::string::npos);
  CHECK(rows[2].substr(rows[2].size() - 12) == ",closed_form");
}

TEST_CASE("json mirrors csv") {
  const auto r = run({"mse", "--k", "3", "--n", "4", "--trials", "1000", "--format", "json"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.size() == 2);
  CHECK(j[0]["provenance"] == "mc");
  CHECK(j[1]["reference"].get<double>() == doctest::Approx(2.0 / 7.0));
  CHECK(j[0]["eps"].is_null());
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"mse", "--bogus", "1"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"mse", "--k", "1"}).code == 2);
  CHECK(run({"mse", "--trials", "0"}).code == 2);
  CHECK(run({"mse", "--deviation", "ball"}).code == 2);
  CHECK(run({"mse", "--deviation", "buresgamma=abc"}).code == 2);
  CHECK(run({"tail", "--k", "2"}).code == 2);
  CHECK(run({"mse", "--format", "xml"}).code == 2);
  CHECK(run({"validate", "--suite", "nothing"}).code == 2);
  CHECK(run({"sample", "--sampler", "nothing", "--trials", "1000"}).code == 2);
  const auto r = run({"mse", "--bogus"});
  CHECK(r.err.find("Usage") != std::string::npos);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("failed checks exit 1 with the failing row") {
  const auto r = run({"sample", "--k", "3", "--n", "1", "--trials", "100000", "--reference", "beta:3:2"});
  CHECK(r.code == 1);
  CHECK(r.err.find("false") != std::string::npos);
  const auto ok = run({"sample", "--k", "3", "--n", "1", "--trials", "20000", "--sampler", "random_basis",
                       "--reference", "optimal"});
  CHECK(ok.code == 0);
}

TEST_CASE("other experiment reports") {
  const auto ldp = run({"ldp", "--k", "2", "--n", "10000", "--eps", "0.05", "--trials", "1000"});
  CHECK(ldp.code == 0);
  CHECK(lines(ldp.out).size() == 3);
  const auto cmp = run({"compare", "--k", "2", "--m", "2", "--n", "100", "--trials", "200", "--eps", "0.2"});
  CHECK(cmp.code == 0);
  const auto rows = lines(cmp.out);
  CHECK(rows.size() == 8);
  CHECK(rows[1].rfind("compare_collective,2,100,2,0.2,200,1,", 0) == 0);
  CHECK(rows[2].substr(rows[2].size() - 11) == ",asymptotic");
}

TEST_CASE("--out writes the file; worker count does not change bytes") {
  const std::string path = "qest_cli_test_out.csv";
  const auto a = run({"compare", "--k", "2", "--n", "200", "--trials", "300", "--seed", "42", "--workers", "1",
                      "--out", path});
  CHECK(a.code == 0);
  CHECK(a.out.empty());
  std::ifstream in(path);
  std::stringstream file;
  file << in.rdbuf();
  const auto b = run({"compare", "--k", "2", "--n", "200", "--trials", "300", "--seed", "42", "--workers", "8"});
  CHECK(file.str() == b.out);
  std::remove(path.c_str());
}

TEST_CASE("validation output schema") {
  std::ostringstream out;
  write_checks(out, {make_check("to:n=1:m=1", 0.5, 0.5, 0.0)}, OutputFormat::kCsv);
  CHECK(out.str() == "lemma_id,lhs,rhs,abs_diff,tolerance,pass\nto:n=1:m=1,0.5,0.5,0,0,true\n");
}

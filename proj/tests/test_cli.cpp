#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "graphon/cli.hpp"
#include "graphon/optimizer.hpp"
#include "graphon/report_io.hpp"

using namespace graphon;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "graphon_lab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Outcome o;
  o.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

}  // namespace

TEST_CASE("solve writes a converged JSON report") {
  const auto o = invoke({"solve", "--e", "0.75", "--delta", "0.01", "--k", "3", "--format", "json"});
  REQUIRE(o.code == 0);
  const auto j = nlohmann::json::parse(o.out);
  CHECK(j["converged"] == true);
  CHECK(j["regime"] == "below");
  CHECK(j["k"] == 3);
  CHECK(j["residual_tau"].get<double>() <= 1e-12);
  CHECK(j["coords"]["kind"] == "below");
  const auto r = report_from_json(o.out);
  CHECK(r.graphon.c == j["c"].get<double>());
  CHECK(report_to_json(r) == o.out);
}

TEST_CASE("report JSON round trip is exact") {
  const auto r = solve_above(0.6, 1e-3, 3);
  const auto back = report_from_json(report_to_json(r));
  CHECK(back.graphon.a == r.graphon.a);
  CHECK(back.graphon.b == r.graphon.b);
  CHECK(back.graphon.c == r.graphon.c);
  CHECK(back.graphon.d == r.graphon.d);
  CHECK(back.entropy == r.entropy);
  CHECK(back.tau == r.tau);
  CHECK(back.regime == Regime::above);
  CHECK(std::get<AboveCoords>(back.coords).d == std::get<AboveCoords>(r.coords).d);
  CHECK_THROWS(report_from_json("{\"eps\": 1}"));
  CHECK_THROWS(report_from_json("not json"));
}

TEST_CASE("sweep CSV header, order and reproducibility") {
  const std::vector<std::string> base = {"sweep", "--e", "0.75", "--tau-from", "0.4218", "--tau-to", "0.422",
                                         "--points", "9"};
  const auto a = invoke(base);
  REQUIRE(a.code == 0);
  const auto rows = lines(a.out);
  REQUIRE(rows.size() == 10);
  CHECK(rows[0] == "eps,tau,regime,a,b,c,d,mu,entropy,grad_norm,iterations,converged,residual_eps,residual_tau");
  CHECK(rows[1].find(",below,") != std::string::npos);
  CHECK(rows[9].find(",above,") != std::string::npos);
  double prev = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double tau = std::stod(rows[i].substr(rows[i].find(',') + 1));
    CHECK(tau > prev);
    prev = tau;
  }
  auto with_jobs = base;
  with_jobs.insert(with_jobs.end(), {"--jobs", "3"});
  CHECK(invoke(base).out == a.out);
  CHECK(invoke(with_jobs).out == a.out);
}

TEST_CASE("series command") {
  const auto o = invoke({"series", "--e", "0.75", "--delta", "0.01"});
  REQUIRE(o.code == 0);
  const auto j = nlohmann::json::parse(o.out);
  CHECK(j["c"].get<double>() == doctest::Approx(0.0192));
  CHECK(invoke({"series", "--e", "0.75"}).code == 2);
}

TEST_CASE("exit codes") {
  CHECK(invoke({"solve", "--e", "0.4", "--delta", "0.01"}).code == 2);
  CHECK(invoke({"solve", "--e", "0.75", "--delta", "0.01", "--k", "4"}).code == 2);
  CHECK(invoke({"solve", "--e", "0.75", "--delta", "0.01", "--max-iter", "1"}).code == 3);
  CHECK(invoke({"solve", "--e", "0.75", "--delta", "0.01", "--eta", "0.001"}).code == 3);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({"solve", "--bogus"}).code == 2);
  CHECK(invoke({"solve", "--e", "0.75", "--delta", "0.01", "--format", "xml"}).code == 2);
  const auto help = invoke({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("--tau-from") != std::string::npos);
}

TEST_CASE("config file values yield to flags") {
  const std::string path = "/tmp/graphon_lab_test_config.ini";
  {
    std::ofstream f(path);
    f << "e=0.6\ndelta=0.02\nk=5\n";
  }
  const auto from_file = nlohmann::json::parse(invoke({"solve", "--config", path}).out);
  CHECK(from_file["eps"].get<double>() == 0.6);
  CHECK(from_file["k"] == 5);
  const auto mixed = nlohmann::json::parse(invoke({"solve", "--config", path, "--e", "0.75"}).out);
  CHECK(mixed["eps"].get<double>() == 0.75);
  CHECK(mixed["k"] == 5);
  std::remove(path.c_str());
}

TEST_CASE("sample command writes an edge list or a Monte Carlo report") {
  const auto g = invoke({"sample", "--e", "0.75", "--delta", "0.05", "--n", "30", "--seed", "4"});
  REQUIRE(g.code == 0);
  CHECK(lines(g.out)[0] == "# n=30 seed=4");
  CHECK(invoke({"sample", "--e", "0.75", "--delta", "0.05", "--n", "30", "--seed", "4"}).out == g.out);
  const auto mc = invoke({"sample", "--e", "0.75", "--delta", "0.05", "--n", "100", "--reps", "3"});
  REQUIRE(mc.code == 0);
  const auto j = nlohmann::json::parse(mc.out);
  CHECK(j["reps"] == 3);
  CHECK(j.contains("edge"));
  CHECK(j.contains("triangle"));
}

TEST_CASE("constraint check suite") {
  const auto o = invoke({"check", "--suite", "constraints", "--reps", "200"});
  CHECK(o.code == 0);
  CHECK(o.out.find("PASS") != std::string::npos);
  CHECK(invoke({"check", "--suite", "nope"}).code == 2);
}

TEST_CASE("output file") {
  const std::string path = "/tmp/graphon_lab_test_out.csv";
  const auto o = invoke({"solve", "--e", "0.75", "--dtau", "0.001", "--format", "csv", "--out", path});
  REQUIRE(o.code == 0);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == kCsvHeader);
  std::remove(path.c_str());
}

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace graphon {

struct RunConfig {
  std::string command;  // solve, series, sweep, oracle, sample, check
  std::optional<double> e;
  std::optional<double> delta;
  std::optional<double> dtau;
  std::optional<double> tau;
  int k = 3;
  std::optional<double> tau_from;
  std::optional<double> tau_to;
  int points = 50;
  int grid_n = 100;
  std::uint64_t seed = 1;
  std::optional<int> reps;
  int n = 1000;  // sampled graph size
  double tol = 1e-10;
  int max_iter = 200;
  double eta = 0.1;
  int jobs = 1;
  std::string out_path;
  std::string format;  // csv or json; empty picks the command default
  std::string suite = "series-orders";
  std::string grid_file;
};

// Exit status: 0 success, 1 failed check, 2 domain or usage error, 3
// convergence failure.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses flags (and a key=value file named by --config; flags win) and runs.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace graphon

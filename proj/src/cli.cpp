#include "graphon/cli.hpp"

#include <cmath>
#include <fstream>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "graphon/errors.hpp"
#include "graphon/grid.hpp"
#include "graphon/log.hpp"
#include "graphon/optimizer.hpp"
#include "graphon/report_io.hpp"
#include "graphon/rng.hpp"
#include "graphon/sampler.hpp"
#include "graphon/series.hpp"

namespace graphon {

namespace {

std::string num(double v) { return fmt::format("{:.17g}", v); }

SolveOptions solve_options(const RunConfig& cfg) {
  SolveOptions opts;
  opts.tol_grad = cfg.tol;
  opts.max_iter = cfg.max_iter;
  opts.eta_region = cfg.eta;
  return opts;
}

double require_e(const RunConfig& cfg) {
  if (!cfg.e) throw DomainError(fmt::format("{} needs --e", cfg.command));
  return *cfg.e;
}

// The single target given by --delta, --dtau or --tau, as a cycle density.
double target_tau(const RunConfig& cfg, double e) {
  const int given = (cfg.delta ? 1 : 0) + (cfg.dtau ? 1 : 0) + (cfg.tau ? 1 : 0);
  if (given != 1) throw DomainError(fmt::format("{} needs exactly one of --delta, --dtau, --tau", cfg.command));
  if (cfg.delta) return std::pow(e, cfg.k) - std::pow(*cfg.delta, cfg.k);
  if (cfg.dtau) return std::pow(e, cfg.k) + *cfg.dtau;
  return *cfg.tau;
}

SolverReport solve_target(const RunConfig& cfg, double e) {
  const SolveOptions opts = solve_options(cfg);
  if (cfg.delta && !cfg.dtau && !cfg.tau) return solve_below(e, *cfg.delta, cfg.k, opts);
  if (cfg.dtau && !cfg.delta && !cfg.tau) return solve_above(e, *cfg.dtau, cfg.k, opts);
  return solve(e, target_tau(cfg, e), cfg.k, opts);
}

// Writes to --out when given, otherwise to the command's stream.
class Sink {
 public:
  Sink(const RunConfig& cfg, std::ostream& fallback) : os_(&fallback) {
    if (!cfg.out_path.empty()) {
      file_.open(cfg.out_path, std::ios::binary);
      if (!file_) throw DomainError(fmt::format("cannot open {} for writing", cfg.out_path));
      os_ = &file_;
    }
  }
  std::ostream& stream() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

std::string format_or(const RunConfig& cfg, const char* fallback) {
  const std::string f = cfg.format.empty() ? fallback : cfg.format;
  if (f != "csv" && f != "json") throw DomainError(fmt::format("unknown format '{}'", f));
  return f;
}

int cmd_solve(const RunConfig& cfg, std::ostream& out) {
  const SolverReport r = solve_target(cfg, require_e(cfg));
  Sink sink(cfg, out);
  if (format_or(cfg, "json") == "csv") {
    sink.stream() << kCsvHeader << '\n' << csv_row(r) << '\n';
  } else {
    sink.stream() << report_to_json(r);
  }
  return 0;
}

int cmd_series(const RunConfig& cfg, std::ostream& out) {
  const double e = require_e(cfg);
  Sink sink(cfg, out);
  if (cfg.delta && !cfg.dtau) {
    sink.stream() << series_to_json(params_below(e, *cfg.delta, cfg.k), Regime::below, e, *cfg.delta, cfg.k);
  } else if (cfg.dtau && !cfg.delta) {
    sink.stream() << series_to_json(params_above(e, *cfg.dtau, cfg.k), Regime::above, e, *cfg.dtau, cfg.k);
  } else {
    throw DomainError("series needs exactly one of --delta, --dtau");
  }
  return 0;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  const double e = require_e(cfg);
  if (!cfg.tau_from || !cfg.tau_to) throw DomainError("sweep needs --tau-from and --tau-to");
  if (cfg.points < 1) throw DomainError("sweep needs --points >= 1");
  std::vector<double> taus;
  for (int i = 0; i < cfg.points; ++i) {
    const double f = cfg.points == 1 ? 0.0 : static_cast<double>(i) / (cfg.points - 1);
    taus.push_back(*cfg.tau_from + f * (*cfg.tau_to - *cfg.tau_from));
  }
  const std::vector<SweepPoint> pts = sweep(e, taus, cfg.k, solve_options(cfg), cfg.jobs);
  Sink sink(cfg, out);
  const bool csv = format_or(cfg, "csv") == "csv";
  if (csv) {
    sink.stream() << kCsvHeader << '\n';
  } else {
    sink.stream() << "[\n";
  }
  bool first = true;
  for (const SweepPoint& p : pts) {
    if (!p.report) {
      spdlog::error("sweep point tau={} failed: {}", num(p.tau), p.error);
      continue;
    }
    if (csv) {
      sink.stream() << csv_row(*p.report) << '\n';
    } else {
      sink.stream() << (first ? "" : ",\n") << report_to_json(*p.report);
    }
    first = false;
  }
  if (!csv) sink.stream() << "]\n";
  return 0;
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out) {
  const double e = require_e(cfg);
  const double t = target_tau(cfg, e);
  const int seeds = cfg.reps.value_or(5);
  if (seeds < 1) throw DomainError("oracle needs --reps >= 1");
  OracleOptions opts;
  std::optional<OracleResult> best;
  std::uint64_t best_seed = 0;
  std::string runs;
  for (int s = 0; s < seeds; ++s) {
    const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(s);
    opts.seed = seed;
    std::string entry;
    try {
      OracleResult r = maximize_entropy(random_grid(cfg.grid_n, e, 0.4, seed, 2), e, t, cfg.k, opts);
      entry = fmt::format("{{\"seed\": {}, \"entropy\": {}, \"residual\": {}}}", seed, num(r.entropy),
                          num(r.residual));
      if (!best || r.entropy > best->entropy) {
        best = std::move(r);
        best_seed = seed;
      }
    } catch (const ConstraintInfeasible& ex) {
      spdlog::error("oracle seed {} failed: {}", seed, ex.what());
      entry = fmt::format("{{\"seed\": {}, \"error\": \"{}\"}}", seed, ex.what());
    }
    runs += (runs.empty() ? "" : ", ") + entry;
  }
  if (!best) throw ConstraintInfeasible("oracle: every seed failed");
  if (!cfg.grid_file.empty()) write_grid_binary(best->grid, cfg.grid_file);
  const Diagnostics d = diagnostics(best->grid, e);
  Sink sink(cfg, out);
  sink.stream() << fmt::format(
      "{{\n  \"eps\": {},\n  \"tau\": {},\n  \"k\": {},\n  \"grid_n\": {},\n  \"best_seed\": {},\n"
      "  \"entropy\": {},\n  \"residual\": {},\n  \"diagnostics\": {},\n  \"runs\": [{}]\n}}\n",
      num(e), num(t), cfg.k, cfg.grid_n, best_seed, num(best->entropy), num(best->residual),
      diagnostics_to_json(d), runs);
  return 0;
}

int cmd_sample(const RunConfig& cfg, std::ostream& out) {
  const double e = require_e(cfg);
  const SolverReport r = solve_target(cfg, e);
  const int reps = cfg.reps.value_or(1);
  Sink sink(cfg, out);
  if (reps <= 1) {
    write_edge_list(sample_graph(r.graphon, cfg.n, cfg.seed), sink.stream());
  } else {
    sink.stream() << mc_report_to_json(mc_check(r.graphon, cfg.n, reps, cfg.seed));
  }
  return 0;
}

int check_series_orders(const RunConfig& cfg, std::ostream& out) {
  const double e = cfg.e.value_or(0.75);
  const std::vector<double> below_scales = {0.02, 0.01, 0.005};
  const std::vector<double> above_scales = {2e-3, 1e-3, 5e-4};
  const SolveOptions opts = solve_options(cfg);
  bool ok = true;
  for (Regime regime : {Regime::below, Regime::above}) {
    const auto& scales = regime == Regime::below ? below_scales : above_scales;
    const SeriesPrediction p = regime == Regime::below ? params_below(e, scales[0], cfg.k)
                                                       : params_above(e, scales[0], cfg.k);
    for (Field f : {Field::a, Field::b, Field::c, Field::d, Field::mu, Field::entropy}) {
      const double slope = convergence_order(f, regime, e, cfg.k, scales, opts);
      const double need = p.order(f) - 0.5;
      const bool pass = slope >= need;
      ok = ok && pass;
      out << fmt::format("{} {:<7} slope {:.3f} need >= {:.1f} {}\n", regime_name(regime), field_name(f), slope, need,
                         pass ? "PASS" : "FAIL");
    }
  }
  return ok ? 0 : 1;
}

int check_constraints(const RunConfig& cfg, std::ostream& out) {
  const int points = cfg.reps.value_or(100);
  const CounterRng rng(cfg.seed, 0x636865636bULL);
  std::uint64_t counter = 0;
  double worst_eps = 0.0;
  double worst_tau = 0.0;
  int failures = 0;
  const SolveOptions opts = solve_options(cfg);
  for (int i = 0; i < points; ++i) {
    const double e = 0.55 + 0.4 * rng.uniform(counter++);
    const bool below = rng.uniform(counter++) < 0.5;
    const int k = 3 + 2 * static_cast<int>(rng.uniform(counter++) * 3.0);
    const Regime regime = below ? Regime::below : Regime::above;
    const double scale = scale_limit(regime, e, k, opts.eta_region) * std::pow(10.0, -rng.uniform(counter++));
    try {
      const SolverReport r = below ? solve_below(e, scale, k, opts) : solve_above(e, scale, k, opts);
      worst_eps = std::max(worst_eps, r.residual_eps);
      worst_tau = std::max(worst_tau, r.residual_tau);
    } catch (const std::exception& ex) {
      ++failures;
      spdlog::error("constraint check e={} {} scale={} k={}: {}", num(e), regime_name(regime), num(scale), k,
                    ex.what());
    }
  }
  const bool ok = failures == 0 && worst_eps <= 1e-12 && worst_tau <= 1e-12;
  out << fmt::format("points {} failures {} max residual_eps {:.3e} max residual_tau {:.3e} {}\n", points, failures,
                     worst_eps, worst_tau, ok ? "PASS" : "FAIL");
  return ok ? 0 : 1;
}

int cmd_check(const RunConfig& cfg, std::ostream& out) {
  if (cfg.suite == "series-orders") return check_series_orders(cfg, out);
  if (cfg.suite == "constraints") return check_constraints(cfg, out);
  throw DomainError(fmt::format("unknown check suite '{}' (series-orders, constraints)", cfg.suite));
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  init_logging();
  try {
    require_odd_cycle(cfg.k);
    if (cfg.jobs < 1) throw DomainError("--jobs must be at least 1");
    if (cfg.command == "solve") return cmd_solve(cfg, out);
    if (cfg.command == "series") return cmd_series(cfg, out);
    if (cfg.command == "sweep") return cmd_sweep(cfg, out);
    if (cfg.command == "oracle") return cmd_oracle(cfg, out);
    if (cfg.command == "sample") return cmd_sample(cfg, out);
    if (cfg.command == "check") return cmd_check(cfg, out);
    throw DomainError(fmt::format("unknown command '{}'", cfg.command));
  } catch (const DomainError& ex) {
    err << "error: " << ex.what() << '\n';
    return 2;
  } catch (const ConvergenceError& ex) {
    err << "convergence failure: " << ex.what() << '\n';
    return 3;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Entropy-maximizing graphons near the independent-edge curve", "graphon_lab"};
  app.add_option("command", cfg.command, "solve | series | sweep | oracle | sample | check")->required();

  double e = 0, delta = 0, dtau = 0, tau = 0, tau_from = 0, tau_to = 0;
  int reps = 0;
  auto* o_e = app.add_option("--e", e, "edge density");
  auto* o_delta = app.add_option("--delta", delta, "below the curve: tau = e^k - delta^k");
  auto* o_dtau = app.add_option("--dtau", dtau, "above the curve: tau = e^k + dtau");
  auto* o_tau = app.add_option("--tau", tau, "target cycle density");
  app.add_option("--k", cfg.k, "odd cycle length")->capture_default_str();
  auto* o_from = app.add_option("--tau-from", tau_from, "sweep start");
  auto* o_to = app.add_option("--tau-to", tau_to, "sweep end");
  app.add_option("--points", cfg.points, "sweep points")->capture_default_str();
  app.add_option("--grid-n", cfg.grid_n, "oracle grid size")->capture_default_str();
  app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  auto* o_reps = app.add_option("--reps", reps, "oracle seeds, sample repetitions or check points");
  app.add_option("--n", cfg.n, "sampled graph size")->capture_default_str();
  app.add_option("--tol", cfg.tol, "gradient tolerance")->capture_default_str();
  app.add_option("--max-iter", cfg.max_iter, "solver iteration cap")->capture_default_str();
  app.add_option("--eta", cfg.eta, "validity region size")->capture_default_str();
  app.add_option("--jobs", cfg.jobs, "concurrent sweep points")->capture_default_str();
  app.add_option("--out", cfg.out_path, "output file (default stdout)");
  app.add_option("--format", cfg.format, "csv or json");
  app.add_option("--suite", cfg.suite, "check suite: series-orders or constraints")->capture_default_str();
  app.add_option("--grid-file", cfg.grid_file, "oracle: write the best grid here (binary)");
  app.set_config("--config", "", "key=value file; command-line flags take precedence");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& ex) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& ex) {
    err << "usage error: " << ex.what() << "\n" << "run with --help for the list of flags\n";
    return 2;
  }
  if (o_e->count()) cfg.e = e;
  if (o_delta->count()) cfg.delta = delta;
  if (o_dtau->count()) cfg.dtau = dtau;
  if (o_tau->count()) cfg.tau = tau;
  if (o_from->count()) cfg.tau_from = tau_from;
  if (o_to->count()) cfg.tau_to = tau_to;
  if (o_reps->count()) cfg.reps = reps;
  return run(cfg, out, err);
}

}  // namespace graphon

#include "graphon/report_io.hpp"

#include <cmath>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "graphon/errors.hpp"

namespace graphon {

namespace {

// JSON has no literal for non-finite numbers.
std::string num(double v) { return std::isfinite(v) ? fmt::format("{:.17g}", v) : "null"; }

std::string coords_json(const Coords& coords) {
  if (const auto* b = std::get_if<BelowCoords>(&coords)) {
    return fmt::format("{{\"kind\": \"below\", \"delta\": {}, \"a\": {}, \"mu\": {}}}", num(b->delta), num(b->a),
                       num(b->mu));
  }
  if (const auto* a = std::get_if<AboveCoords>(&coords)) {
    return fmt::format("{{\"kind\": \"above\", \"dtau\": {}, \"a\": {}, \"d\": {}}}", num(a->dtau), num(a->a),
                       num(a->d));
  }
  return "null";
}

Regime parse_regime(const std::string& s) {
  if (s == "below") return Regime::below;
  if (s == "above") return Regime::above;
  if (s == "boundary") return Regime::boundary;
  throw DomainError(fmt::format("unknown regime '{}'", s));
}

std::string stats_json(const DensityStats& s) {
  return fmt::format("{{\"mean\": {}, \"stdev\": {}, \"graphon\": {}, \"expected\": {}, \"z\": {}}}", num(s.mean),
                     num(s.stdev), num(s.graphon), num(s.expected), num(s.z));
}

}  // namespace

std::string csv_row(const SolverReport& r) {
  const BipodalGraphon& g = r.graphon;
  return fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{}", num(r.e), num(r.tau), regime_name(r.regime),
                     num(g.a), num(g.b), num(g.c), num(g.d), num(r.mu), num(r.entropy), num(r.grad_norm),
                     r.iterations, r.converged ? "true" : "false", num(r.residual_eps), num(r.residual_tau));
}

std::string report_to_json(const SolverReport& r) {
  const BipodalGraphon& g = r.graphon;
  std::string out = "{\n";
  out += fmt::format("  \"eps\": {},\n  \"tau\": {},\n  \"k\": {},\n  \"regime\": \"{}\",\n", num(r.e), num(r.tau),
                     r.k, regime_name(r.regime));
  out += fmt::format("  \"a\": {},\n  \"b\": {},\n  \"c\": {},\n  \"d\": {},\n", num(g.a), num(g.b), num(g.c),
                     num(g.d));
  out += fmt::format("  \"mu\": {},\n  \"entropy\": {},\n  \"grad_norm\": {},\n  \"iterations\": {},\n", num(r.mu),
                     num(r.entropy), num(r.grad_norm), r.iterations);
  out += fmt::format("  \"converged\": {},\n  \"residual_eps\": {},\n  \"residual_tau\": {},\n",
                     r.converged ? "true" : "false", num(r.residual_eps), num(r.residual_tau));
  out += fmt::format("  \"coords\": {}\n}}\n", coords_json(r.coords));
  return out;
}

SolverReport report_from_json(const std::string& text) {
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    SolverReport r;
    r.e = j.at("eps").get<double>();
    r.tau = j.at("tau").get<double>();
    r.k = j.at("k").get<int>();
    r.regime = parse_regime(j.at("regime").get<std::string>());
    r.graphon = {j.at("a").get<double>(), j.at("b").get<double>(), j.at("c").get<double>(), j.at("d").get<double>()};
    r.mu = j.at("mu").get<double>();
    r.entropy = j.at("entropy").get<double>();
    r.grad_norm = j.at("grad_norm").get<double>();
    r.iterations = j.at("iterations").get<int>();
    r.converged = j.at("converged").get<bool>();
    r.residual_eps = j.at("residual_eps").get<double>();
    r.residual_tau = j.at("residual_tau").get<double>();
    const auto& c = j.at("coords");
    if (!c.is_null()) {
      const std::string kind = c.at("kind").get<std::string>();
      if (kind == "below") {
        r.coords = BelowCoords{r.e, c.at("delta").get<double>(), c.at("a").get<double>(), c.at("mu").get<double>()};
      } else if (kind == "above") {
        r.coords = AboveCoords{r.e, c.at("dtau").get<double>(), c.at("a").get<double>(), c.at("d").get<double>()};
      } else {
        throw DomainError(fmt::format("unknown coords kind '{}'", kind));
      }
    }
    return r;
  } catch (const nlohmann::json::exception& ex) {
    throw DomainError(fmt::format("malformed report JSON: {}", ex.what()));
  }
}

std::string series_to_json(const SeriesPrediction& p, Regime regime, double e, double scale, int k) {
  const auto& o = p.stated_orders;
  return fmt::format(
      "{{\n  \"eps\": {},\n  \"regime\": \"{}\",\n  \"scale\": {},\n  \"k\": {},\n  \"a\": {},\n  \"b\": {},\n"
      "  \"c\": {},\n  \"d\": {},\n  \"mu\": {},\n  \"entropy\": {},\n"
      "  \"stated_orders\": {{\"a\": {}, \"b\": {}, \"c\": {}, \"d\": {}, \"mu\": {}, \"entropy\": {}}}\n}}\n",
      num(e), regime_name(regime), num(scale), k, num(p.a), num(p.b), num(p.c), num(p.d), num(p.mu), num(p.entropy),
      o.a, o.b, o.c, o.d, o.mu, o.entropy);
}

std::string diagnostics_to_json(const Diagnostics& d) {
  return fmt::format(
      "{{\"degree_variance\": {}, \"ideal_value_mass\": {}, \"rank1_residual\": {}, \"pode_fraction\": {}, "
      "\"bipodality_residual\": {}, \"dg_norm2\": {}, \"lambda1\": {}}}",
      num(d.degree_variance), num(d.ideal_value_mass), num(d.rank1_residual), num(d.pode_fraction),
      num(d.bipodality_residual), num(d.dg_norm2), num(d.lambda1));
}

std::string mc_report_to_json(const McReport& r) {
  return fmt::format(
      "{{\n  \"n\": {},\n  \"reps\": {},\n  \"seed\": {},\n  \"prng\": \"{}\",\n  \"edge\": {},\n"
      "  \"triangle\": {}\n}}\n",
      r.n, r.reps, r.seed, r.prng, stats_json(r.edge), stats_json(r.triangle));
}

}  // namespace graphon

#include "graphon/bipodal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include <boost/math/tools/roots.hpp>
#include <fmt/format.h>

#include "graphon/errors.hpp"
#include "graphon/scalar.hpp"

namespace graphon {

void validate(const BipodalGraphon& g) {
  auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!unit(g.a) || !unit(g.b) || !unit(g.d)) {
    throw DomainError(fmt::format("bipodal values (a={}, b={}, d={}) must lie in [0,1]", g.a, g.b, g.d));
  }
  if (!(g.c > 0.0 && g.c < 1.0)) {
    throw DomainError(fmt::format("pode size c={} must lie in (0,1)", g.c));
  }
}

BipodalGraphon canonical(const BipodalGraphon& g) {
  if (g.c <= 0.5) return g;
  return {g.b, g.a, 1.0 - g.c, g.d};
}

void require_odd_cycle(int k) {
  if (k < 3 || k % 2 == 0) {
    throw DomainError(fmt::format("cycle length k={} must be odd and >= 3", k));
  }
}

double edge_density(const BipodalGraphon& g) {
  const double c = g.c;
  const double cc = 1.0 - c;
  return c * c * g.a + 2.0 * c * cc * g.d + cc * cc * g.b;
}

SpectralPair spectrum(const BipodalGraphon& g) {
  // Reduced operator on span{1_C1/sqrt(c), 1_C2/sqrt(1-c)}.
  const double p = g.a * g.c;
  const double q = g.b * (1.0 - g.c);
  const double off = g.d * std::sqrt(g.c * (1.0 - g.c));
  const double mean = 0.5 * (p + q);
  const double radius = std::hypot(0.5 * (p - q), off);
  return {mean + radius, mean - radius};
}

double cycle_density(const BipodalGraphon& g, int k) {
  require_odd_cycle(k);
  const auto [l1, l2] = spectrum(g);
  return std::pow(l1, k) + std::pow(l2, k);
}

double triangle_density_direct(const BipodalGraphon& g) {
  const double c = g.c;
  const double cc = 1.0 - c;
  const double a = g.a;
  const double b = g.b;
  const double d2 = g.d * g.d;
  return c * c * c * a * a * a + 3.0 * c * c * cc * a * d2 + 3.0 * c * cc * cc * b * d2 +
         cc * cc * cc * b * b * b;
}

namespace {

// Cycle excess from the trace deviation trace - e and the scaled determinant
// deviation p = det - e*trace + e^2 (see cycle_excess).
double excess_from_invariants(double trace_dev, double p, double e, int k) {
  // lambda1 = e + eps1 where eps1 is the small root of
  // eps^2 + (e - trace_dev) eps + p = 0; lambda2 = trace_dev - eps1.
  const double lin = e - trace_dev;
  const double disc = std::max(lin * lin - 4.0 * p, 0.0);
  const double eps1 = -2.0 * p / (lin + std::sqrt(disc));
  const double lambda2 = trace_dev - eps1;
  const double top = std::pow(e, k) * std::expm1(k * std::log1p(eps1 / e));
  return top + std::pow(lambda2, k);
}

// On the shell of edge density e the edge deviation vanishes and
// da*db - dd^2 = -mu^2 identically; using both keeps the root function free
// of cancellation.
double excess_on_shell(double c, double da, double db, double mu, double e, int k) {
  return excess_from_invariants(c * da + (1.0 - c) * db, -c * (1.0 - c) * mu * mu, e, k);
}

}  // namespace

double cycle_excess(const BipodalGraphon& g, double e, int k) {
  require_odd_cycle(k);
  const double c = g.c;
  const double cc = 1.0 - c;
  const double da = g.a - e;
  const double db = g.b - e;
  const double dd = g.d - e;
  const double edge_dev = c * c * da + 2.0 * c * cc * dd + cc * cc * db;
  return excess_from_invariants(c * da + cc * db, -e * edge_dev + c * cc * (da * db - dd * dd), e, k);
}

double entropy(const BipodalGraphon& g) {
  const double c = g.c;
  const double cc = 1.0 - c;
  return c * c * entropy_h(g.a) + 2.0 * c * cc * entropy_h(g.d) + cc * cc * entropy_h(g.b);
}

double entropy_deficit(const BipodalGraphon& g, double e) {
  const double c = g.c;
  const double cc = 1.0 - c;
  return c * c * rel_entropy(g.a, e) + 2.0 * c * cc * rel_entropy(g.d, e) +
         cc * cc * rel_entropy(g.b, e);
}

DegreeSplit degree_split(const BipodalGraphon& g) {
  const double c = g.c;
  const double cc = 1.0 - c;
  DegreeSplit out;
  out.d1 = c * g.a + cc * g.d;
  out.d2 = c * g.d + cc * g.b;
  const double e = edge_density(g);
  out.variance = c * (out.d1 - e) * (out.d1 - e) + cc * (out.d2 - e) * (out.d2 - e);
  return out;
}

double imbalance(const BipodalGraphon& g, double e) {
  return g.c * (g.a - e) / (1.0 - g.c) + (g.d - e);
}

namespace {

constexpr double kMinPode = 1e-14;
constexpr double kMaxPode = 0.49;

BipodalGraphon below_at(const BelowCoords& co, double c) {
  const double r = c / (1.0 - c);
  const double x = r * (co.a - co.e);
  const double dd = co.mu - x;
  const double db = r * (x - 2.0 * co.mu);
  return {co.a, co.e + db, c, co.e + dd};
}

BipodalGraphon above_at(const AboveCoords& co, double c) {
  const double r = c / (1.0 - c);
  const double da = co.a - co.e;
  const double dd = co.d - co.e;
  const double db = -r * r * da - 2.0 * r * dd;
  return {co.a, co.e + db, c, co.d};
}

// Root of f on [kMinPode, kMaxPode] nearest to the seed. Scans outward from
// [seed/2, 2 seed] in geometric steps and solves the first bracketing interval
// found on each side.
template <class F>
double solve_pode_size(F&& f, double seed, const char* what) {
  seed = std::clamp(seed, kMinPode, kMaxPode);
  using Interval = std::pair<double, double>;
  std::vector<Interval> candidates;
  double lo = std::max(0.5 * seed, kMinPode);
  double hi = std::min(2.0 * seed, kMaxPode);
  candidates.push_back({lo, seed});
  candidates.push_back({seed, hi});

  auto solve = [&](double x0, double x1, double f0, double f1) {
    std::uintmax_t iters = 200;
    auto tol = boost::math::tools::eps_tolerance<double>(52);
    auto [r0, r1] = boost::math::tools::toms748_solve(f, x0, x1, f0, f1, tol, iters);
    return std::abs(f(r0)) <= std::abs(f(r1)) ? r0 : r1;
  };

  std::vector<double> roots;
  auto try_interval = [&](const Interval& iv) {
    if (!(iv.second > iv.first)) return;
    const double f0 = f(iv.first);
    const double f1 = f(iv.second);
    if (f0 == 0.0) {
      roots.push_back(iv.first);
    } else if (f1 == 0.0) {
      roots.push_back(iv.second);
    } else if ((f0 < 0.0) != (f1 < 0.0)) {
      roots.push_back(solve(iv.first, iv.second, f0, f1));
    }
  };
  for (const auto& iv : candidates) try_interval(iv);

  while (roots.empty() && (lo > kMinPode || hi < kMaxPode)) {
    if (lo > kMinPode) {
      const double next = std::max(0.5 * lo, kMinPode);
      try_interval({next, lo});
      lo = next;
    }
    if (hi < kMaxPode) {
      const double next = std::min(2.0 * hi, kMaxPode);
      try_interval({hi, next});
      hi = next;
    }
  }
  if (roots.empty()) {
    throw NoRootInBracket(fmt::format("{}: no admissible pode size near seed {}", what, seed));
  }
  return *std::min_element(roots.begin(), roots.end(), [&](double x, double y) {
    return std::abs(std::log(x / seed)) < std::abs(std::log(y / seed));
  });
}

void require_in_domain(const BipodalGraphon& g, const char* what) {
  auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!unit(g.a) || !unit(g.b) || !unit(g.d)) {
    throw OutOfDomain(fmt::format("{}: assembled values a={} b={} d={} leave [0,1]", what, g.a, g.b, g.d));
  }
}

}  // namespace

double c_seed_below(const BelowCoords& co, int k) {
  const double e = co.e;
  const double delta = co.delta;
  const double da = co.a - e;
  const double mu = co.mu;
  const double denom = delta - da;
  double num = delta;
  if (k == 3) {
    num += (2.0 * mu * delta * delta - e * mu * mu) / (delta * da);
  } else {
    num += (mu * mu * std::pow(e, k - 2) * std::pow(delta, 2 - k) - 2.0 * mu * delta) / (2.0 * e - 1.0);
  }
  const double seed = num / denom;
  if (!(denom > 0.0) || !(seed > 0.0) || !std::isfinite(seed)) {
    return denom > 0.0 ? delta / denom : delta;
  }
  return seed;
}

double c_seed_above(const AboveCoords& co, int k) {
  const double dd = co.d - co.e;
  if (dd == 0.0) throw OutOfDomain("assemble_above: d equals e, pode size undetermined");
  return co.dtau / (k * std::pow(co.e, k - 2) * dd * dd);
}

BipodalGraphon assemble_below(const BelowCoords& co, int k) {
  require_odd_cycle(k);
  if (!(co.e > 0.0 && co.e < 1.0)) throw DomainError(fmt::format("edge density {} outside (0,1)", co.e));
  if (!(co.delta > 0.0)) throw DomainError(fmt::format("delta={} must be positive", co.delta));
  const double target = -std::pow(co.delta, k);
  auto f = [&](double c) {
    const double r = c / (1.0 - c);
    const double x = r * (co.a - co.e);
    return excess_on_shell(c, co.a - co.e, r * (x - 2.0 * co.mu), co.mu, co.e, k) - target;
  };
  const double c = solve_pode_size(f, c_seed_below(co, k), "assemble_below");
  BipodalGraphon g = below_at(co, c);
  require_in_domain(g, "assemble_below");
  return g;
}

BipodalGraphon assemble_above(const AboveCoords& co, int k) {
  require_odd_cycle(k);
  if (!(co.e > 0.0 && co.e < 1.0)) throw DomainError(fmt::format("edge density {} outside (0,1)", co.e));
  if (!(co.dtau > 0.0)) throw DomainError(fmt::format("dtau={} must be positive", co.dtau));
  const double da = co.a - co.e;
  const double dd = co.d - co.e;
  auto f = [&](double c) {
    const double r = c / (1.0 - c);
    return excess_on_shell(c, da, -r * r * da - 2.0 * r * dd, r * da + dd, co.e, k) - co.dtau;
  };
  const double c = solve_pode_size(f, c_seed_above(co, k), "assemble_above");
  BipodalGraphon g = above_at(co, c);
  require_in_domain(g, "assemble_above");
  return g;
}

std::optional<std::string> region_violation_below(const BipodalGraphon& g, const BelowCoords& co,
                                                  int k, double eta) {
  const double e = co.e;
  const double delta = co.delta;
  if (!(std::abs(g.b - e) < eta * std::sqrt(delta))) {
    return fmt::format("|b-e|={} not below eta*sqrt(delta)={}", std::abs(g.b - e), eta * std::sqrt(delta));
  }
  if (!(g.c < eta)) return fmt::format("c={} not below eta={}", g.c, eta);
  if (!(std::abs(g.d - e) < eta)) return fmt::format("|d-e|={} not below eta={}", std::abs(g.d - e), eta);
  if (!(std::abs(g.a - e) > eta)) return fmt::format("|a-e|={} not above eta={}", std::abs(g.a - e), eta);
  const double mu_bound = eta * std::pow(delta, k == 3 ? 1.5 : 0.5 * k);
  if (!(std::abs(co.mu) <= mu_bound)) {
    return fmt::format("|mu|={} exceeds {}", std::abs(co.mu), mu_bound);
  }
  return std::nullopt;
}

std::optional<std::string> region_violation_above(const BipodalGraphon& g, const AboveCoords& co,
                                                  double eta) {
  const double e = co.e;
  if (!(g.c < eta)) return fmt::format("c={} not below eta={}", g.c, eta);
  if (!(std::abs(g.b - e) < eta)) return fmt::format("|b-e|={} not below eta={}", std::abs(g.b - e), eta);
  const double gap = 1.0 - 2.0 * e;
  const double dd = g.d - e;
  if (!(dd * gap > 0.0 && std::abs(dd) > 0.5 * std::abs(gap))) {
    return fmt::format("d={} left the 1-e side (d-e={}, 1-2e={})", g.d, dd, gap);
  }
  return std::nullopt;
}

}  // namespace graphon

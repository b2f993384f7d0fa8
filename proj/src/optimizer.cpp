#include "graphon/optimizer.hpp"

#include <cmath>
#include <exception>
#include <limits>

#include <fmt/format.h>

#include "graphon/errors.hpp"
#include "graphon/log.hpp"
#include "graphon/scalar.hpp"

namespace graphon {

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::below:
      return "below";
    case Regime::above:
      return "above";
    case Regime::boundary:
      return "boundary";
  }
  return "unknown";
}

namespace {

using Vec2 = std::array<double, 2>;

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kNoiseFactor = 4.0;

// Reduced problem below the curve: free coordinates (a, mu).
struct BelowProblem {
  BelowCoords base;
  int k;

  BelowCoords coords(const Vec2& x) const {
    BelowCoords co = base;
    co.a = x[0];
    co.mu = x[1];
    return co;
  }
  Vec2 start() const { return {base.a, base.mu}; }
  BipodalGraphon assemble(const Vec2& x) const { return assemble_below(coords(x), k); }
  double e() const { return base.e; }
  // The entropy is quadratic in mu only for |mu| well below delta^(k/2).
  Vec2 fd_scale(const Vec2& x) const {
    return {std::max(std::abs(x[0]), base.delta),
            std::max(std::abs(x[1]), std::pow(base.delta, 0.5 * (k - 1)))};
  }
  Vec2 step_scale(const Vec2& x) const {
    return {std::max(std::abs(x[0]), base.delta),
            std::max(std::abs(x[1]), std::pow(base.delta, k - 1))};
  }
  std::optional<std::string> violation(const BipodalGraphon& g, const Vec2& x, double eta) const {
    return region_violation_below(g, coords(x), k, eta);
  }
};

// Reduced problem above the curve: free coordinates (a, d).
struct AboveProblem {
  AboveCoords base;
  int k;

  AboveCoords coords(const Vec2& x) const {
    AboveCoords co = base;
    co.a = x[0];
    co.d = x[1];
    return co;
  }
  Vec2 start() const { return {base.a, base.d}; }
  BipodalGraphon assemble(const Vec2& x) const { return assemble_above(coords(x), k); }
  double e() const { return base.e; }
  Vec2 fd_scale(const Vec2& x) const {
    return {std::max(std::abs(x[0]), base.dtau), std::max(std::abs(x[1]), base.dtau)};
  }
  Vec2 step_scale(const Vec2& x) const { return fd_scale(x); }
  std::optional<std::string> violation(const BipodalGraphon& g, const Vec2& x, double eta) const {
    return region_violation_above(g, coords(x), eta);
  }
};

template <class Problem>
double deficit_at(const Problem& p, const Vec2& x) {
  return entropy_deficit(p.assemble(x), p.e());
}

struct Eval {
  BipodalGraphon graphon;
  double deficit = 0.0;
  Vec2 grad{};  // gradient of the entropy, i.e. minus the deficit gradient
};

template <class Problem>
Eval evaluate(const Problem& p, const Vec2& x, double fd_step_rel) {
  Eval out;
  out.graphon = p.assemble(x);
  out.deficit = entropy_deficit(out.graphon, p.e());
  const Vec2 scale = p.fd_scale(x);
  for (int i = 0; i < 2; ++i) {
    const double h = fd_step_rel * scale[i];
    Vec2 plus = x;
    Vec2 minus = x;
    plus[i] += h;
    minus[i] -= h;
    out.grad[i] = -(deficit_at(p, plus) - deficit_at(p, minus)) / (2.0 * h);
  }
  return out;
}

template <class Problem>
ModelHessian hessian_fd(const Problem& p, const Vec2& x, double rel_step) {
  const Vec2 scale = p.fd_scale(x);
  const Vec2 h = {rel_step * scale[0], rel_step * scale[1]};
  auto f = [&](double s0, double s1) { return -deficit_at(p, {x[0] + s0 * h[0], x[1] + s1 * h[1]}); };
  const double f00 = f(0, 0);
  ModelHessian out;
  out.h_aa = (f(1, 0) - 2.0 * f00 + f(-1, 0)) / (h[0] * h[0]);
  out.h_mm = (f(0, 1) - 2.0 * f00 + f(0, -1)) / (h[1] * h[1]);
  out.h_am = (f(1, 1) - f(1, -1) - f(-1, 1) + f(-1, -1)) / (4.0 * h[0] * h[1]);
  return out;
}

bool negative_definite(const ModelHessian& m) {
  return m.h_aa < 0.0 && m.h_aa * m.h_mm - m.h_am * m.h_am > 0.0;
}

// The model matrix is leading order in the pode size; when it loses
// definiteness the finite-difference Hessian at the start point replaces it.
template <class Problem>
ModelHessian fixed_matrix(const Problem& p, Regime regime, double e, double scale, int k) {
  try {
    return model_hessian(regime, e, scale, k);
  } catch (const NotNegativeDefinite&) {
    const ModelHessian fd = hessian_fd(p, p.start(), 1e-3);
    if (!negative_definite(fd)) throw;
    spdlog::debug("model Hessian indefinite; using finite differences at the start point");
    return fd;
  }
}

Vec2 model_solve(const ModelHessian& m, const Vec2& g) {
  const double det = m.h_aa * m.h_mm - m.h_am * m.h_am;
  return {(m.h_mm * g[0] - m.h_am * g[1]) / det, (m.h_aa * g[1] - m.h_am * g[0]) / det};
}

struct IterationResult {
  Vec2 x{};
  Eval eval;
  int iterations = 0;
  double grad_norm = 0.0;
};

// Damped fixed-matrix iteration x <- x - damping * M0^{-1} grad S. The damping
// halves whenever a step lowers the entropy or overshoots the maximum.
template <class Problem>
IterationResult iterate(const Problem& p, ModelHessian m0, const SolveOptions& opts) {
  Vec2 x = p.start();
  {
    const BipodalGraphon g0 = p.assemble(x);
    if (auto why = p.violation(g0, x, opts.eta_region)) {
      throw RegionViolation(fmt::format("starting point outside validity region: {}", *why));
    }
  }
  Eval current = evaluate(p, x, opts.fd_step_rel);
  double damping = opts.damping;
  int halvings = 0;
  bool refreshed = false;
  for (int it = 0; it < opts.max_iter; ++it) {
    const Vec2 step = model_solve(m0, current.grad);
    const Vec2 scale = p.step_scale(x);
    const double grad_norm = std::hypot(current.grad[0] * scale[0], current.grad[1] * scale[1]);
    spdlog::debug("iter {} x=({:.17g}, {:.17g}) grad=({:.3e}, {:.3e}) damping={}", it, x[0], x[1],
                  current.grad[0], current.grad[1], damping);
    // A coordinate is settled when its step is small or its finite-difference
    // gradient is indistinguishable from the rounding error of the deficit.
    const Vec2 fd = p.fd_scale(x);
    bool settled = grad_norm <= opts.tol_grad;
    for (int i = 0; i < 2; ++i) {
      const double noise = kNoiseFactor * kEps * std::abs(current.deficit) / (opts.fd_step_rel * fd[i]);
      const bool small = std::abs(current.grad[i]) <= opts.tol_grad && std::abs(step[i]) <= opts.tol_step * scale[i];
      settled = settled && (small || std::abs(current.grad[i]) <= noise);
    }
    // A collapsed line search means no trial step resolves an entropy change.
    const bool stalled = damping < 1e-9 * opts.damping && grad_norm <= opts.tol_grad;
    if (settled || stalled) return {x, current, it, grad_norm};
    const Vec2 trial = {x[0] - damping * step[0], x[1] - damping * step[1]};
    std::optional<Eval> probe;
    try {
      const BipodalGraphon g = p.assemble(trial);
      if (auto why = p.violation(g, trial, opts.eta_region)) {
        throw RegionViolation(fmt::format("iterate {} left the validity region: {}", it + 1, *why));
      }
      probe = evaluate(p, trial, opts.fd_step_rel);
    } catch (const OutOfDomain&) {
    } catch (const NoRootInBracket&) {
    }
    if (!probe) {
      damping *= 0.5;
      if (++halvings > 60) break;
      continue;
    }
    Eval next = *probe;
    const double slack = 1e-12 * std::abs(current.deficit);
    if (next.deficit > current.deficit + slack) {
      damping *= 0.5;
      if (++halvings > 60) break;
      continue;
    }
    // Overshoot along the step direction: the fixed matrix underestimates
    // the curvature there.
    const double slope_before = -(current.grad[0] * step[0] + current.grad[1] * step[1]);
    const double slope_after = -(next.grad[0] * step[0] + next.grad[1] * step[1]);
    if (slope_after < -0.5 * slope_before) damping *= 0.5;
    x = trial;
    current = next;
    // A poor fixed matrix shows up as persistent damping; replace it once by
    // the finite-difference Hessian at the current iterate.
    if (!refreshed && damping <= 0.125 * opts.damping) {
      refreshed = true;
      const ModelHessian fd = hessian_fd(p, x, 1e-3);
      if (negative_definite(fd)) {
        spdlog::debug("iter {}: fixed matrix replaced by finite differences", it);
        m0 = fd;
        damping = opts.damping;
      }
    }
  }
  throw MaxIterExceeded(fmt::format("no convergence within {} iterations (grad {:.3e}, {:.3e})",
                                    opts.max_iter, current.grad[0], current.grad[1]));
}

SolverReport make_report(const BipodalGraphon& g, Coords coords, Regime regime, int k, double e,
                         double tau) {
  SolverReport r;
  r.graphon = g;
  r.coords = coords;
  r.regime = regime;
  r.k = k;
  r.e = e;
  r.tau = tau;
  r.mu = imbalance(g, e);
  r.entropy = entropy(g);
  r.residual_eps = std::abs(edge_density(g) - e);
  r.residual_tau = std::abs(cycle_density(g, k) - tau);
  return r;
}

void check_solve_options(const SolveOptions& opts) {
  if (!(opts.tol_grad > 0.0)) throw DomainError("tol_grad must be positive");
  if (!(opts.tol_step > 0.0)) throw DomainError("tol_step must be positive");
  if (opts.max_iter < 1) throw DomainError("max_iter must be at least 1");
  if (!(opts.damping > 0.0 && opts.damping <= 1.0)) throw DomainError("damping must lie in (0,1]");
  if (!(opts.fd_step_rel > 0.0)) throw DomainError("fd_step_rel must be positive");
  if (!(opts.eta_region > 0.0)) throw DomainError("eta_region must be positive");
}

}  // namespace

BelowCoords initialize_below(double e, double delta, int k) {
  require_odd_cycle(k);
  if (!(e > 0.5 && e < 1.0)) {
    throw DomainError(fmt::format("below the curve requires 1/2 < e < 1, got e={}", e));
  }
  if (!(delta > 0.0)) throw DomainError(fmt::format("delta={} must be positive", delta));
  const double nu = imbalance_coefficient(e);
  const double h1 = entropy_h_deriv(e, 1);
  BelowCoords co;
  co.e = e;
  co.delta = delta;
  co.a = 1.0 - e - delta;
  co.mu = nu * std::pow(delta, k - 1) / (std::pow(e, k - 2) * h1);
  return co;
}

AboveCoords initialize_above(double e, double dtau, int k) {
  require_odd_cycle(k);
  if (!(e > 0.0 && e < 1.0) || e == 0.5) {
    throw DomainError(fmt::format("above the curve requires e in (0,1) with e != 1/2, got e={}", e));
  }
  if (!(dtau > 0.0)) throw DomainError(fmt::format("dtau={} must be positive", dtau));
  AboveCoords co;
  co.e = e;
  co.dtau = dtau;
  co.a = solve_a0(e);
  co.d = 1.0 - e;
  return co;
}

ReducedEval reduced_entropy_and_grad(const BelowCoords& co, int k, const SolveOptions& opts) {
  const BelowProblem p{co, k};
  const Eval ev = evaluate(p, p.start(), opts.fd_step_rel);
  return {ev.graphon, entropy_h(co.e) - ev.deficit, ev.grad};
}

ReducedEval reduced_entropy_and_grad(const AboveCoords& co, int k, const SolveOptions& opts) {
  const AboveProblem p{co, k};
  const Eval ev = evaluate(p, p.start(), opts.fd_step_rel);
  return {ev.graphon, entropy_h(co.e) - ev.deficit, ev.grad};
}

ModelHessian reduced_hessian_fd(const BelowCoords& co, int k, double rel_step) {
  return hessian_fd(BelowProblem{co, k}, {co.a, co.mu}, rel_step);
}

ModelHessian reduced_hessian_fd(const AboveCoords& co, int k, double rel_step) {
  return hessian_fd(AboveProblem{co, k}, {co.a, co.d}, rel_step);
}

ModelHessian model_hessian(Regime regime, double e, double scale, int k) {
  require_odd_cycle(k);
  if (!(scale > 0.0)) throw DomainError("model_hessian: scale must be positive");
  const double h1 = entropy_h_deriv(e, 1);
  const double h2 = entropy_h_deriv(e, 2);
  ModelHessian m;
  if (regime == Regime::below) {
    const double w = 2.0 * e - 1.0;
    const double delta = scale;
    m.h_aa = delta * delta / (w * w) * (h2 - 2.0 * h1 / w);
    m.h_am = 0.0;
    // mu^2 coefficient of the entropy expansion, differentiated twice.
    m.h_mm = 4.0 * std::pow(e, k - 2) * h1 * std::pow(delta, 3 - k) / (w * w);
  } else if (regime == Regime::above) {
    const double gap = 1.0 - 2.0 * e;
    const double c = scale / (k * std::pow(e, k - 2) * gap * gap);
    m.h_aa = c * c * entropy_h_deriv(solve_a0(e), 2);
    m.h_am = 4.0 * c * c * (1.0 - e) * h1 / (e * gap);
    m.h_mm = 2.0 * c * (h2 + 2.0 * h1 / gap);
  } else {
    throw DomainError("model_hessian: no reduced problem on the boundary");
  }
  const double det = m.h_aa * m.h_mm - m.h_am * m.h_am;
  if (!(m.h_aa < 0.0 && det > 0.0)) {
    throw NotNegativeDefinite(fmt::format("model Hessian [{}, {}; {}, {}] is not negative definite",
                                          m.h_aa, m.h_am, m.h_am, m.h_mm));
  }
  return m;
}

SolverReport solve_below(double e, double delta, int k, const SolveOptions& opts,
                         std::optional<BelowCoords> start) {
  check_solve_options(opts);
  BelowCoords init = initialize_below(e, delta, k);
  if (start) {
    init.a = start->a;
    init.mu = start->mu;
  }
  const BelowProblem p{init, k};
  const ModelHessian m0 = fixed_matrix(p, Regime::below, e, delta, k);
  const IterationResult res = iterate(p, m0, opts);
  const double tau = std::pow(e, k) - std::pow(delta, k);
  SolverReport r = make_report(res.eval.graphon, p.coords(res.x), Regime::below, k, e, tau);
  r.grad_norm = res.grad_norm;
  r.iterations = res.iterations;
  r.converged = true;
  return r;
}

SolverReport solve_above(double e, double dtau, int k, const SolveOptions& opts,
                         std::optional<AboveCoords> start) {
  check_solve_options(opts);
  AboveCoords init = initialize_above(e, dtau, k);
  if (start) {
    init.a = start->a;
    init.d = start->d;
  }
  const AboveProblem p{init, k};
  const ModelHessian m0 = fixed_matrix(p, Regime::above, e, dtau, k);
  const IterationResult res = iterate(p, m0, opts);
  const double tau = std::pow(e, k) + dtau;
  SolverReport r = make_report(res.eval.graphon, p.coords(res.x), Regime::above, k, e, tau);
  r.grad_norm = res.grad_norm;
  r.iterations = res.iterations;
  r.converged = true;
  return r;
}

SolverReport solve(double e, double t_target, int k, const SolveOptions& opts) {
  require_odd_cycle(k);
  if (!(e > 0.0 && e < 1.0)) throw DomainError(fmt::format("edge density {} outside (0,1)", e));
  const double ek = std::pow(e, k);
  const double gap = t_target - ek;
  if (std::abs(gap) < 1e-14) {
    SolverReport r = make_report(BipodalGraphon::constant(e), std::monostate{}, Regime::boundary, k, e, t_target);
    r.converged = true;
    return r;
  }
  if (gap < 0.0) {
    SolverReport r = solve_below(e, std::pow(-gap, 1.0 / k), k, opts);
    r.tau = t_target;
    r.residual_tau = std::abs(cycle_density(r.graphon, k) - t_target);
    return r;
  }
  SolverReport r = solve_above(e, gap, k, opts);
  r.tau = t_target;
  r.residual_tau = std::abs(cycle_density(r.graphon, k) - t_target);
  return r;
}

double scale_limit(Regime regime, double e, int k, double eta) {
  require_odd_cycle(k);
  if (regime == Regime::below) {
    if (!(e > 0.5 && e < 1.0)) throw DomainError(fmt::format("below the curve requires 1/2 < e < 1, got e={}", e));
    const double w = 2.0 * e - 1.0;
    // c ~ delta / (2e-1) < eta
    double limit = eta * w;
    // |mu| ~ |nu| delta^(k-1) / (e^(k-2) |H'|) against eta delta^(3/2) or eta delta^(k/2)
    const double ratio = std::abs(imbalance_coefficient(e)) / (std::pow(e, k - 2) * std::abs(entropy_h_deriv(e, 1)));
    const double power = k == 3 ? 0.5 : 0.5 * k - 1.0;
    limit = std::min(limit, std::pow(eta / ratio, 1.0 / power));
    return 0.5 * limit;
  }
  if (regime == Regime::above) {
    if (!(e > 0.0 && e < 1.0) || e == 0.5) throw DomainError(fmt::format("bad edge density {} above the curve", e));
    const double w = 2.0 * e - 1.0;
    // c ~ dtau / (k e^(k-2) (2e-1)^2) < eta; the O(dtau) shifts of a and d
    // must also stay small against a0 and 1-e as e approaches 1.
    return 0.5 * eta * k * std::pow(e, k - 2) * w * w * std::min(1.0, 4.0 * (1.0 - e));
  }
  throw DomainError("scale_limit: no scale on the boundary");
}

std::vector<SweepPoint> sweep(double e, const std::vector<double>& t_values, int k,
                              const SolveOptions& opts, int jobs) {
  std::vector<SweepPoint> out(t_values.size());
  const long n = static_cast<long>(t_values.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs > 0 ? jobs : 1)
  for (long i = 0; i < n; ++i) {
    SweepPoint& pt = out[i];
    pt.tau = t_values[i];
    try {
      pt.report = solve(e, t_values[i], k, opts);
    } catch (const std::exception& ex) {
      pt.error = ex.what();
    }
  }
  return out;
}

}  // namespace graphon

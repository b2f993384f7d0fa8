#include "graphon/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "graphon/errors.hpp"
#include "graphon/kernels.hpp"
#include "graphon/log.hpp"
#include "graphon/rng.hpp"
#include "graphon/scalar.hpp"

namespace graphon {

namespace kn = kernels::omp;

namespace {

constexpr double kClamp = 1e-9;

std::size_t cells(int n) { return static_cast<std::size_t>(n) * static_cast<std::size_t>(n); }

// W^(k-1) into `power`, using `scratch` as a second buffer.
void power_km1(const GridGraphon& W, int k, std::vector<double>& power, std::vector<double>& scratch) {
  const int n = W.n;
  power = W.w;
  scratch.resize(cells(n));
  for (int p = 2; p < k; ++p) {
    kn::matmul(power.data(), W.w.data(), scratch.data(), n);
    power.swap(scratch);
  }
}

}  // namespace

GridGraphon GridGraphon::constant(int n, double p) {
  if (n < 2) throw DomainError(fmt::format("grid size {} must be at least 2", n));
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError(fmt::format("grid value {} outside [0,1]", p));
  GridGraphon W;
  W.n = n;
  W.w.assign(cells(n), p);
  return W;
}

void validate(const GridGraphon& W) {
  if (W.n < 2) throw DomainError(fmt::format("grid size {} must be at least 2", W.n));
  if (W.w.size() != cells(W.n)) throw DomainError("grid storage does not match n*n");
  for (int i = 0; i < W.n; ++i) {
    for (int j = 0; j < W.n; ++j) {
      const double v = W(i, j);
      if (!(v >= 0.0 && v <= 1.0)) throw DomainError(fmt::format("grid entry ({},{})={} outside [0,1]", i, j, v));
      if (v != W(j, i)) throw DomainError(fmt::format("grid not symmetric at ({},{})", i, j));
    }
  }
}

GridDensities grid_densities(const GridGraphon& W, int k) {
  require_odd_cycle(k);
  const int n = W.n;
  const double nd = n;
  std::vector<double> power;
  std::vector<double> scratch;
  power_km1(W, k, power, scratch);
  GridDensities out;
  out.eps = kn::sum(W.w.data(), n) / (nd * nd);
  out.tau = kn::dot(power.data(), W.w.data(), n) / std::pow(nd, k);
  return out;
}

double grid_entropy(const GridGraphon& W) {
  const double nd = W.n;
  return kn::entropy_sum(W.w.data(), W.n) / (nd * nd);
}

GridGraphon from_bipodal(const BipodalGraphon& g, int n) {
  validate(g);
  if (n < 4) throw DomainError(fmt::format("from_bipodal needs n >= 4, got {}", n));
  const int rows = static_cast<int>(std::lround(g.c * n));
  if (rows == 0) throw DegeneratePode(fmt::format("pode size c={} rounds to zero rows at n={}", g.c, n));
  GridGraphon W;
  W.n = n;
  W.w.resize(cells(n));
  W.pode_rows = rows;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const bool pi = i < rows;
      const bool pj = j < rows;
      W(i, j) = pi && pj ? g.a : (!pi && !pj ? g.b : g.d);
    }
  }
  return W;
}

GridGraphon random_grid(int n, double e, double amplitude, std::uint64_t seed, int podes) {
  if (podes < 1) throw DomainError(fmt::format("random_grid needs at least one pode, got {}", podes));
  GridGraphon W = GridGraphon::constant(n, std::clamp(e, 0.0, 1.0));
  const CounterRng rng(seed, 0x67726964ULL);
  std::uint64_t counter = 0;
  // Random pode labels and block values, then iid jitter on every pair.
  std::vector<int> label(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) label[i] = static_cast<int>(rng.uniform(counter++) * podes);
  std::vector<double> block(static_cast<std::size_t>(podes * podes));
  for (int p = 0; p < podes; ++p) {
    for (int q = p; q < podes; ++q) {
      const double v = e + amplitude * (2.0 * rng.uniform(counter++) - 1.0);
      block[p * podes + q] = v;
      block[q * podes + p] = v;
    }
  }
  const double jitter = podes > 1 ? 0.1 * amplitude : amplitude;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double base = block[label[i] * podes + label[j]];
      const double v = std::clamp(base + jitter * (2.0 * rng.uniform(counter++) - 1.0), 0.0, 1.0);
      W(i, j) = v;
      W(j, i) = v;
    }
  }
  return W;
}

namespace {

// Augmented Lagrangian  S - l.c - rho/2 |c|^2  for c = (eps - e, tau - t).
struct Merit {
  double e, t;
  int k;
  double lambda_eps = 0.0;
  double lambda_tau = 0.0;
  double rho = 0.0;

  struct Eval {
    double merit = 0.0;
    double entropy = 0.0;
    double c_eps = 0.0;
    double c_tau = 0.0;
  };

  Eval evaluate(const GridGraphon& W, std::vector<double>& power, std::vector<double>& scratch) const {
    const int n = W.n;
    const double nd = n;
    power_km1(W, k, power, scratch);
    Eval out;
    out.entropy = kn::entropy_sum(W.w.data(), n) / (nd * nd);
    out.c_eps = kn::sum(W.w.data(), n) / (nd * nd) - e;
    out.c_tau = kn::dot(power.data(), W.w.data(), n) / std::pow(nd, k) - t;
    out.merit = out.entropy - lambda_eps * out.c_eps - lambda_tau * out.c_tau -
                0.5 * rho * (out.c_eps * out.c_eps + out.c_tau * out.c_tau);
    return out;
  }

  // n^2 times the partial derivatives, symmetrized.
  void gradient(const GridGraphon& W, const Eval& ev, const std::vector<double>& power,
                std::vector<double>& grad) const {
    const int n = W.n;
    const double scale_tau = k / std::pow(static_cast<double>(n), k - 2);
    const double m_eps = lambda_eps + rho * ev.c_eps;
    const double m_tau = (lambda_tau + rho * ev.c_tau) * scale_tau;
    grad.resize(cells(n));
    const long nn = n;
#pragma omp parallel for schedule(static)
    for (long i = 0; i < nn; ++i) {
      for (long j = 0; j < nn; ++j) {
        const double p = 0.5 * (power[i * nn + j] + power[j * nn + i]);
        grad[i * nn + j] = entropy_h_deriv(W.w[i * nn + j], 1) - m_eps - m_tau * p;
      }
    }
  }
};

void projected_step(const GridGraphon& W, const std::vector<double>& dir, double step, GridGraphon& out) {
  out.n = W.n;
  out.pode_rows = W.pode_rows;
  out.w.resize(W.w.size());
  const long total = static_cast<long>(W.w.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < total; ++i) out.w[i] = std::clamp(W.w[i] + step * dir[i], kClamp, 1.0 - kClamp);
}

double mean_dot(const std::vector<double>& a, const std::vector<double>& b, int n) {
  const double nd = n;
  return kn::dot(a.data(), b.data(), n) / (nd * nd);
}

// Ascent direction scaled by the inverse entropy curvature w(1-w).
void scaled_direction(const GridGraphon& W, const std::vector<double>& grad, std::vector<double>& dir) {
  dir.resize(grad.size());
  for (std::size_t i = 0; i < grad.size(); ++i) dir[i] = W.w[i] * (1.0 - W.w[i]) * grad[i];
}

// Weighted least-squares multipliers for grad S = l_eps grad eps + l_tau grad tau.
void estimate_multipliers(const GridGraphon& W, Merit& merit, const std::vector<double>& power) {
  const int n = W.n;
  const double scale_tau = merit.k / std::pow(static_cast<double>(n), merit.k - 2);
  double m11 = 0.0, m12 = 0.0, m22 = 0.0, r1 = 0.0, r2 = 0.0;
  for (std::size_t i = 0; i < W.w.size(); ++i) {
    const double wt = W.w[i] * (1.0 - W.w[i]);
    const double j2 = scale_tau * power[i];
    const double gs = entropy_h_deriv(W.w[i], 1);
    m11 += wt;
    m12 += wt * j2;
    m22 += wt * j2 * j2;
    r1 += wt * gs;
    r2 += wt * j2 * gs;
  }
  const double det = m11 * m22 - m12 * m12;
  if (!(std::abs(det) > 1e-12 * m11 * m22)) return;
  merit.lambda_eps = (m22 * r1 - m12 * r2) / det;
  merit.lambda_tau = (m11 * r2 - m12 * r1) / det;
}

}  // namespace

OracleResult maximize_entropy(const GridGraphon& init, double e, double t, int k, const OracleOptions& opts) {
  validate(init);
  require_odd_cycle(k);
  if (!(opts.step > 0.0)) throw DomainError("oracle step must be positive");
  if (!(opts.penalty_growth > 1.0)) throw DomainError("penalty_growth must exceed 1");
  if (!(opts.penalty > 0.0)) throw DomainError("penalty must be positive");
  if (!(e > 0.0 && e < 1.0)) throw DomainError(fmt::format("edge density {} outside (0,1)", e));
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError(fmt::format("cycle density {} outside [0,1]", t));

  const int n = init.n;
  GridGraphon W = init;
  for (double& v : W.w) v = std::clamp(v, kClamp, 1.0 - kClamp);

  Merit merit{e, t, k};
  merit.rho = opts.penalty;
  std::vector<double> power;
  std::vector<double> scratch;
  std::vector<double> grad;
  std::vector<double> grad_next;
  std::vector<double> dir;
  std::vector<double> sdiff(cells(n));
  std::vector<double> ydiff(cells(n));
  GridGraphon trial;
  GridGraphon probe;

  merit.evaluate(W, power, scratch);
  estimate_multipliers(W, merit, power);

  OracleResult result;
  double prev_residual = INFINITY;
  for (int outer = 0; outer < opts.outer_iters; ++outer) {
    double step = opts.step;
    Merit::Eval ev = merit.evaluate(W, power, scratch);
    merit.gradient(W, ev, power, grad);
    std::vector<double> trace;
    if (opts.record_merit) trace.push_back(ev.merit);
    for (int inner = 0; inner < opts.inner_iters; ++inner) {
      scaled_direction(W, grad, dir);
      // Stationarity: the unit projected step is negligible.
      projected_step(W, dir, 1.0, probe);
      double moved = 0.0;
      for (std::size_t i = 0; i < probe.w.size(); ++i) moved += (probe.w[i] - W.w[i]) * (probe.w[i] - W.w[i]);
      if (std::sqrt(moved / static_cast<double>(probe.w.size())) <= opts.inner_tol) break;

      ++result.inner_iterations;
      bool accepted = false;
      Merit::Eval next;
      while (step > 1e-16) {
        projected_step(W, dir, step, trial);
        for (std::size_t i = 0; i < sdiff.size(); ++i) sdiff[i] = trial.w[i] - W.w[i];
        next = merit.evaluate(trial, power, scratch);
        const double predicted = mean_dot(grad, sdiff, n);
        if (next.merit >= ev.merit + 1e-4 * predicted) {
          accepted = true;
          break;
        }
        step *= 0.5;
      }
      if (!accepted) break;
      merit.gradient(trial, next, power, grad_next);
      // Barzilai-Borwein length in the metric of the scaling.
      double ss = 0.0;
      double sy = 0.0;
      for (std::size_t i = 0; i < sdiff.size(); ++i) {
        ss += sdiff[i] * sdiff[i] / (W.w[i] * (1.0 - W.w[i]));
        sy += sdiff[i] * (grad_next[i] - grad[i]);
      }
      step = sy < 0.0 ? std::clamp(ss / -sy, 1e-8, 1e8) : std::min(2.0 * step, 1e8);
      W.w.swap(trial.w);
      grad.swap(grad_next);
      ev = next;
      if (opts.record_merit) trace.push_back(ev.merit);
    }
    if (opts.record_merit) result.merit_trace.push_back(std::move(trace));
    result.outer_iterations = outer + 1;
    const double residual = std::max(std::abs(ev.c_eps), std::abs(ev.c_tau));
    spdlog::debug("oracle outer {} entropy {:.12f} residual {:.3e} rho {:.3e} inner {}", outer, ev.entropy,
                  residual, merit.rho, result.inner_iterations);
    if (residual <= opts.tol_constraint) {
      result.grid = W;
      result.entropy = ev.entropy;
      result.eps = ev.c_eps + e;
      result.tau = ev.c_tau + t;
      result.residual = residual;
      return result;
    }
    merit.lambda_eps += merit.rho * ev.c_eps;
    merit.lambda_tau += merit.rho * ev.c_tau;
    if (residual > 0.25 * prev_residual) merit.rho *= opts.penalty_growth;
    prev_residual = residual;
  }
  throw ConstraintInfeasible(fmt::format("constraints not met after {} outer iterations (residual {:.3e})",
                                         opts.outer_iters, prev_residual));
}

namespace {

// Dominant eigenpair of the symmetric operator with kernel D (matrix / n).
// Iterates on D^2 so that a +-lambda pair cannot stall it; lambda1^2 is
// exact either way, the sign comes from the Rayleigh quotient.
void dominant_eigen(const std::vector<double>& D, int n, double& lambda, std::vector<double>& v) {
  const double nd = n;
  v.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[i] = 1.0 + static_cast<double>(i) / nd;
  auto normalize = [&](std::vector<double>& x) {
    double s = 0.0;
    for (double xi : x) s += xi * xi;
    s = std::sqrt(s);
    if (s > 0.0) {
      for (double& xi : x) xi /= s;
    }
    return s;
  };
  normalize(v);
  std::vector<double> u(v.size());
  std::vector<double> w(v.size());
  double sq = 0.0;
  for (int it = 0; it < 20000; ++it) {
    kn::matvec(D.data(), v.data(), u.data(), n);
    kn::matvec(D.data(), u.data(), w.data(), n);
    const double next = normalize(w) / (nd * nd);
    v.swap(w);
    const bool done = std::abs(next - sq) <= 1e-10 * next;
    sq = next;
    if (sq == 0.0 || done) break;
  }
  kn::matvec(D.data(), v.data(), u.data(), n);
  double rq = 0.0;
  for (int i = 0; i < n; ++i) rq += v[i] * u[i];
  lambda = std::copysign(std::sqrt(sq), rq);
}

}  // namespace

Diagnostics diagnostics(const GridGraphon& W, double e) {
  validate(W);
  if (!(e > 0.0 && e < 1.0)) throw DomainError(fmt::format("edge density {} outside (0,1)", e));
  const int n = W.n;
  const double nd = n;
  Diagnostics out;

  std::vector<double> D(W.w.size());
  for (std::size_t i = 0; i < D.size(); ++i) D[i] = W.w[i] - e;

  double deg_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    double di = 0.0;
    for (int j = 0; j < n; ++j) di += D[static_cast<std::size_t>(i) * n + j];
    di /= nd;
    deg_sum += di * di;
  }
  out.degree_variance = deg_sum / nd;

  double ideal = 0.0;
  for (double x : D) ideal += mass_distance(x, 1.0 - 2.0 * e);
  out.ideal_value_mass = ideal / (nd * nd);

  out.dg_norm2 = kn::dot(D.data(), D.data(), n) / (nd * nd);
  out.pode.assign(static_cast<std::size_t>(n), 0);
  if (out.dg_norm2 == 0.0) return out;

  std::vector<double> v;
  dominant_eigen(D, n, out.lambda1, v);
  out.rank1_residual = std::max(out.dg_norm2 - out.lambda1 * out.lambda1, 0.0);

  // Two-cluster split of the eigenvector entries at the best 1-D threshold.
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) { return v[x] < v[y]; });
  double best = INFINITY;
  int cut = 0;
  double left_sum = 0.0;
  double left_sq = 0.0;
  double total_sum = 0.0;
  double total_sq = 0.0;
  for (double x : v) {
    total_sum += x;
    total_sq += x * x;
  }
  for (int m = 1; m < n; ++m) {
    const double x = v[order[m - 1]];
    left_sum += x;
    left_sq += x * x;
    const double right_sum = total_sum - left_sum;
    const double right_sq = total_sq - left_sq;
    const double cost = (left_sq - left_sum * left_sum / m) + (right_sq - right_sum * right_sum / (n - m));
    if (cost < best) {
      best = cost;
      cut = m;
    }
  }
  std::vector<int>& pode = out.pode;
  const bool low_small = cut <= n - cut;
  for (int m = 0; m < n; ++m) pode[order[m]] = (m < cut) == low_small ? 1 : 0;

  auto small_count = [&] { return std::count(pode.begin(), pode.end(), 1); };
  // Rows are then reassigned: below the independent-edge curve by comparing
  // a row's values on the small pode with 1-e and e, otherwise to the pode
  // whose mean profile is nearer.
  const GridDensities dens = grid_densities(W, 3);
  const bool below = e > 0.5 && dens.tau < e * e * e;
  for (int pass = 0; pass < 20; ++pass) {
    const long members = small_count();
    if (members == 0 || members == n) break;
    std::vector<double> mean1(static_cast<std::size_t>(n), 0.0);
    std::vector<double> mean2(static_cast<std::size_t>(n), 0.0);
    if (!below) {
      for (int i = 0; i < n; ++i) {
        auto& target = pode[i] ? mean1 : mean2;
        for (int j = 0; j < n; ++j) target[j] += W(i, j);
      }
      for (int j = 0; j < n; ++j) {
        mean1[j] /= static_cast<double>(members);
        mean2[j] /= static_cast<double>(n - members);
      }
    }
    std::vector<int> next(pode.size());
    for (int i = 0; i < n; ++i) {
      double to1 = 0.0;
      double to2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double x = W(i, j);
        if (below) {
          if (!pode[j]) continue;
          to1 += (x - (1.0 - e)) * (x - (1.0 - e));
          to2 += (x - e) * (x - e);
        } else {
          to1 += (x - mean1[j]) * (x - mean1[j]);
          to2 += (x - mean2[j]) * (x - mean2[j]);
        }
      }
      next[i] = to1 <= to2 ? 1 : 0;
    }
    if (next == pode) break;
    pode.swap(next);
  }
  if (2 * small_count() > n) {
    for (int& p : pode) p = 1 - p;
  }
  const long members = small_count();
  out.pode_fraction = static_cast<double>(members) / nd;

  double block_sum[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
  double block_cnt[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      block_sum[pode[i]][pode[j]] += W(i, j);
      block_cnt[pode[i]][pode[j]] += 1.0;
    }
  }
  double resid = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double avg = block_sum[pode[i]][pode[j]] / block_cnt[pode[i]][pode[j]];
      resid += (W(i, j) - avg) * (W(i, j) - avg);
    }
  }
  out.bipodality_residual = std::sqrt(resid / (nd * nd));
  return out;
}

}  // namespace graphon

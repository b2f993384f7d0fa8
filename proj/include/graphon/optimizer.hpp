#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "graphon/bipodal.hpp"

namespace graphon {

enum class Regime { below, above, boundary };

const char* regime_name(Regime r);

struct SolveOptions {
  // Bound on the entropy gradient with each coordinate scaled by its natural
  // magnitude: (|a|, max(|mu|, delta^(k-1))) below, (|a|, |d|) above.
  double tol_grad = 1e-10;
  // Relative bound on the last fixed-matrix step in each coordinate.
  double tol_step = 1e-9;
  int max_iter = 200;
  double fd_step_rel = 1e-5;
  double damping = 1.0;
  double eta_region = 0.1;
};

// 2x2 symmetric model of the reduced Hessian in (a, mu) below the curve or
// (a, d) above it.
struct ModelHessian {
  double h_aa = 0.0;
  double h_am = 0.0;
  double h_mm = 0.0;
};

using Coords = std::variant<std::monostate, BelowCoords, AboveCoords>;

struct SolverReport {
  BipodalGraphon graphon;
  Coords coords;
  Regime regime = Regime::boundary;
  int k = 3;
  double e = 0.0;
  double tau = 0.0;
  double mu = 0.0;
  double entropy = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  double residual_eps = 0.0;
  double residual_tau = 0.0;
};

struct ReducedEval {
  BipodalGraphon graphon;
  double entropy = 0.0;
  std::array<double, 2> grad{};
};

BelowCoords initialize_below(double e, double delta, int k);
AboveCoords initialize_above(double e, double dtau, int k);

// Entropy at the assembled graphon and its central-difference gradient in the
// two free coordinates. Every probe re-solves the pode size exactly.
ReducedEval reduced_entropy_and_grad(const BelowCoords& co, int k, const SolveOptions& opts);
ReducedEval reduced_entropy_and_grad(const AboveCoords& co, int k, const SolveOptions& opts);

// Central-difference Hessian of the reduced entropy; rel_step scales the probe
// like the gradient step.
ModelHessian reduced_hessian_fd(const BelowCoords& co, int k, double rel_step = 1e-3);
ModelHessian reduced_hessian_fd(const AboveCoords& co, int k, double rel_step = 1e-3);

// scale is delta below the curve and dtau above it. Throws NotNegativeDefinite.
ModelHessian model_hessian(Regime regime, double e, double scale, int k);

// Regime from the sign of t_target - e^k.
SolverReport solve(double e, double t_target, int k, const SolveOptions& opts = {});

SolverReport solve_below(double e, double delta, int k, const SolveOptions& opts = {},
                         std::optional<BelowCoords> start = std::nullopt);
SolverReport solve_above(double e, double dtau, int k, const SolveOptions& opts = {},
                         std::optional<AboveCoords> start = std::nullopt);

// Half the largest delta (below) or dtau (above) at which the leading-order
// optimum still sits inside the validity region of size eta.
double scale_limit(Regime regime, double e, int k, double eta);

struct SweepPoint {
  double tau = 0.0;
  std::optional<SolverReport> report;
  std::string error;
};

// Independent solves for each tau, reported in input order. jobs > 1 runs
// points concurrently.
std::vector<SweepPoint> sweep(double e, const std::vector<double>& t_values, int k,
                              const SolveOptions& opts = {}, int jobs = 1);

}  // namespace graphon

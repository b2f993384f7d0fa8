#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "graphon/bipodal.hpp"

namespace graphon {

// Step graphon on an n x n grid, stored as a full symmetric row-major matrix.
struct GridGraphon {
  int n = 0;
  std::vector<double> w;
  // Rows [0, pode_rows) form the small pode when built from a bipodal graphon.
  int pode_rows = 0;

  static GridGraphon constant(int n, double p);
  double operator()(int i, int j) const { return w[static_cast<std::size_t>(i) * n + j]; }
  double& operator()(int i, int j) { return w[static_cast<std::size_t>(i) * n + j]; }
  double realized_c() const { return n > 0 ? static_cast<double>(pode_rows) / n : 0.0; }
};

// Throws DomainError unless n >= 2, the matrix is symmetric and every entry
// lies in [0, 1].
void validate(const GridGraphon& W);

struct GridDensities {
  double eps = 0.0;
  double tau = 0.0;
};

// eps = n^-2 sum W_ij and tau = n^-k trace(W^k).
GridDensities grid_densities(const GridGraphon& W, int k);
double grid_entropy(const GridGraphon& W);

// First round(c n) rows become the small pode. Throws DegeneratePode when that
// rounds to zero.
GridGraphon from_bipodal(const BipodalGraphon& g, int n);

// Random step graphon: rows get uniform labels in [0, podes), block values are
// e + amplitude * U(-1, 1), and each pair gets extra jitter of a tenth of the
// amplitude (the full amplitude when podes == 1). Clamped to [0, 1].
GridGraphon random_grid(int n, double e, double amplitude, std::uint64_t seed, int podes = 1);

struct OracleOptions {
  double step = 0.1;            // first trial step of the projected ascent
  int outer_iters = 30;
  int inner_iters = 3000;
  // Starting quadratic penalty.
  double penalty = 1e6;
  double penalty_growth = 10.0;
  double tol_constraint = 1e-8;
  double inner_tol = 1e-10;     // RMS projected-gradient step that ends an inner loop
  std::uint64_t seed = 1;
  bool record_merit = false;
};

struct OracleResult {
  GridGraphon grid;
  double entropy = 0.0;
  double eps = 0.0;
  double tau = 0.0;
  double residual = 0.0;  // max of |eps - e| and |tau - t|
  int outer_iterations = 0;
  int inner_iterations = 0;
  // Merit values after every accepted inner step, one vector per outer pass.
  std::vector<std::vector<double>> merit_trace;
};

// Augmented-Lagrangian projected gradient ascent of the grid entropy under
// eps = e and tau_k = t. Entries stay in [1e-9, 1 - 1e-9]. Throws
// ConstraintInfeasible if the outer loop ends above tol_constraint.
OracleResult maximize_entropy(const GridGraphon& init, double e, double t, int k,
                              const OracleOptions& opts = {});

struct Diagnostics {
  double degree_variance = 0.0;
  double ideal_value_mass = 0.0;
  double rank1_residual = 0.0;
  double pode_fraction = 0.0;
  double bipodality_residual = 0.0;
  double dg_norm2 = 0.0;  // squared L2 norm of W - e
  double lambda1 = 0.0;   // dominant eigenvalue of the operator with kernel W - e
  std::vector<int> pode;  // 1 for rows in the small pode
};

Diagnostics diagnostics(const GridGraphon& W, double e);

// Binary: 16-byte header ("GRPH", u32 n, two zero u32), then the lower
// triangle row by row as little-endian doubles.
void write_grid_binary(const GridGraphon& W, const std::string& path);
GridGraphon read_grid_binary(const std::string& path);
// JSON {"n": n, "values": [[...], ...]}; only for n <= 64.
std::string grid_to_json(const GridGraphon& W);
GridGraphon grid_from_json(const std::string& text);

}  // namespace graphon

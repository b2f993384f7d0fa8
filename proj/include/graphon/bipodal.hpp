#pragma once

#include <optional>
#include <string>

namespace graphon {

// Step graphon with two podes: value a on C1 x C1, b on C2 x C2 and d across,
// where |C1| = c. Canonical orientation keeps the small pode first (c <= 1/2).
struct BipodalGraphon {
  double a = 0.0;
  double b = 0.0;
  double c = 0.5;
  double d = 0.0;

  static BipodalGraphon constant(double p) { return {p, p, 0.5, p}; }

  // Value at (x, y) in [0,1]^2 with C1 = [0, c).
  double at(double x, double y) const {
    const bool in1x = x < c;
    const bool in1y = y < c;
    if (in1x && in1y) return a;
    if (!in1x && !in1y) return b;
    return d;
  }
};

// Throws DomainError unless 0 <= a,b,d <= 1 and 0 < c < 1.
void validate(const BipodalGraphon& g);

// Swaps the podes when c > 1/2.
BipodalGraphon canonical(const BipodalGraphon& g);

// Rejects k that is even or below 3.
void require_odd_cycle(int k);

struct SpectralPair {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
};

struct DegreeSplit {
  double d1 = 0.0;  // degree on C1
  double d2 = 0.0;  // degree on C2
  double variance = 0.0;
};

double edge_density(const BipodalGraphon& g);

// The two nonzero eigenvalues of the graphon operator, lambda1 >= lambda2.
SpectralPair spectrum(const BipodalGraphon& g);

// tau_k = lambda1^k + lambda2^k for odd k >= 3.
double cycle_density(const BipodalGraphon& g, int k);

// Expanded triangle polynomial; an independent path for k = 3.
double triangle_density_direct(const BipodalGraphon& g);

// tau_k - e^k evaluated from the deviations a-e, b-e, d-e so the result keeps
// full relative precision when it is much smaller than e^k.
double cycle_excess(const BipodalGraphon& g, double e, int k);

double entropy(const BipodalGraphon& g);

// Sum of D(value || e) over the blocks. Equals H(e) - entropy(g) whenever the
// edge density of g is e, and carries no cancellation against H(e).
double entropy_deficit(const BipodalGraphon& g, double e);

DegreeSplit degree_split(const BipodalGraphon& g);

// Degree-imbalance coordinate mu = c(a-e)/(1-c) + (d-e).
double imbalance(const BipodalGraphon& g, double e);

// Coordinates below the curve: tau = e^k - delta^k, free variables (a, mu).
struct BelowCoords {
  double e = 0.0;
  double delta = 0.0;
  double a = 0.0;
  double mu = 0.0;
};

// Coordinates above the curve: tau = e^k + dtau, free variables (a, d).
struct AboveCoords {
  double e = 0.0;
  double dtau = 0.0;
  double a = 0.0;
  double d = 0.0;
};

// Series estimates of the pode size used to seed and bracket the exact root.
double c_seed_below(const BelowCoords& co, int k);
double c_seed_above(const AboveCoords& co, int k);

// Rebuilds (b, c, d) from (a, mu) so that the edge density is e and tau_k is
// e^k - delta^k. c comes from a bracketed root solve, never from the series.
BipodalGraphon assemble_below(const BelowCoords& co, int k);

// Rebuilds (b, c) from (a, d) so that the edge density is e and tau_k is
// e^k + dtau.
BipodalGraphon assemble_above(const AboveCoords& co, int k);

// Membership tests for the parameter boxes in which the optimizer is allowed
// to move. Returns a description of the first violated bound.
std::optional<std::string> region_violation_below(const BipodalGraphon& g, const BelowCoords& co,
                                                  int k, double eta);
std::optional<std::string> region_violation_above(const BipodalGraphon& g, const AboveCoords& co,
                                                  double eta);

}  // namespace graphon

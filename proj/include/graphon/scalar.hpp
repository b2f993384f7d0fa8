#pragma once

// Binary-entropy special functions used throughout the library. All natural
// logarithms. Every function is pure.

namespace graphon {

// H(p) = -[p ln p + (1-p) ln(1-p)], with 0 ln 0 = 0 at the endpoints.
double entropy_h(double p);

// First, second or third derivative of H. Endpoints are rejected.
double entropy_h_deriv(double p, int order);

// D(p || q) = p ln(p/q) + (1-p) ln((1-p)/(1-q)); requires 0 < q < 1.
double rel_entropy(double p, double q);

// C(e) = ln(e/(1-e)) / (2e-1), the minimal relative-entropy cost per unit of
// squared deviation from e. The removable singularity at e = 1/2 evaluates to 2.
double tradeoff_c(double e);

// V_a(x) = min{x^2, (x-a)^2}.
double mass_distance(double x, double a);

// Root a0 of H'(a0) = (1 - 2/e) H'(e): the limiting small-pode value above the
// independent-edge curve. Bracketed bisection with a Newton polish.
double solve_a0(double e);

// Closed form (1 + (e/(1-e))^(2/e-1))^-1 of the same root; kept as a cross-check.
double a0_closed_form(double e);

// nu(e) = H'(e) - (e - 1/2) H''(e). Sets the optimal degree imbalance and the
// cubic term of the entropy expansion below the curve.
double imbalance_coefficient(double e);

}  // namespace graphon

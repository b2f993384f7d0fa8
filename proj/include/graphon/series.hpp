#pragma once

#include <string>
#include <vector>

#include "graphon/optimizer.hpp"

namespace graphon {

enum class Field { a, b, c, d, mu, entropy };

const char* field_name(Field f);
Field parse_field(const std::string& name);

// Truncated asymptotic values near tau = e^k. Each field carries the exponent
// p of its truncation error O(scale^p), where scale is delta below the curve
// and dtau above it.
struct SeriesPrediction {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  double mu = 0.0;
  double entropy = 0.0;

  struct Orders {
    int a = 0;
    int b = 0;
    int c = 0;
    int d = 0;
    int mu = 0;
    int entropy = 0;
  } stated_orders;

  double value(Field f) const;
  int order(Field f) const;
};

// tau = e^k - delta^k with 1/2 < e < 1.
SeriesPrediction params_below(double e, double delta, int k);

// tau = e^k + dtau with e != 1/2.
SeriesPrediction params_above(double e, double dtau, int k);

double entropy_below(double e, double delta, int k);
double entropy_above(double e, double dtau, int k);

// Runs the optimizer at every scale and returns the least-squares slope of
// log|solver - series| against log(scale) for one field.
double convergence_order(Field field, Regime regime, double e, int k, const std::vector<double>& scales,
                         const SolveOptions& opts = {});

// Plain least-squares slope of log(y) on log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace graphon

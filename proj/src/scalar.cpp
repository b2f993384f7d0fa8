#include "graphon/scalar.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "graphon/errors.hpp"

namespace graphon {
namespace {

void require_closed_unit(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError(fmt::format("{}: argument {} outside [0,1]", what, p));
  }
}

void require_open_unit(double p, const char* what) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError(fmt::format("{}: argument {} outside (0,1)", what, p));
  }
}

double xlogx(double x) { return x == 0.0 ? 0.0 : x * std::log(x); }

}  // namespace

double entropy_h(double p) {
  require_closed_unit(p, "entropy_h");
  return -(xlogx(p) + xlogx(1.0 - p));
}

double entropy_h_deriv(double p, int order) {
  require_open_unit(p, "entropy_h_deriv");
  const double q = 1.0 - p;
  switch (order) {
    case 1:
      return std::log(q / p);
    case 2:
      return -1.0 / (p * q);
    case 3:
      return (1.0 - 2.0 * p) / (p * p * q * q);
    default:
      throw DomainError(fmt::format("entropy_h_deriv: order {} not in {{1,2,3}}", order));
  }
}

double rel_entropy(double p, double q) {
  require_closed_unit(p, "rel_entropy");
  require_open_unit(q, "rel_entropy");
  // log1p form keeps the O((p-q)^2) result accurate when p is close to q.
  const double dp = p - q;
  const double first = p == 0.0 ? 0.0 : p * std::log1p(dp / q);
  const double second = p == 1.0 ? 0.0 : (1.0 - p) * std::log1p(-dp / (1.0 - q));
  const double d = first + second;
  return d < 0.0 ? 0.0 : d;
}

double tradeoff_c(double e) {
  require_open_unit(e, "tradeoff_c");
  const double x = 2.0 * e - 1.0;
  if (std::abs(x) < 1e-6) {
    const double x2 = x * x;
    return 2.0 * (1.0 + x2 / 3.0 + x2 * x2 / 5.0);
  }
  return std::log(e / (1.0 - e)) / x;
}

double mass_distance(double x, double a) {
  const double y = x - a;
  return std::min(x * x, y * y);
}

double solve_a0(double e) {
  require_open_unit(e, "solve_a0");
  const double target = (1.0 - 2.0 / e) * entropy_h_deriv(e, 1);
  // H' is strictly decreasing from +inf to -inf on (0,1).
  double lo = 0.0;
  double hi = 1.0;
  double mid = 0.5;
  while (hi - lo > 1e-14) {
    mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (entropy_h_deriv(mid, 1) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  mid = 0.5 * (lo + hi);
  const double f = entropy_h_deriv(mid, 1) - target;
  const double polished = mid - f / entropy_h_deriv(mid, 2);
  return (polished > lo && polished < hi) ? polished : mid;
}

double a0_closed_form(double e) {
  require_open_unit(e, "a0_closed_form");
  return 1.0 / (1.0 + std::pow(e / (1.0 - e), 2.0 / e - 1.0));
}

double imbalance_coefficient(double e) {
  return entropy_h_deriv(e, 1) - (e - 0.5) * entropy_h_deriv(e, 2);
}

}  // namespace graphon

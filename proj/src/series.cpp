#include "graphon/series.hpp"

#include <cmath>

#include <fmt/format.h>

#include "graphon/errors.hpp"
#include "graphon/scalar.hpp"

namespace graphon {

const char* field_name(Field f) {
  switch (f) {
    case Field::a:
      return "a";
    case Field::b:
      return "b";
    case Field::c:
      return "c";
    case Field::d:
      return "d";
    case Field::mu:
      return "mu";
    case Field::entropy:
      return "entropy";
  }
  return "?";
}

Field parse_field(const std::string& name) {
  for (Field f : {Field::a, Field::b, Field::c, Field::d, Field::mu, Field::entropy}) {
    if (name == field_name(f)) return f;
  }
  throw DomainError(fmt::format("unknown field '{}'", name));
}

double SeriesPrediction::value(Field f) const {
  switch (f) {
    case Field::a:
      return a;
    case Field::b:
      return b;
    case Field::c:
      return c;
    case Field::d:
      return d;
    case Field::mu:
      return mu;
    case Field::entropy:
      return entropy;
  }
  return 0.0;
}

int SeriesPrediction::order(Field f) const {
  switch (f) {
    case Field::a:
      return stated_orders.a;
    case Field::b:
      return stated_orders.b;
    case Field::c:
      return stated_orders.c;
    case Field::d:
      return stated_orders.d;
    case Field::mu:
      return stated_orders.mu;
    case Field::entropy:
      return stated_orders.entropy;
  }
  return 0;
}

namespace {

void require_below(double e, double delta, int k) {
  require_odd_cycle(k);
  if (!(e > 0.5 && e < 1.0)) throw DomainError(fmt::format("below-curve series need 1/2 < e < 1, got {}", e));
  if (!(delta >= 0.0)) throw DomainError(fmt::format("delta={} must be nonnegative", delta));
}

void require_above(double e, double dtau, int k) {
  require_odd_cycle(k);
  if (!(e > 0.0 && e < 1.0) || e == 0.5) {
    throw DomainError(fmt::format("above-curve series need e in (0,1), e != 1/2, got {}", e));
  }
  if (!(dtau >= 0.0)) throw DomainError(fmt::format("dtau={} must be nonnegative", dtau));
}

}  // namespace

SeriesPrediction params_below(double e, double delta, int k) {
  require_below(e, delta, k);
  const double w = 2.0 * e - 1.0;
  const double h1 = entropy_h_deriv(e, 1);
  const double nu = imbalance_coefficient(e);
  SeriesPrediction p;
  p.a = 1.0 - e - delta;
  p.b = e - delta * delta / w;
  p.c = delta / w - 2.0 * delta * delta / (w * w);
  if (k == 3) {
    p.mu = delta * delta * nu / (e * h1);
    p.d = e + delta + p.mu;
    p.stated_orders = {2, 3, 3, 3, 3, 5};
  } else {
    p.mu = nu * std::pow(delta, k - 1) / (std::pow(e, k - 2) * h1);
    p.d = e + delta;
    p.stated_orders = {2, 3, 3, k - 1, k, 5};
  }
  p.entropy = entropy_below(e, delta, k);
  return p;
}

SeriesPrediction params_above(double e, double dtau, int k) {
  require_above(e, dtau, k);
  const double w = 2.0 * e - 1.0;
  const double scale = k * std::pow(e, k - 2);
  SeriesPrediction p;
  p.a = solve_a0(e);
  // b - e = -r^2 (a - e) - 2 r (d - e) with r ~ c and d - e ~ 1 - 2e
  p.b = e + 2.0 * dtau / (scale * w);
  p.c = dtau / (scale * w * w);
  p.d = 1.0 - e;
  p.mu = 1.0 - 2.0 * e;
  p.entropy = entropy_above(e, dtau, k);
  p.stated_orders = {1, 2, 2, 1, 1, k == 3 ? 3 : 2};
  return p;
}

double entropy_below(double e, double delta, int k) {
  require_below(e, delta, k);
  const double w = 2.0 * e - 1.0;
  const double h1 = entropy_h_deriv(e, 1);
  const double h3 = entropy_h_deriv(e, 3);
  const double nu = imbalance_coefficient(e);
  const double d2 = delta * delta;
  double quartic = h3 / (3.0 * w) + 4.0 * nu / (w * w * w);
  if (k == 3) quartic -= 2.0 * nu * nu / (e * h1 * w * w);
  return entropy_h(e) + d2 * h1 / w - 2.0 * d2 * delta * nu / (w * w) + d2 * d2 * quartic;
}

double entropy_above(double e, double dtau, int k) {
  require_above(e, dtau, k);
  const double g = 1.0 - 2.0 * e;
  const double h0 = entropy_h(e);
  const double h1 = entropy_h_deriv(e, 1);
  const double linear = -2.0 * h1 / (k * std::pow(e, k - 2) * g);
  double s = h0 + linear * dtau;
  if (k == 3) {
    const double a0 = solve_a0(e);
    const double bracket = entropy_h(a0) - h0 + h1 * (3.0 * (a0 - e) + 2.0 * g / e * (a0 + 3.0 * e - 2.0));
    const double quad = bracket / (9.0 * e * e * std::pow(g, 4)) +
                        2.0 * entropy_h_deriv(e, 2) / (9.0 * e * e * g * g);
    s += quad * dtau * dtau;
  }
  return s;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("loglog_slope needs matching inputs of size >= 2");
  double mx = 0.0;
  double my = 0.0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw DomainError("loglog_slope needs positive data");
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

double convergence_order(Field field, Regime regime, double e, int k, const std::vector<double>& scales,
                         const SolveOptions& opts) {
  if (scales.size() < 3) throw DomainError("convergence_order needs at least 3 scales");
  if (regime == Regime::boundary) throw DomainError("convergence_order needs the below or above regime");
  std::vector<double> errors;
  for (double s : scales) {
    const bool below = regime == Regime::below;
    const SolverReport r = below ? solve_below(e, s, k, opts) : solve_above(e, s, k, opts);
    const SeriesPrediction p = below ? params_below(e, s, k) : params_above(e, s, k);
    double solved = 0.0;
    switch (field) {
      case Field::a:
        solved = r.graphon.a;
        break;
      case Field::b:
        solved = r.graphon.b;
        break;
      case Field::c:
        solved = r.graphon.c;
        break;
      case Field::d:
        solved = r.graphon.d;
        break;
      case Field::mu:
        solved = r.mu;
        break;
      case Field::entropy:
        solved = r.entropy;
        break;
    }
    errors.push_back(std::abs(solved - p.value(field)));
  }
  return loglog_slope(scales, errors);
}

}  // namespace graphon

#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "graphon/scalar.hpp"

using namespace graphon;

namespace {

long double naive_h(long double p) { return -(p * std::log(p) + (1 - p) * std::log(1 - p)); }

}  // namespace

TEST_CASE("binary entropy values") {
  CHECK(entropy_h(0.75) == doctest::Approx(0.5623351446188083).epsilon(1e-15));
  CHECK(entropy_h(0.7) == doctest::Approx(static_cast<double>(naive_h(0.7L))).epsilon(1e-15));
  CHECK(entropy_h(0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(entropy_h(0.0) == 0.0);
  CHECK(entropy_h(1.0) == 0.0);
  CHECK(entropy_h(0.2) == doctest::Approx(entropy_h(0.8)).epsilon(1e-15));
}

TEST_CASE("entropy derivatives agree with finite differences of the naive formula") {
  for (double p : {0.1, 0.3, 0.6, 0.75, 0.9}) {
    const long double h = 1e-5L;
    const long double lp = p;
    const long double d1 = (naive_h(lp + h) - naive_h(lp - h)) / (2 * h);
    const long double d2 = (naive_h(lp + h) - 2 * naive_h(lp) + naive_h(lp - h)) / (h * h);
    CHECK(entropy_h_deriv(p, 1) == doctest::Approx(static_cast<double>(d1)).epsilon(1e-8));
    CHECK(entropy_h_deriv(p, 2) == doctest::Approx(static_cast<double>(d2)).epsilon(1e-5));
    const double h3 = 1e-4;
    const double d3 = (entropy_h_deriv(p + h3, 2) - entropy_h_deriv(p - h3, 2)) / (2 * h3);
    CHECK(entropy_h_deriv(p, 3) == doctest::Approx(d3).epsilon(1e-5));
  }
  CHECK(entropy_h_deriv(0.75, 3) == doctest::Approx(-14.2222).epsilon(1e-5));
  CHECK_THROWS(entropy_h_deriv(0.0, 1));
  CHECK_THROWS(entropy_h_deriv(0.5, 4));
}

TEST_CASE("relative entropy") {
  CHECK(rel_entropy(0.4, 0.4) == 0.0);
  const long double p = 0.2L, q = 0.75L;
  const long double naive = p * std::log(p / q) + (1 - p) * std::log((1 - p) / (1 - q));
  CHECK(rel_entropy(0.2, 0.75) == doctest::Approx(static_cast<double>(naive)).epsilon(1e-14));
  CHECK(rel_entropy(0.0, 0.75) == doctest::Approx(-std::log(0.25)).epsilon(1e-14));
  // Near q the value is (p-q)^2 / (2 q (1-q)) to leading order and never negative.
  const double dp = 1e-7;
  CHECK(rel_entropy(0.75 + dp, 0.75) == doctest::Approx(dp * dp / (2 * 0.75 * 0.25)).epsilon(1e-5));
  CHECK(rel_entropy(0.75 - 1e-12, 0.75) >= 0.0);
  CHECK_THROWS(rel_entropy(0.3, 0.0));
}

TEST_CASE("trade-off constant") {
  CHECK(tradeoff_c(0.75) == doctest::Approx(std::log(3.0) / 0.5).epsilon(1e-15));
  CHECK(tradeoff_c(0.5) == 2.0);
  // continuous across the series branch
  CHECK(tradeoff_c(0.5 + 2e-6) == doctest::Approx(tradeoff_c(0.5 + 5e-7)).epsilon(1e-10));
  const double x = 2 * (0.5 + 1e-3) - 1;
  CHECK(tradeoff_c(0.5 + 1e-3) == doctest::Approx(std::log(0.501 / 0.499) / x).epsilon(1e-12));
}

TEST_CASE("a0 by two independent paths") {
  CHECK(std::abs(solve_a0(0.6) - 0.27967279043988031) <= 1e-12);
  for (double e : {0.3, 0.6, 0.75, 0.9}) {
    const double a0 = solve_a0(e);
    CHECK(std::abs(a0 - a0_closed_form(e)) <= 1e-10);
    CHECK(entropy_h_deriv(a0, 1) == doctest::Approx((1 - 2 / e) * entropy_h_deriv(e, 1)).epsilon(1e-12));
  }
}

TEST_CASE("imbalance coefficient and mass distance") {
  CHECK(imbalance_coefficient(0.75) == doctest::Approx(0.2347210).epsilon(1e-7));
  const double e = 0.75;
  CHECK(imbalance_coefficient(e) ==
        doctest::Approx(std::log(1 / 3.0) + 0.25 / (e * (1 - e))).epsilon(1e-14));
  CHECK(mass_distance(0.3, -0.5) == doctest::Approx(0.09));
  CHECK(mass_distance(-0.4, -0.5) == doctest::Approx(0.01));
  CHECK(mass_distance(-0.25, -0.5) == doctest::Approx(0.0625));
}

#include <doctest.h>

#include <cmath>

#include "graphon/errors.hpp"
#include "graphon/optimizer.hpp"
#include "graphon/scalar.hpp"

using namespace graphon;

namespace {

// 40-digit references from an independent arbitrary-precision Newton solve of
// the stationarity system.
struct Reference {
  double a, b, c, d, s;
};

void check_close(const SolverReport& r, const Reference& ref, double tol) {
  CHECK(std::abs(r.graphon.a - ref.a) <= tol);
  CHECK(std::abs(r.graphon.b - ref.b) <= tol);
  CHECK(std::abs(r.graphon.c - ref.c) <= tol);
  CHECK(std::abs(r.graphon.d - ref.d) <= tol);
  CHECK(std::abs(r.entropy - ref.s) <= 1e-12);
}

}  // namespace

TEST_CASE("below-curve optimum matches high-precision references") {
  SUBCASE("k=3 delta=0.01") {
    const auto r = solve_below(0.75, 0.01, 3);
    CHECK(r.converged);
    check_close(r, {0.24027210564306429, 0.74980490809057102, 0.019243169116817884, 0.75997219292197377,
                    0.56211352952504426},
                1e-9);
    CHECK(std::abs(r.mu - (-2.9042619599857583e-5)) <= 1e-11);
  }
  SUBCASE("k=3 delta=0.02") {
    const auto r = solve_below(0.75, 0.02, 3);
    CHECK(r.converged);
    check_close(r, {0.23105495609372113, 0.74923757940484498, 0.037126856902015215, 0.76989141472010909,
                    0.56144098606934731},
                1e-9);
    CHECK(std::abs(r.mu - (-0.00011828076597403682)) <= 1e-11);
  }
  SUBCASE("k=5 delta=0.01") {
    const auto r = solve_below(0.75, 0.01, 5);
    CHECK(r.converged);
    check_close(r, {0.24024636756063303, 0.74980382699961206, 0.019239885197701915, 0.75999999497671414,
                    0.56211352419670152},
                1e-9);
    CHECK(std::abs(r.mu - (-5.2468083827788659e-9)) <= 1e-12);
  }
}

// The a-curvature above the curve is c^2 H''(a0), so rounding in the entropy
// limits a to roughly 1e-8 there.
TEST_CASE("above-curve optimum matches high-precision references") {
  SUBCASE("e=0.75") {
    const auto r = solve_above(0.75, 1e-3, 3);
    CHECK(r.converged);
    check_close(r, {0.13707426626791487, 0.75177048225209723, 0.0017593163220942613, 0.24825198457125012,
                    0.56038128873562143},
                5e-8);
  }
  SUBCASE("e=0.6") {
    const auto r = solve_above(0.6, 1e-3, 3);
    CHECK(r.converged);
    check_close(r, {0.27284126997993622, 0.60540043611383782, 0.012909109881480267, 0.39566798436445955,
                    0.670758605384124},
                1e-8);
  }
}

TEST_CASE("reports satisfy the constraints and regime dispatch") {
  const double e = 0.75;
  const auto below = solve(e, std::pow(e, 3) - 1e-6, 3);
  CHECK(below.regime == Regime::below);
  CHECK(below.converged);
  CHECK(below.residual_eps <= 1e-12);
  CHECK(below.residual_tau <= 1e-12);
  CHECK(std::holds_alternative<BelowCoords>(below.coords));
  CHECK(std::get<BelowCoords>(below.coords).delta == doctest::Approx(0.01).epsilon(1e-9));

  const auto above = solve(e, std::pow(e, 3) + 1e-3, 3);
  CHECK(above.regime == Regime::above);
  CHECK(above.converged);
  CHECK(above.residual_eps <= 1e-12);
  CHECK(above.residual_tau <= 1e-12);

  const auto boundary = solve(e, std::pow(e, 3), 3);
  CHECK(boundary.regime == Regime::boundary);
  CHECK(boundary.converged);
  CHECK(boundary.entropy == doctest::Approx(entropy_h(e)).epsilon(1e-15));
  CHECK(boundary.graphon.a == e);
  CHECK(boundary.graphon.d == e);
  CHECK(std::holds_alternative<std::monostate>(boundary.coords));
}

TEST_CASE("entropy is strictly below the unconstrained maximum") {
  for (double delta : {0.005, 0.01, 0.04}) {
    const auto r = solve_below(0.75, delta, 3);
    CHECK(r.entropy < entropy_h(0.75));
  }
  CHECK(solve_above(0.75, 1e-3, 3).entropy < entropy_h(0.75));
}

TEST_CASE("error reporting") {
  CHECK_THROWS_AS(solve(0.4, 0.4 * 0.4 * 0.4 - 1e-3, 3), DomainError);
  CHECK_THROWS_AS(solve(0.75, 0.3, 4), DomainError);
  CHECK_THROWS_AS(solve(1.2, 0.3, 3), DomainError);
  SolveOptions tight;
  tight.max_iter = 1;
  CHECK_THROWS_AS(solve_below(0.75, 0.01, 3, tight), MaxIterExceeded);
  SolveOptions narrow;
  narrow.eta_region = 0.01;
  CHECK_THROWS_AS(solve_below(0.75, 0.01, 3, narrow), RegionViolation);
  SolveOptions bad;
  bad.tol_grad = -1.0;
  CHECK_THROWS_AS(solve_below(0.75, 0.01, 3, bad), DomainError);
}

TEST_CASE("model Hessians are negative definite and close to finite differences") {
  const auto below = solve_below(0.75, 0.01, 3);
  const auto fd = reduced_hessian_fd(std::get<BelowCoords>(below.coords), 3);
  const auto model = model_hessian(Regime::below, 0.75, 0.01, 3);
  CHECK(model.h_aa < 0.0);
  CHECK(model.h_mm < 0.0);
  CHECK(std::abs(fd.h_aa / model.h_aa - 1) < 0.3);
  CHECK(std::abs(fd.h_mm / model.h_mm - 1) < 0.3);
  CHECK(fd.h_aa * fd.h_mm - fd.h_am * fd.h_am > 0.0);

  const auto above = solve_above(0.75, 1e-3, 3);
  const auto fda = reduced_hessian_fd(std::get<AboveCoords>(above.coords), 3);
  const auto ma = model_hessian(Regime::above, 0.75, 1e-3, 3);
  CHECK(std::abs(fda.h_aa / ma.h_aa - 1) < 0.3);
  CHECK(std::abs(fda.h_mm / ma.h_mm - 1) < 0.3);
  CHECK(fda.h_aa < 0.0);
  CHECK(fda.h_aa * fda.h_mm - fda.h_am * fda.h_am > 0.0);

  CHECK_THROWS_AS(model_hessian(Regime::below, 0.3, 0.01, 3), NotNegativeDefinite);
  CHECK_THROWS_AS(model_hessian(Regime::boundary, 0.75, 0.01, 3), DomainError);
}

TEST_CASE("perturbed starts converge to the same optimum") {
  const auto base = solve_below(0.75, 0.01, 3);
  const auto co = std::get<BelowCoords>(base.coords);
  for (double f : {-0.2, 0.2}) {
    for (double g : {-0.5, 0.5}) {
      BelowCoords start = co;
      start.a = (1 - 0.75) + (co.a - (1 - 0.75)) * (1 + f);
      start.mu = co.mu * (1 + g);
      const auto r = solve_below(0.75, 0.01, 3, {}, start);
      CHECK(std::abs(r.graphon.a - base.graphon.a) <= 1e-9);
      CHECK(std::abs(r.graphon.c - base.graphon.c) <= 1e-9);
      CHECK(std::abs(r.mu - base.mu) <= 1e-9);
    }
  }
}

TEST_CASE("sweep keeps input order and does not depend on the job count") {
  const double e = 0.75;
  const double t0 = std::pow(e, 3);
  std::vector<double> ts;
  for (int i = 0; i < 8; ++i) ts.push_back(t0 - 4e-5 + i * 1e-5);
  const auto one = sweep(e, ts, 3, {}, 1);
  const auto two = sweep(e, ts, 3, {}, 2);
  REQUIRE(one.size() == ts.size());
  REQUIRE(two.size() == ts.size());
  for (size_t i = 0; i < ts.size(); ++i) {
    CHECK(one[i].tau == ts[i]);
    REQUIRE(one[i].report.has_value());
    REQUIRE(two[i].report.has_value());
    CHECK(one[i].report->entropy == two[i].report->entropy);
    CHECK(one[i].report->graphon.a == two[i].report->graphon.a);
    CHECK(one[i].report->iterations == two[i].report->iterations);
  }
  CHECK(one[4].report->regime == Regime::boundary);
  CHECK(one[0].report->regime == Regime::below);
  CHECK(one[7].report->regime == Regime::above);
}

TEST_CASE("sweep records failures per point") {
  const auto pts = sweep(0.4, {0.05, 0.07}, 3);
  REQUIRE(pts.size() == 2);
  CHECK_FALSE(pts[0].report.has_value());
  CHECK_FALSE(pts[0].error.empty());
}

TEST_CASE("solves are deterministic") {
  const auto r1 = solve_above(0.6, 5e-4, 5);
  const auto r2 = solve_above(0.6, 5e-4, 5);
  CHECK(r1.graphon.a == r2.graphon.a);
  CHECK(r1.graphon.c == r2.graphon.c);
  CHECK(r1.entropy == r2.entropy);
  CHECK(r1.iterations == r2.iterations);
}

TEST_CASE("scale limit keeps the leading-order optimum inside the region") {
  for (double e : {0.56, 0.75, 0.94}) {
    for (int k : {3, 5, 7}) {
      const double lb = scale_limit(Regime::below, e, k, 0.1);
      const double la = scale_limit(Regime::above, e, k, 0.1);
      CHECK(lb > 0.0);
      CHECK(la > 0.0);
      const auto rb = solve_below(e, lb * 0.5, k);
      CHECK(rb.converged);
      const auto ra = solve_above(e, la * 0.5, k);
      CHECK(ra.converged);
    }
  }
}

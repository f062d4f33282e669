#include <doctest.h>

#include <cmath>

#include "ff/grid.hpp"
#include "ff/potential.hpp"
#include "ff/smooth.hpp"
#include "ff/test_function.hpp"

using namespace ff;

TEST_CASE("build_grid: uniform spacing, interior points, Dirichlet truncation") {
  Grid g = build_grid(-1.0, 1.0, 31);
  CHECK(g.dx == doctest::Approx(2.0 / 32).epsilon(1e-15));
  CHECK(g.points.front() == doctest::Approx(-1.0 + g.dx).epsilon(1e-14));
  CHECK(g.points.back() == doctest::Approx(1.0 - g.dx).epsilon(1e-14));
  for (int i = 1; i < g.n; ++i)
    CHECK(std::abs(g.points[i] - g.points[i - 1] - g.dx) < 1e-12);

  Grid g2 = build_grid(-8.0, 8.0, 4095);
  CHECK(g2.dx == doctest::Approx(16.0 / 4096).epsilon(1e-15));
}

TEST_CASE("build_grid: rejects degenerate intervals and tiny grids") {
  CHECK_THROWS_AS(build_grid(0.0, 0.0, 100), std::invalid_argument);
  CHECK_THROWS_AS(build_grid(1.0, -1.0, 100), std::invalid_argument);
  CHECK_THROWS_AS(build_grid(-1.0, 1.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(build_grid(-1.0, 1.0, 15), std::invalid_argument);
}

TEST_CASE("potential kinds evaluate as documented") {
  CHECK(Potential::harmonic()(1.0) == doctest::Approx(1.0));
  CHECK(Potential::double_well()(1.0) == doctest::Approx(0.0));
  CHECK(Potential::double_well()(0.5) ==
        doctest::Approx(0.0625 - 0.25));
  CHECK(Potential::quartic()(2.0) == doctest::Approx(16.0));
  Potential p = Potential::polynomial({1.0, 0.0, 2.0});  // 1 + 2x^2
  CHECK(p(3.0) == doctest::Approx(19.0));
  CHECK(p.deriv(3.0) == doctest::Approx(12.0));
}

TEST_CASE("perturbed potential: bump plateau adds the full weight") {
  // chi_1 covers the left well of x^4 - x^2
  Bump left{0.01, -0.9, -0.4, 0.1};
  Potential W = Potential::double_well().with_bumps({left});
  double deep = -1.0 / std::sqrt(2.0);  // bottom of the left well
  CHECK(W(deep) == doctest::Approx(Potential::double_well()(deep) + 0.01)
                       .epsilon(1e-14));
  // far away the bump is identically zero
  CHECK(W(1.5) == doctest::Approx(Potential::double_well()(1.5)).epsilon(1e-14));
  // transition region stays within [0, w]
  double mid = W(-0.35) - Potential::double_well()(-0.35);
  CHECK(mid >= 0.0);
  CHECK(mid <= 0.01);
}

TEST_CASE("potential derivative matches finite differences everywhere") {
  Potential W =
      Potential::double_well().with_bumps({Bump{0.01, -0.9, -0.4, 0.1}});
  Potential L = W.localized(-1.6, -0.1, 0.3, 0.25, 2.5);
  const double h = 1e-6;
  for (double x = -1.9; x < 1.9; x += 0.037) {
    double fd = (L(x + h) - L(x - h)) / (2 * h);
    CHECK(L.deriv(x) == doctest::Approx(fd).epsilon(1e-5).scale(1.0));
  }
}

TEST_CASE("smooth step is a C1 partition with exact endpoints") {
  CHECK(smooth_step(-0.1) == 0.0);
  CHECK(smooth_step(1.1) == 1.0);
  CHECK(smooth_step(0.5) == doctest::Approx(0.5));
  const double h = 1e-7;
  for (double u : {0.2, 0.5, 0.8}) {
    double fd = (smooth_step(u + h) - smooth_step(u - h)) / (2 * h);
    CHECK(smooth_step_deriv(u) == doctest::Approx(fd).epsilon(1e-5));
  }
}

TEST_CASE("test functions: values, derivatives, window plateau") {
  TestFunction p = TestFunction::polynomial({0.0, 1.0});
  CHECK(p(0.3) == doctest::Approx(0.3));
  CHECK(p.deriv(0.3) == doctest::Approx(1.0));

  TestFunction b = TestFunction::gaussian_bump(1.0, 0.3, 0.25);
  CHECK(b(0.3) == doctest::Approx(1.0));
  const double h = 1e-6;
  CHECK(b.deriv(0.5) ==
        doctest::Approx((b(0.5 + h) - b(0.5 - h)) / (2 * h)).epsilon(1e-6));

  TestFunction w = TestFunction::windowed_polynomial({0.0, 1.0}, 1.2, 2.0);
  CHECK(w(0.7) == doctest::Approx(0.7).epsilon(1e-15));    // plateau: f = x
  CHECK(w(-1.0) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(w(2.5) == 0.0);
  CHECK(w(1.9) < 1.9);  // window decays
  for (double x : {-1.8, -0.4, 0.9, 1.5}) {
    double fd = (w(x + h) - w(x - h)) / (2 * h);
    CHECK(w.deriv(x) == doctest::Approx(fd).epsilon(1e-5).scale(1.0));
  }
}

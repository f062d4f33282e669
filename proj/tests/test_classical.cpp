#include <doctest.h>

#include <cmath>

#include "ff/classical_variance.hpp"
#include "ff/errors.hpp"
#include "ff/orbit.hpp"

using namespace ff;

namespace {
const Potential kHarmonic = Potential::harmonic();
const Potential kQuartic = Potential::quartic();
const TestFunction kX = TestFunction::polynomial({0.0, 1.0});
const TestFunction kX2 = TestFunction::polynomial({0.0, 0.0, 1.0});
}  // namespace

TEST_CASE("turning points: closed forms and error paths") {
  auto [a, b] = turning_points(kHarmonic, 1.0);
  CHECK(a == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(b == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(kHarmonic(a) - 1.0) < 1e-12);

  auto [c, d] = turning_points(kHarmonic, 0.25);
  CHECK(c == doctest::Approx(-0.5).epsilon(1e-10));
  CHECK(d == doctest::Approx(0.5).epsilon(1e-10));

  // x^4 - x^2 = -0.1 has four real roots: two components
  CHECK_THROWS_AS(turning_points(Potential::double_well(), -0.1),
                  MultiCutDetected);
}

TEST_CASE("period: isochronous oscillator and the ODE return-time oracle") {
  CHECK(period(kHarmonic, 1.0) == doctest::Approx(M_PI).epsilon(1e-9));
  CHECK(period(kHarmonic, 0.3) == doctest::Approx(M_PI).epsilon(1e-9));

  for (double lam : {1.0, 0.6}) {
    double Tq = period(kQuartic, lam);
    double Tode = flow_return_time(kQuartic, lam);
    CHECK(std::abs(Tq - Tode) / Tq < 1e-6);
  }
}

TEST_CASE("action: closed form, empty orbit, dg/dlambda = T/(2 pi)") {
  CHECK(action(kHarmonic, 1.0) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(action(kHarmonic, 0.0) == doctest::Approx(0.0));

  for (const Potential* V : {&kHarmonic, &kQuartic}) {
    for (double lam : {0.4, 0.7, 1.0, 1.3, 1.7}) {
      const double h = 1e-5;
      double dg = (action(*V, lam + h) - action(*V, lam - h)) / (2 * h);
      double target = period(*V, lam) / (2.0 * M_PI);
      CHECK(std::abs(dg - target) / target < 1e-5);
    }
  }
}

TEST_CASE("flow integration: period orbit, half period, energy conservation") {
  auto [x1, xi1] = integrate_flow(kHarmonic, 1.0, 0.0, M_PI);
  CHECK(std::abs(x1 - 1.0) < 1e-6);
  CHECK(std::abs(xi1) < 1e-6);

  auto [x2, xi2] = integrate_flow(kHarmonic, 1.0, 0.0, M_PI / 2.0);
  CHECK(std::abs(x2 + 1.0) < 1e-6);
  CHECK(std::abs(xi2) < 1e-6);

  // |H(t) - H(0)| < 1e-9 over ten periods
  auto [x3, xi3] = integrate_flow(kHarmonic, 1.0, 0.0, 10.0 * M_PI);
  CHECK(std::abs(xi3 * xi3 + x3 * x3 - 1.0) < 1e-9);
}

TEST_CASE("angle map: cos theta for the harmonic orbit, endpoints, symmetry") {
  const int M = 1024;
  OrbitData orb = angle_parametrization(kHarmonic, 1.0, M);
  CHECK(orb.psi_samples[0] == doctest::Approx(orb.x_plus).epsilon(1e-12));
  CHECK(orb.psi_samples[M / 2] ==
        doctest::Approx(orb.x_minus).epsilon(1e-6));
  double worst = 0.0, worst_sym = 0.0;
  for (int m = 0; m < M; ++m) {
    double theta = 2.0 * M_PI * m / M;
    worst = std::max(worst, std::abs(orb.psi_samples[m] - std::cos(theta)));
    if (m > 0)
      worst_sym = std::max(worst_sym, std::abs(orb.psi_samples[M - m] -
                                               orb.psi_samples[m]));
  }
  CHECK(worst < 1e-6);
  CHECK(worst_sym < 1e-8);
}

TEST_CASE("angle map derivative identity psi' = (T/pi) sqrt(mu - V(psi))") {
  const int M = 4096;
  OrbitData orb = angle_parametrization(kQuartic, 1.0, M);
  const double dtheta = 2.0 * M_PI / M;
  double worst = 0.0;
  for (int m = 1; m < M / 2 - 1; ++m) {
    double theta = dtheta * m;
    if (theta < 0.1 || theta > M_PI - 0.1) continue;
    double dpsi =
        (orb.psi_samples[m + 1] - orb.psi_samples[m - 1]) / (2.0 * dtheta);
    double q = 1.0 - std::pow(orb.psi_samples[m], 4);
    double target = -orb.period / M_PI * std::sqrt(std::max(q, 0.0));
    worst = std::max(worst, std::abs(dpsi - target));
  }
  CHECK(worst < 1e-4);
}

TEST_CASE("flow Fourier coefficients: harmonic closed forms") {
  FlowFourier fx = flow_fourier_coefficients(kX, kHarmonic, 1.0, 8);
  CHECK(std::abs(fx.a(1) - 0.5) < 1e-9);
  CHECK(std::abs(fx.a(-1) - 0.5) < 1e-9);
  for (int k : {0, 2, 3, 4})
    CHECK(std::abs(fx.a(k)) < 1e-10);
  // conjugate symmetry for a real observable
  for (int k = 1; k <= fx.K; ++k)
    CHECK(std::abs(fx.a(-k) - std::conj(fx.a(k))) < 1e-12);
  CHECK(fx.truncation_ok);

  FlowFourier f1 =
      flow_fourier_coefficients(TestFunction::polynomial({1.0}), kHarmonic,
                                1.0, 4);
  CHECK(std::abs(f1.a(0) - 1.0) < 1e-12);
  for (int k = 1; k <= 4; ++k) CHECK(std::abs(f1.a(k)) < 1e-12);

  FlowFourier fx2 = flow_fourier_coefficients(kX2, kHarmonic, 1.0, 8);
  CHECK(std::abs(fx2.a(0) - 0.5) < 1e-9);
  CHECK(std::abs(fx2.a(2) - 0.25) < 1e-9);
  CHECK(std::abs(fx2.a(-2) - 0.25) < 1e-9);
}

TEST_CASE("variance, Fourier route: harmonic closed forms") {
  CHECK(predicted_variance_fourier(TestFunction::polynomial({3.0}), kHarmonic,
                                   1.0) == doctest::Approx(0.0));
  CHECK(predicted_variance_fourier(kX, kHarmonic, 1.0) ==
        doctest::Approx(0.25).epsilon(1e-9));
  CHECK(predicted_variance_fourier(kX2, kHarmonic, 1.0) ==
        doctest::Approx(0.125).epsilon(1e-9));
}

TEST_CASE("variance, Devinatz route: cross-oracle against Fourier") {
  CHECK(devinatz_variance(TestFunction::polynomial({2.0}), kHarmonic, 1.0) ==
        doctest::Approx(0.0));
  CHECK(std::abs(devinatz_variance(kX, kHarmonic, 1.0) - 0.25) < 1e-6);
  CHECK(std::abs(devinatz_variance(kX2, kHarmonic, 1.0) - 0.125) < 1e-6);
}

TEST_CASE("theta map: arccos closed form, inverse of psi, edge values") {
  for (double x : {-0.8, -0.3, 0.0, 0.5, 0.9}) {
    CHECK(std::abs(theta_map(kHarmonic, 1.0, x) - std::acos(x)) < 1e-8);
  }
  CHECK(theta_map(kHarmonic, 1.0, 1.0) == doctest::Approx(0.0));
  CHECK(theta_map(kHarmonic, 1.0, -1.0) == doctest::Approx(M_PI));

  // theta(psi(theta0)) = theta0 on the quartic orbit
  const int M = 4096;
  OrbitData orb = angle_parametrization(kQuartic, 1.0, M);
  for (double theta0 : {0.3, 1.1, 2.8}) {
    int m = static_cast<int>(std::round(theta0 * M / (2.0 * M_PI)));
    double theta_back = theta_map(kQuartic, 1.0, orb.psi_samples[m]);
    CHECK(std::abs(theta_back - 2.0 * M_PI * m / M) < 1e-5);
  }
  CHECK_THROWS_AS(theta_map(kHarmonic, 1.0, 1.5), OutOfDroplet);
}

TEST_CASE("GFF kernel: closed form, symmetry, log divergence, errors") {
  // theta(0.5) = pi/3, theta(-0.5) = 2pi/3 -> log|sin(pi/2)| - log|sin(-pi/6)|
  CHECK(gff_kernel(kHarmonic, 1.0, 0.5, -0.5) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-8));
  CHECK(gff_kernel(kHarmonic, 1.0, 0.3, -0.62) ==
        doctest::Approx(gff_kernel(kHarmonic, 1.0, -0.62, 0.3))
            .epsilon(1e-12));

  // near-diagonal divergence ~ -log|theta(x) - theta(z)|
  double x = 0.2;
  double k1 = gff_kernel(kHarmonic, 1.0, x, x + 1e-3);
  double k2 = gff_kernel(kHarmonic, 1.0, x, x + 1e-4);
  CHECK(k1 > 0.0);
  CHECK(k2 > k1);
  double dth1 = std::abs(theta_map(kHarmonic, 1.0, x + 1e-3) -
                         theta_map(kHarmonic, 1.0, x));
  double dth2 = std::abs(theta_map(kHarmonic, 1.0, x + 1e-4) -
                         theta_map(kHarmonic, 1.0, x));
  CHECK(k2 - k1 == doctest::Approx(std::log(dth1 / dth2)).epsilon(0.01));

  CHECK_THROWS_AS(gff_kernel(kHarmonic, 1.0, 0.3, 0.3), SingularDiagonal);
  CHECK_THROWS_AS(gff_kernel(kHarmonic, 1.0, 1.2, 0.0), OutOfDroplet);
}

TEST_CASE("variance, GFF route: cross-oracle against Fourier") {
  CHECK(gff_variance(TestFunction::polynomial({5.0}), kHarmonic, 1.0) ==
        doctest::Approx(0.0));
  CHECK(std::abs(gff_variance(kX, kHarmonic, 1.0) - 0.25) < 1e-4);
  CHECK(std::abs(gff_variance(kX2, kHarmonic, 1.0) - 0.125) < 1e-4);
}

TEST_CASE("triple agreement on a generic observable and potential") {
  TestFunction bump = TestFunction::gaussian_bump(1.0, 0.3, 0.25);
  for (const Potential* V : {&kHarmonic, &kQuartic}) {
    double sf = predicted_variance_fourier(bump, *V, 1.0);
    double sd = devinatz_variance(bump, *V, 1.0);
    double sg = gff_variance(bump, *V, 1.0);
    CHECK(std::abs(sf - sd) < 1e-6);
    CHECK(std::abs(sf - sg) < 1e-4);
  }
}

TEST_CASE("variance scales quadratically in the observable (all routes)") {
  TestFunction f = TestFunction::polynomial({0.0, 1.0});
  TestFunction cf = TestFunction::polynomial({0.0, 3.0});
  CHECK(predicted_variance_fourier(cf, kQuartic, 1.0) ==
        doctest::Approx(9.0 * predicted_variance_fourier(f, kQuartic, 1.0))
            .epsilon(1e-12));
  CHECK(devinatz_variance(cf, kQuartic, 1.0) ==
        doctest::Approx(9.0 * devinatz_variance(f, kQuartic, 1.0))
            .epsilon(1e-12));
  CHECK(gff_variance(cf, kQuartic, 1.0) ==
        doctest::Approx(9.0 * gff_variance(f, kQuartic, 1.0)).epsilon(1e-12));
}

TEST_CASE("gue chebyshev identification: flow route equals cos-angle route") {
  // Example-level statement: psi(theta) = cos(theta) at mu = 1 makes the two
  // computations identical
  OrbitData orb = angle_parametrization(kHarmonic, 1.0, 4096);
  double worst = 0.0;
  for (int m = 0; m < 4096; ++m)
    worst = std::max(worst, std::abs(orb.psi_samples[m] -
                                     std::cos(2.0 * M_PI * m / 4096)));
  CHECK(worst < 1e-9);
}

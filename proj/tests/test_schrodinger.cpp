#include <doctest.h>

#include <cmath>
#include <memory>

#include "ff/errors.hpp"
#include "ff/orbit.hpp"
#include "ff/spectral.hpp"

using namespace ff;

namespace {

std::shared_ptr<const SpectralDecomposition> solve(const Potential& V,
                                                   double x0, double x1, int n,
                                                   double hbar, double mu_max,
                                                   double cap) {
  Grid g = build_grid(x0, x1, n);
  auto H = discretize_hamiltonian(g, V, hbar, mu_max);
  return std::make_shared<const SpectralDecomposition>(eigendecompose(H, cap));
}

}  // namespace

TEST_CASE("free particle: discrete Dirichlet Laplacian spectrum is exact") {
  // V = 0, hbar = 1: eigenvalues (2/dx^2)(1 - cos(k pi/(n+1)))
  Grid g = build_grid(0.0, 1.0, 63);
  Potential zero = Potential::polynomial({0.0});
  TridiagonalHamiltonian H;
  H.grid = g;
  H.hbar = 1.0;
  const double k = 1.0 / (g.dx * g.dx);
  H.diag = Eigen::VectorXd::Constant(g.n, 2.0 * k);
  H.off = Eigen::VectorXd::Constant(g.n - 1, -k);
  auto dec = eigendecompose(H, 1e9);
  REQUIRE(dec.count() == g.n);
  for (int j = 0; j < 10; ++j) {
    double exact = 2.0 * k * (1.0 - std::cos((j + 1) * M_PI / (g.n + 1)));
    CHECK(dec.eigenvalues[j] == doctest::Approx(exact).epsilon(1e-12));
  }
}

TEST_CASE("harmonic spectrum: (2k+1) hbar within 1e-4 and ascending") {
  auto dec = solve(Potential::harmonic(), -8.0, 8.0, 2047, 0.05, 1.0, 1.0);
  // lowest eigenvalue (module contract at this grid)
  CHECK(std::abs(dec->eigenvalues[0] - 0.05) < 1e-4);
  for (int j = 1; j < dec->count(); ++j)
    CHECK(dec->eigenvalues[j] >= dec->eigenvalues[j - 1]);
  // eigenvalue count at lambda_cap = 1: (2k+1)*0.05 <= 1 -> 10 states
  int below = 0;
  for (double lam : dec->eigenvalues)
    if (lam <= 1.0) ++below;
  CHECK(below == 10);
}

TEST_CASE("orthonormality under the dx quadrature weight") {
  auto dec = solve(Potential::harmonic(), -4.0, 4.0, 1023, 0.1, 1.0, 1.2);
  const auto& Phi = dec->eigenfunctions;
  Eigen::MatrixXd G = Phi.transpose() * Phi * dec->grid.dx;
  double resid = (G - Eigen::MatrixXd::Identity(G.rows(), G.cols()))
                     .cwiseAbs()
                     .maxCoeff();
  CHECK(resid < 1e-8);
}

TEST_CASE("deterministic sign: positive tail at the right turning point") {
  auto dec = solve(Potential::harmonic(), -4.0, 4.0, 1023, 0.1, 1.0, 1.2);
  // scanning from the right, the first significant value must be positive
  for (int j = 0; j < dec->count(); ++j) {
    auto col = dec->eigenfunctions.col(j);
    double amax = col.cwiseAbs().maxCoeff();
    for (int i = dec->grid.n - 1; i >= 0; --i) {
      if (std::abs(col[i]) > 1e-3 * amax) {
        CHECK(col[i] > 0.0);
        break;
      }
    }
  }
}

TEST_CASE("discretize_hamiltonian rejects boxes that clip the droplet") {
  Grid g = build_grid(-1.2, 1.2, 255);  // V(1.2) = 1.44 < mu_max + 2
  CHECK_THROWS_AS(
      discretize_hamiltonian(g, Potential::harmonic(), 0.05, 1.0),
      std::invalid_argument);
  CHECK_THROWS_AS(
      discretize_hamiltonian(build_grid(-8, 8, 255), Potential::harmonic(),
                             -0.05, 1.0),
      std::invalid_argument);
}

TEST_CASE("spectral_projector: rank, empty case, ambiguous Fermi level") {
  auto dec = solve(Potential::harmonic(), -8.0, 8.0, 2047, 0.05, 1.0, 1.4);
  Projector P = spectral_projector(dec, 1.0);
  CHECK(P.rank() == 10);  // analytic spectrum

  Projector none = spectral_projector(dec, 0.01);  // below lambda_0
  CHECK(none.rank() == 0);

  // mu within gap_tol of an eigenvalue
  double lam3 = dec->eigenvalues[3];
  CHECK_THROWS_AS(spectral_projector(dec, lam3 + 1e-5 * 0.05),
                  AmbiguousFermiLevel);

  double nudged = nudge_to_gap_midpoint(*dec, lam3 + 1e-5 * 0.05);
  CHECK(nudged == doctest::Approx(0.5 * (dec->eigenvalues[3] +
                                         dec->eigenvalues[4])));
  CHECK_NOTHROW(spectral_projector(dec, nudged));
}

TEST_CASE("projector idempotency in the weighted kernel algebra") {
  auto dec = solve(Potential::harmonic(), -4.0, 4.0, 1023, 0.1, 1.0, 1.2);
  Projector P = spectral_projector(dec, 1.0);
  auto Phi = P.columns();
  // K acting with quadrature weight: M = Phi Phi^T dx; idempotency M^2 = M
  // checked through the Gram matrix Phi^T Phi dx = I_N
  Eigen::MatrixXd G = Phi.transpose() * Phi * P.dx();
  double resid =
      (G - Eigen::MatrixXd::Identity(P.rank(), P.rank())).cwiseAbs().maxCoeff();
  CHECK(resid < 1e-8);
}

TEST_CASE("weyl count: closed forms and rank agreement") {
  // harmonic, mu = 1: (1/pi hbar) int sqrt(1-x^2) = 1/(2 hbar)
  CHECK(weyl_count(Potential::harmonic(), 1.0, 0.01) ==
        doctest::Approx(50.0).epsilon(1e-9));
  CHECK(weyl_count(Potential::harmonic(), 1.0, 0.05) ==
        doctest::Approx(10.0).epsilon(1e-9));
  // mu below min V
  CHECK(weyl_count(Potential::harmonic(), -0.5, 0.05) == 0.0);

  auto dec = solve(Potential::harmonic(), -8.0, 8.0, 2047, 0.05, 1.0, 1.0);
  int N = 0;
  for (double lam : dec->eigenvalues)
    if (lam <= 1.0) ++N;
  CHECK(std::abs(N - 10.0) <= 1.0);

  // multi-cut droplet: weyl integrates over both components
  double w2 = weyl_count(Potential::double_well(), -0.05, 0.01);
  CHECK(w2 > 0.0);
  double g_half = action(Potential::double_well().localized(0.0, 2.0, 0.5, 0.5,
                                                            2.45),
                         -0.05);
  CHECK(w2 == doctest::Approx(2.0 * g_half / 0.01).epsilon(1e-6));
}

TEST_CASE("eigenvalue spacing near mu matches 2 pi hbar / T") {
  const double hbar = 0.02, mu = 1.0;
  auto dec = solve(Potential::quartic(), -2.2, 2.2, 4095, hbar, 1.0, 1.2);
  double T = period(Potential::quartic(), mu);
  double expected = 2.0 * M_PI * hbar / T;
  for (int j = 1; j < dec->count(); ++j) {
    if (dec->eigenvalues[j - 1] < mu - 0.2 || dec->eigenvalues[j] > mu + 0.2)
      continue;
    double gap = dec->eigenvalues[j] - dec->eigenvalues[j - 1];
    CHECK(gap > 0.2 * expected);
    CHECK(gap < 5.0 * expected);
  }
}

TEST_CASE("eigenfunctions decay exponentially outside the droplet") {
  // mass of occupied states at distance > 1 from the droplet behaves like
  // exp(-c/hbar); fit c from two hbar values and check stability
  auto mass_outside = [](double hbar) {
    auto dec = solve(Potential::harmonic(), -6.0, 6.0, 2047, hbar, 1.0, 1.0);
    const Grid& g = dec->grid;
    double worst = 0.0;
    int N = 0;
    for (double lam : dec->eigenvalues)
      if (lam <= 1.0) ++N;
    for (int j = 0; j < N; ++j) {
      double m = 0.0;
      for (int i = 0; i < g.n; ++i)
        if (std::abs(g.points[i]) > 2.0)
          m += dec->eigenfunctions(i, j) * dec->eigenfunctions(i, j) * g.dx;
      worst = std::max(worst, m);
    }
    return worst;
  };
  double m1 = mass_outside(0.2);
  double m2 = mass_outside(0.1);
  CHECK(m1 < 1.0);
  CHECK(m2 < m1 * m1 * 10.0);  // at least doubling decay rate
  double c_fit = (std::log(m1) - std::log(m2)) / (1.0 / 0.1 - 1.0 / 0.2);
  CHECK(c_fit > 0.0);
  CHECK(m2 < std::exp(-c_fit / 0.1) * 10.0);
}

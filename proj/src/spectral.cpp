#include "ff/spectral.hpp"

#include <lapacke.h>

#include <cmath>
#include <stdexcept>

#include "ff/droplet.hpp"
#include "ff/errors.hpp"

namespace ff {

TridiagonalHamiltonian discretize_hamiltonian(const Grid& grid,
                                              const Potential& V, double hbar,
                                              double mu_max, double margin) {
  if (hbar <= 0.0)
    throw std::invalid_argument("discretize_hamiltonian: hbar must be > 0");
  if (V(grid.x_min) < mu_max + margin || V(grid.x_max) < mu_max + margin)
    throw std::invalid_argument(
        "discretize_hamiltonian: box too small, V at the boundary is below "
        "mu_max + margin");
  TridiagonalHamiltonian H;
  H.grid = grid;
  H.hbar = hbar;
  const double k = hbar * hbar / (grid.dx * grid.dx);
  H.diag.resize(grid.n);
  for (int i = 0; i < grid.n; ++i) H.diag[i] = 2.0 * k + V(grid.points[i]);
  H.off = Eigen::VectorXd::Constant(grid.n - 1, -k);
  return H;
}

SpectralDecomposition eigendecompose(const TridiagonalHamiltonian& H,
                                     double lambda_cap) {
  const int n = H.grid.n;
  std::vector<double> d(H.diag.data(), H.diag.data() + n);
  std::vector<double> e(H.off.data(), H.off.data() + n - 1);

  // First pass: count eigenvalues <= lambda_cap (no vectors).
  double vl = H.diag.minCoeff() - 3.0 * std::abs(H.off[0]) - 1.0;
  lapack_int m = 0;
  {
    std::vector<double> dc = d, ec = e, w(n);
    std::vector<lapack_int> isuppz(2 * std::max(1, n));
    lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'N', 'V', n, dc.data(),
                                     ec.data(), vl, lambda_cap, 0, 0, 0.0, &m,
                                     w.data(), nullptr, 1, isuppz.data());
    if (info != 0) throw EigensolveFailure(static_cast<int>(info));
  }

  SpectralDecomposition dec;
  dec.hbar = H.hbar;
  dec.lambda_cap = lambda_cap;
  dec.grid = H.grid;
  if (m == 0) return dec;

  dec.eigenvalues.resize(m);
  dec.eigenfunctions.resize(n, m);
  {
    std::vector<double> dc = d, ec = e;
    std::vector<lapack_int> isuppz(2 * std::max<lapack_int>(1, m));
    lapack_int m2 = 0;
    lapack_int info = LAPACKE_dstevr(
        LAPACK_COL_MAJOR, 'V', 'I', n, dc.data(), ec.data(), 0.0, 0.0, 1, m,
        0.0, &m2, dec.eigenvalues.data(), dec.eigenfunctions.data(), n,
        isuppz.data());
    if (info != 0) throw EigensolveFailure(static_cast<int>(info));
    if (m2 != m) throw EigensolveFailure(-1);
  }

  // normalize to the dx inner product and fix signs deterministically
  const double inv_sqrt_dx = 1.0 / std::sqrt(H.grid.dx);
  for (int j = 0; j < m; ++j) {
    auto col = dec.eigenfunctions.col(j);
    col *= inv_sqrt_dx;
    double amax = col.cwiseAbs().maxCoeff();
    double thresh = 1e-3 * amax;
    for (int i = n - 1; i >= 0; --i) {
      if (std::abs(col[i]) > thresh) {
        if (col[i] < 0.0) col = -col;
        break;
      }
    }
  }
  return dec;
}

Projector spectral_projector(std::shared_ptr<const SpectralDecomposition> dec,
                             double mu) {
  if (dec->lambda_cap < mu)
    throw std::invalid_argument(
        "spectral_projector: decomposition retained only up to lambda_cap < "
        "mu");
  const double gap_tol = 1e-3 * dec->hbar;
  int N = 0;
  for (double lam : dec->eigenvalues) {
    if (std::abs(lam - mu) <= gap_tol)
      throw AmbiguousFermiLevel(mu, lam, gap_tol);
    if (lam <= mu) ++N;
  }
  return Projector(std::move(dec), mu, N);
}

double nudge_to_gap_midpoint(const SpectralDecomposition& dec, double mu) {
  const auto& ev = dec.eigenvalues;
  if (ev.empty()) return mu;
  // eigenvalue nearest to mu and its neighbour on the far side of mu
  int j = 0;
  for (int k = 1; k < static_cast<int>(ev.size()); ++k)
    if (std::abs(ev[k] - mu) < std::abs(ev[j] - mu)) j = k;
  if (ev[j] <= mu) {
    if (j + 1 < static_cast<int>(ev.size())) return 0.5 * (ev[j] + ev[j + 1]);
    return 0.5 * (ev[j] + dec.lambda_cap);
  }
  if (j > 0) return 0.5 * (ev[j - 1] + ev[j]);
  return mu - (ev[j] - mu);
}

double weyl_count(const Potential& V, double mu, double hbar) {
  auto comps = droplet_components(V, mu);
  double total = 0.0;
  for (auto [a, b] : comps) total += allowed_region_integral(V, mu, a, b);
  return total / (M_PI * hbar);
}

}  // namespace ff

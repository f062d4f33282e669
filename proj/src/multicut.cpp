#include "ff/multicut.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ff/determinantal.hpp"
#include "ff/droplet.hpp"
#include "ff/errors.hpp"
#include "ff/orbit.hpp"
#include "ff/rng.hpp"

namespace ff {

namespace {
constexpr double kPlateauAboveMu = 2.5;
}

WellFamily build_well_family(const Potential& V, const Grid& grid, double mu,
                             const std::vector<double>& w, double eps) {
  const int ell = static_cast<int>(w.size());
  auto comps1 = droplet_components(V, mu + eps);       // chi_j = 1 here
  auto comps2 = droplet_components(V, mu + 2 * eps);   // chi_j support
  if (static_cast<int>(comps1.size()) != ell || ell < 2)
    throw NotMultiCut(static_cast<int>(comps1.size()), std::max(2, ell));
  if (comps2.size() != comps1.size())
    throw NotMultiCut(static_cast<int>(comps2.size()), ell);

  std::vector<Bump> bumps(ell);
  for (int j = 0; j < ell; ++j) {
    double m_lo = comps1[j].first - comps2[j].first;
    double m_hi = comps2[j].second - comps1[j].second;
    bumps[j] = Bump{w[j], comps1[j].first, comps1[j].second,
                    std::max(1e-6, std::min(m_lo, m_hi))};
  }

  WellFamily fam;
  fam.ell = ell;
  fam.mu = mu;
  fam.eps = eps;
  fam.weights = w;
  fam.grid = grid;
  fam.perturbed = V.with_bumps(bumps);
  fam.host_intervals = comps2;

  const double plateau = mu + kPlateauAboveMu;
  for (int j = 0; j < ell; ++j) {
    double keep_lo, keep_hi, bw_lo, bw_hi;
    if (j == 0) {
      keep_lo = grid.x_min - 1.0;
      bw_lo = 1.0;
    } else {
      double gap = comps2[j].first - comps2[j - 1].second;
      keep_lo = comps2[j - 1].second + 0.5 * gap;
      bw_lo = 0.5 * gap;
    }
    if (j == ell - 1) {
      keep_hi = grid.x_max + 1.0;
      bw_hi = 1.0;
    } else {
      double gap = comps2[j + 1].first - comps2[j].second;
      keep_hi = comps2[j].second + 0.5 * gap;
      bw_hi = 0.5 * gap;
    }
    fam.wells.push_back(
        fam.perturbed.localized(keep_lo, keep_hi, bw_lo, bw_hi, plateau));
  }

  // invariants: one-cut at mu, and >= mu + eps/2 outside the host interval
  for (int j = 0; j < ell; ++j) {
    (void)turning_points(fam.wells[j], mu);  // throws if not one-cut
    for (double x : grid.points) {
      if (x >= comps2[j].first && x <= comps2[j].second) continue;
      if (fam.wells[j](x) < mu + 0.5 * eps - 1e-12)
        throw Error("build_well_family: localized well dips below mu + eps/2 "
                    "outside its host interval");
    }
  }
  return fam;
}

SeparationReport separation_report(const WellFamily& family, double hbar) {
  SeparationReport rep;
  rep.threshold = hbar * hbar * hbar;
  rep.min_cross_gap = std::numeric_limits<double>::infinity();
  rep.min_dist_mu = std::numeric_limits<double>::infinity();

  const double mu = family.mu, eps = family.eps;
  std::vector<std::vector<double>> window(family.ell);
  for (int j = 0; j < family.ell; ++j) {
    auto H = discretize_hamiltonian(family.grid, family.wells[j], hbar,
                                    mu + eps);
    auto dec = std::make_shared<SpectralDecomposition>(
        eigendecompose(H, mu + eps));
    for (double lam : dec->eigenvalues) {
      rep.min_dist_mu = std::min(rep.min_dist_mu, std::abs(lam - mu));
      if (std::abs(lam - mu) <= eps) window[j].push_back(lam);
    }
    rep.well_decs.push_back(std::move(dec));
  }
  for (int i = 0; i < family.ell; ++i)
    for (int j = i + 1; j < family.ell; ++j)
      for (double a : window[i])
        for (double b : window[j])
          rep.min_cross_gap = std::min(rep.min_cross_gap, std::abs(a - b));

  rep.pass_cross = rep.min_cross_gap > rep.threshold;
  rep.pass_mu = rep.min_dist_mu > rep.threshold;
  return rep;
}

namespace {

int rank_below(const SpectralDecomposition& dec, double mu) {
  int N = 0;
  for (double lam : dec.eigenvalues)
    if (lam <= mu) ++N;
  return N;
}

// ||[Pi_a, Pi_b]|| by power iteration on C^T C, C the commutator acting on
// grid vectors (C^T = -C for symmetric projectors).
double commutator_norm(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                       double dx) {
  if (A.cols() == 0 || B.cols() == 0) return 0.0;
  const int n = static_cast<int>(A.rows());
  auto proj = [&](const Eigen::MatrixXd& M, const Eigen::VectorXd& v) {
    return (M * (M.transpose() * v) * dx).eval();
  };
  auto comm = [&](const Eigen::VectorXd& v) {
    return (proj(A, proj(B, v)) - proj(B, proj(A, v))).eval();
  };
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = std::cos(0.37 * i) + 0.21;
  v.normalize();
  double sigma2 = 0.0;
  for (int it = 0; it < 60; ++it) {
    Eigen::VectorXd u = -comm(comm(v));
    double nu = u.norm();
    if (nu == 0.0) return 0.0;
    sigma2 = nu;
    v = u / nu;
  }
  return std::sqrt(sigma2);
}

}  // namespace

DecompositionError projector_decomposition_error(const WellFamily& family,
                                                 double hbar) {
  SeparationReport sep = separation_report(family, hbar);
  if (!sep.pass()) throw SeparationFailed();

  const double mu = family.mu, eps = family.eps;
  const double dx = family.grid.dx;
  auto Hf = discretize_hamiltonian(family.grid, family.perturbed, hbar,
                                   mu + eps);
  SpectralDecomposition full = eigendecompose(Hf, mu + eps);

  DecompositionError out;
  out.rank_full = rank_below(full, mu);
  auto PF = full.eigenfunctions.leftCols(out.rank_full);

  std::vector<Eigen::MatrixXd> wells;
  for (const auto& dec : sep.well_decs) {
    int Nj = rank_below(*dec, mu);
    out.ranks.push_back(Nj);
    wells.push_back(dec->eigenfunctions.leftCols(Nj));
  }
  int sum_ranks = 0;
  for (int r : out.ranks) sum_ranks += r;
  out.rank_additive = (sum_ranks == out.rank_full);

  // dx-weighted Frobenius (Hilbert-Schmidt) norm of K - sum K_j via Gram
  // products: ||K||^2 = dx^2 ||Phi_a^T Phi_b||_F^2 pieces
  auto g2 = [&](const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
    if (A.cols() == 0 || B.cols() == 0) return 0.0;
    return ((A.transpose() * B) * dx).squaredNorm();
  };
  double n2 = g2(PF, PF);
  for (const auto& Wj : wells) {
    n2 += g2(Wj, Wj) - 2.0 * g2(PF, Wj);
    for (const auto& Wk : wells)
      if (&Wk != &Wj) n2 += g2(Wj, Wk);  // ordered pairs = sum_{j != k}
  }
  out.kernel_frobenius = std::sqrt(std::max(n2, 0.0));

  for (std::size_t i = 0; i < wells.size(); ++i)
    for (std::size_t j = i + 1; j < wells.size(); ++j)
      out.commutator_norms.push_back(commutator_norm(wells[i], wells[j], dx));
  return out;
}

MulticutVarianceReport multicut_variance_check(const WellFamily& family,
                                               double hbar,
                                               const TestFunction& f,
                                               double eta) {
  SeparationReport sep = separation_report(family, hbar);
  if (!sep.pass()) throw SeparationFailed();

  const double mu = family.mu, eps = family.eps;
  auto Hf = discretize_hamiltonian(family.grid, family.perturbed, hbar,
                                   mu + eps);
  auto full = std::make_shared<const SpectralDecomposition>(
      eigendecompose(Hf, mu + eps));
  Projector Pf = spectral_projector(full, mu);

  MulticutVarianceReport rep;
  rep.eta = eta;
  rep.var_full = exact_variance(Pf, f);
  rep.log_laplace_full = log_laplace(Pf, f, eta).real();
  for (int j = 0; j < family.ell; ++j) {
    Projector Pj = spectral_projector(sep.well_decs[j], mu);
    rep.var_sum_wells += exact_variance(Pj, f);
    rep.log_laplace_sum += log_laplace(Pj, f, eta).real();
    rep.sigma2_sum_classical +=
        predicted_variance_fourier(f, family.wells[j], mu);
  }
  return rep;
}

ResonanceScan resonance_scan(const Potential& V, const Grid& grid, double mu,
                             double eps, int ell,
                             const std::vector<double>& hbars, int draws,
                             std::uint64_t seed) {
  ResonanceScan scan;
  scan.hbars = hbars;
  for (std::size_t hi = 0; hi < hbars.size(); ++hi) {
    int passed = 0;
    for (int d = 0; d < draws; ++d) {
      CounterRng rng(seed, (static_cast<std::uint64_t>(hi) << 32) |
                               static_cast<std::uint64_t>(d));
      std::vector<double> w(ell);
      for (int j = 0; j < ell; ++j) w[j] = rng.uniform(-eps, eps);
      ResonanceScanRow row;
      row.hbar = hbars[hi];
      row.draw = d;
      try {
        WellFamily fam = build_well_family(V, grid, mu, w, eps);
        SeparationReport rep = separation_report(fam, hbars[hi]);
        row.pass = rep.pass();
        row.min_cross_gap = rep.min_cross_gap;
        row.min_dist_mu = rep.min_dist_mu;
      } catch (const Error&) {
        row.pass = false;
      }
      if (row.pass) ++passed;
      scan.rows.push_back(row);
    }
    scan.pass_rate.push_back(static_cast<double>(passed) / draws);
  }
  return scan;
}

}  // namespace ff

#pragma once

#include <memory>
#include <vector>

#include "ff/grid.hpp"
#include "ff/potential.hpp"
#include "ff/spectral.hpp"
#include "ff/test_function.hpp"

namespace ff {

/// Localized single-well potentials W_j for a multi-well droplet. Each W_j
/// equals the perturbed potential V + sum w_k chi_k on well j's side up to
/// the inter-well gap midpoints and bridges to a constant plateau beyond.
struct WellFamily {
  int ell = 0;
  double mu = 0.0;
  double eps = 0.0;
  std::vector<double> weights;
  Potential perturbed;               // V + sum_j w_j chi_j
  std::vector<Potential> wells;      // localized W_j
  std::vector<std::pair<double, double>> host_intervals;  // I_j' (chi support)
  Grid grid;

  WellFamily() : perturbed(Potential::harmonic()) {}
};

/// NotMultiCut unless {V <= mu+eps} has exactly ell = |w| >= 2 components on
/// the scan grid. Verifies each W_j is one-cut at mu and stays >= mu + eps/2
/// outside its host interval.
WellFamily build_well_family(const Potential& V, const Grid& grid, double mu,
                             const std::vector<double>& w, double eps);

struct SeparationReport {
  double min_cross_gap = 0.0;  // across wells, eigenvalues in [mu-eps, mu+eps]
  double min_dist_mu = 0.0;    // any well eigenvalue to mu
  double threshold = 0.0;      // delta_sep(hbar) = hbar^3
  bool pass_cross = false;
  bool pass_mu = false;
  bool pass() const { return pass_cross && pass_mu; }

  // retained per-well decompositions for downstream reuse
  std::vector<std::shared_ptr<const SpectralDecomposition>> well_decs;
};

SeparationReport separation_report(const WellFamily& family, double hbar);

struct DecompositionError {
  double kernel_frobenius = 0.0;  // dx-weighted ||K - sum K_j||_F
  std::vector<double> commutator_norms;  // ||[Pi_i, Pi_j]||, i < j
  int rank_full = 0;
  std::vector<int> ranks;
  bool rank_additive = false;
};

/// Frobenius error of the kernel decomposition and pairwise projector
/// commutators. SeparationFailed when called on a failing family.
DecompositionError projector_decomposition_error(const WellFamily& family,
                                                 double hbar);

struct MulticutVarianceReport {
  double var_full = 0.0;
  double var_sum_wells = 0.0;
  double sigma2_sum_classical = 0.0;
  double log_laplace_full = 0.0;
  double log_laplace_sum = 0.0;
  double eta = 0.0;
};

MulticutVarianceReport multicut_variance_check(const WellFamily& family,
                                               double hbar,
                                               const TestFunction& f,
                                               double eta = 0.2);

struct ResonanceScanRow {
  double hbar = 0.0;
  int draw = 0;
  bool pass = false;
  double min_cross_gap = 0.0;
  double min_dist_mu = 0.0;
};

struct ResonanceScan {
  std::vector<double> hbars;
  std::vector<double> pass_rate;
  std::vector<ResonanceScanRow> rows;
};

/// Draws w uniformly in [-eps, eps]^ell (counter RNG keyed on (seed, hbar
/// index, draw)) and reports the separation pass rate per hbar.
ResonanceScan resonance_scan(const Potential& V, const Grid& grid, double mu,
                             double eps, int ell,
                             const std::vector<double>& hbars, int draws,
                             std::uint64_t seed);

}  // namespace ff

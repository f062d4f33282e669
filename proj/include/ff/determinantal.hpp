#pragma once

#include <complex>
#include <string>
#include <vector>

#include "ff/classical_variance.hpp"
#include "ff/spectral.hpp"
#include "ff/test_function.hpp"

namespace ff {

/// tr(f Pi) = sum_{j<N} sum_i f(x_i) phi_j(x_i)^2 dx.
double linear_statistic_mean(const Projector& P, const TestFunction& f);

struct ExactVariance {
  double value = 0.0;            // tr(f^2 Pi) - tr(f Pi f Pi)
  double commutator_form = 0.0;  // (1/2) ||[Pi, f]||_HS^2
  double consistency_gap = 0.0;
};

/// Both the trace expression and the commutator Hilbert-Schmidt form; the two
/// evaluation orders must agree to 1e-10 (relative to the trace scale).
ExactVariance exact_variance_detailed(const Projector& P,
                                      const TestFunction& f);
double exact_variance(const Projector& P, const TestFunction& f);

/// log det(I_N + Phi^T (e^{eta f} - 1) Phi dx). SymbolTooLarge when
/// ||e^{eta f} - 1||_inf >= 1 on the grid.
std::complex<double> log_laplace(const Projector& P, const TestFunction& f,
                                 std::complex<double> eta);

struct Cumulants {
  double k1 = 0.0;       // exact trace
  double k2_exact = 0.0; // exact trace/commutator form
  double k2_fd = 0.0;    // finite-difference cross-check
  double k3 = 0.0, k4 = 0.0;
  double k3_err = 0.0, k4_err = 0.0;  // Richardson step-halving estimates
  double eta_step = 0.0;
};

/// k1, k2 exact; k3, k4 by 5-point central differences of eta -> log_laplace
/// with a step-halving error estimate.
Cumulants cumulants(const Projector& P, const TestFunction& f,
                    double eta_step = 0.05);

/// Full per-(hbar, f) report including the classical variance predictions and
/// the Szego residual sup_{|eta|<=eta_max} |log_laplace - eta k1 -
/// eta^2 Sigma^2/2| over a 13-point eta grid.
struct CumulantReport {
  double hbar = 0.0;
  std::string f_id;
  Cumulants kappa;
  double sigma2_fourier = 0.0;
  double sigma2_devinatz = 0.0;
  double sigma2_gff = 0.0;
  double szego_residual = 0.0;
};

CumulantReport make_cumulant_report(const Projector& P, const TestFunction& f,
                                    const Potential& V, double eta_step = 0.05,
                                    double eta_max = 0.3);

/// sup over the 12-point eta grid {+-k eta_max/6} of
/// |log_laplace - eta k1 - eta^2 sigma2 / 2|.
double szego_residual(const Projector& P, const TestFunction& f, double k1,
                      double sigma2, double eta_max = 0.3);

/// Renormalized log-determinant coefficients
/// Upsilon^n = (-1)^n/n [tr(Pi A^n Pi) - tr((Pi A Pi)^n)] for a multiplication
/// symbol A = diag(a(x_i)), computed in the retained eigenbasis window.
struct UpsilonSeries {
  std::vector<double> coeffs;  // n = 2 .. n_max (index n-2)
  double rho = 0.0;            // operator norm estimate (power iteration)
  double comm_hs2 = 0.0;       // ||[Pi, A]||_HS^2 (grid-exact)
  double tail_energy = 0.0;    // Parseval deficit of the basis truncation

  double sum() const {
    double s = 0.0;
    for (double u : coeffs) s += u;
    return s;
  }
};

UpsilonSeries upsilon_coefficients(const Projector& P,
                                   const std::vector<double>& symbol_values,
                                   int n_max);

/// Band of matrix elements A_jk = <phi_j, f phi_k> for j,k in
/// [window_lo, window_hi], |j-k| <= band. The band is doubled while the
/// off-band edge exceeds 1e-6 (band decay invariant).
struct MatrixElements {
  int window_lo = 0, window_hi = 0;
  int band = 0;
  Eigen::MatrixXd entries;  // dense (w x w) block, w = window size
  double hermiticity_residual = 0.0;
  double offband_edge = 0.0;

  double at(int j, int k) const {
    return entries(j - window_lo, k - window_lo);
  }
};

MatrixElements matrix_elements(const SpectralDecomposition& dec,
                               const TestFunction& f, int window_lo,
                               int window_hi, int band);

/// Max over the Fermi window (j,k in N +/- 5, |j-k| <= band) of
/// |A_jk - a_{k-j}(g^{-1}((j+k) hbar / 2))|.
double toeplitz_deviation(const SpectralDecomposition& dec,
                          const TestFunction& f, const Potential& V, double mu,
                          int band);

/// Cov(X(1_{<=x}), X(1_{<=z})) by exact traces with half-open grid masks.
double counting_covariance(const Projector& P, double x, double z);

}  // namespace ff

#pragma once

#include <Eigen/Dense>
#include <memory>

#include "ff/grid.hpp"
#include "ff/potential.hpp"

namespace ff {

/// Symmetric tridiagonal discretization of -hbar^2 d2/dx2 + V with Dirichlet
/// boundary conditions (three-point stencil).
struct TridiagonalHamiltonian {
  Grid grid;
  double hbar = 0.0;
  Eigen::VectorXd diag;  // 2 hbar^2/dx^2 + V(x_i)
  Eigen::VectorXd off;   // -hbar^2/dx^2 (n-1 entries)
};

/// Builds the stencil; rejects boxes where V(x_min) or V(x_max) stays below
/// mu_max + margin (truncation would distort the low spectrum).
TridiagonalHamiltonian discretize_hamiltonian(const Grid& grid,
                                              const Potential& V, double hbar,
                                              double mu_max,
                                              double margin = 2.0);

/// Eigenpairs with lambda <= lambda_cap. Eigenfunction column j samples
/// phi_j on the grid, normalized to sum phi^2 dx = 1, sign fixed so phi_j > 0
/// at the last grid point where |phi_j| exceeds 1e-3 of its max.
class SpectralDecomposition {
 public:
  double hbar = 0.0;
  double lambda_cap = 0.0;
  Grid grid;
  std::vector<double> eigenvalues;    // ascending
  Eigen::MatrixXd eigenfunctions;     // n x m, column j = phi_j

  int count() const { return static_cast<int>(eigenvalues.size()); }
};

SpectralDecomposition eigendecompose(const TridiagonalHamiltonian& H,
                                     double lambda_cap);

/// Rank-N spectral projector onto {lambda <= mu}. Holds a reference to its
/// decomposition; immutable and cheap to copy.
class Projector {
 public:
  Projector(std::shared_ptr<const SpectralDecomposition> dec, double mu, int N)
      : dec_(std::move(dec)), mu_(mu), N_(N) {}

  int rank() const { return N_; }
  double mu() const { return mu_; }
  double hbar() const { return dec_->hbar; }
  double dx() const { return dec_->grid.dx; }
  const Grid& grid() const { return dec_->grid; }
  const SpectralDecomposition& decomposition() const { return *dec_; }

  /// n x N view of the occupied eigenfunction columns.
  using ColumnsView =
      Eigen::Block<const Eigen::MatrixXd, Eigen::Dynamic, Eigen::Dynamic, true>;
  ColumnsView columns() const { return dec_->eigenfunctions.leftCols(N_); }

 private:
  std::shared_ptr<const SpectralDecomposition> dec_;
  double mu_;
  int N_;
};

/// gap_tol = 1e-3 hbar: rejects mu within gap_tol of an eigenvalue
/// (AmbiguousFermiLevel); the caller may re-place mu with
/// nudge_to_gap_midpoint.
Projector spectral_projector(std::shared_ptr<const SpectralDecomposition> dec,
                             double mu);

/// Midpoint of the spectral gap enclosing or adjacent to mu.
double nudge_to_gap_midpoint(const SpectralDecomposition& dec, double mu);

/// Weyl particle count (1/(pi hbar)) int (mu - V)_+^{1/2} dx, summed over
/// droplet components; 0 when mu < min V.
double weyl_count(const Potential& V, double mu, double hbar);

}  // namespace ff

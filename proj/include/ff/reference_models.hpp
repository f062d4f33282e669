#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "ff/test_function.hpp"

namespace ff {

/// Fourier coefficients f_k, |k| <= K, of a real smooth function on the
/// circle; conjugate-symmetric with tail |f_K| < 1e-10.
class CircleSymbol {
 public:
  static CircleSymbol from_function(const std::function<double(double)>& f,
                                    int K);

  int K() const { return K_; }
  std::complex<double> coeff(int k) const { return coeffs_[k + K_]; }

  /// Evaluates the trigonometric polynomial sum f_k e^{i k theta}.
  double eval(double theta) const;

 private:
  int K_ = 0;
  std::vector<std::complex<double>> coeffs_;
};

/// log det of the N x N Toeplitz matrix of e^f (entries from the FFT of
/// e^{f(theta)}), by pivoted LU.
double toeplitz_log_det(const CircleSymbol& symbol, int N);

/// (1/2) sum_{|k|<=K} |k| f_k f_{-k} — the N-free strong Szego term.
double szego_rhs(const CircleSymbol& symbol);

/// Sigma^2 = sum_k k |f_k|^2 with f_k the Fourier coefficients of
/// theta -> f(cos theta).
double gue_chebyshev_variance(const TestFunction& f);

/// log E[e^{X(f)}] of the CUE linear statistic, from an explicit Fourier-mode
/// projector sampled on a theta grid (independent route to the Toeplitz
/// determinant, exercising det(I + (e^f-1) Pi) = det T_N(e^f)).
double cue_projector_log_laplace(const std::function<double(double)>& f, int N,
                                 int theta_points = 4096);

}  // namespace ff

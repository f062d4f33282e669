#pragma once

#include <complex>
#include <vector>

#include "ff/orbit.hpp"
#include "ff/potential.hpp"
#include "ff/test_function.hpp"

namespace ff {

/// Fourier coefficients of f along the energy-lambda Hamilton flow,
/// a_k = (1/T) int_0^T exp(-2 pi i k t / T) f(psi) dt, for |k| <= K.
struct FlowFourier {
  double action = 0.0;  // I = g(lambda)
  int K = 0;
  std::vector<std::complex<double>> coeffs;  // index k + K, k = -K..K
  double tail = 0.0;                         // |a_K|
  bool truncation_ok = true;                 // tail < 1e-8

  std::complex<double> a(int k) const { return coeffs[k + K]; }
};

/// Computes the flow Fourier coefficients on an M-point angle grid
/// (M >= max(4096, 4K)); K is raised automatically while |a_K| >= 1e-8.
FlowFourier flow_fourier_coefficients(const TestFunction& f,
                                      const Potential& V, double lambda,
                                      int K);

struct VarianceResult {
  double value = 0.0;
  double tail_bound = 0.0;
};

/// Sigma^2 = sum_{k>=1} k |a_k(g(mu))|^2, truncated at K with the tail
/// recorded.
VarianceResult predicted_variance_fourier_detailed(const TestFunction& f,
                                                   const Potential& V,
                                                   double mu, int K = 1024);
double predicted_variance_fourier(const TestFunction& f, const Potential& V,
                                  double mu);

/// (1/2) iint |f(psi(t)) - f(psi(s))|^2 / |e^{it} - e^{is}|^2 dt ds/(2pi)^2 on
/// the angle grid; diagonal handled by the difference-quotient limit
/// |(f o psi)'|^2.
double devinatz_variance(const TestFunction& f, const Potential& V, double mu,
                         int M = 4096);

/// Log-correlated kernel H(x,z) = log|sin((theta_x+theta_z)/2)| -
/// log|sin((theta_x-theta_z)/2)| for x != z strictly inside the droplet.
double gff_kernel(const Potential& V, double mu, double x, double z);

/// (1/2 pi^2) iint f'(x) f'(z) H(x,z) dx dz over the droplet, diagonal strip
/// |x-z| < delta integrated against the local log model. The tensor grid
/// keeps h << delta so the midpoint rule stays accurate next to the strip.
double gff_variance(const TestFunction& f, const Potential& V, double mu,
                    int grid_points = 4000, double delta = 1e-3);

}  // namespace ff

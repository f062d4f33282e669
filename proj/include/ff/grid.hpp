#pragma once

#include <vector>

namespace ff {

/// Uniform interior grid of a Dirichlet-truncated interval. dx acts as the
/// quadrature weight of the discrete L2 inner product everywhere downstream.
struct Grid {
  double x_min = 0.0;
  double x_max = 0.0;
  int n = 0;                    // interior point count
  double dx = 0.0;
  std::vector<double> points;  // x_i = x_min + (i+1) dx, i = 0..n-1
};

/// Interior points only: dx = (x_max - x_min)/(n+1). Rejects n < 16 and
/// degenerate intervals.
Grid build_grid(double x_min, double x_max, int n);

}  // namespace ff

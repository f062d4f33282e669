#pragma once

#include <functional>
#include <vector>

namespace ff {

struct GaussLegendre {
  std::vector<double> nodes;    // on (-1, 1)
  std::vector<double> weights;
};

/// Nodes/weights of the n-point Gauss-Legendre rule (Newton on P_n).
const GaussLegendre& gauss_legendre(int n);

/// Adaptive panel integration of f over [a, b] to relative tolerance rel_tol
/// (absolute floor abs_floor protects integrals near zero).
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double rel_tol = 1e-10,
                          double abs_floor = 1e-300);

}  // namespace ff

#pragma once

#include <utility>
#include <vector>

#include "ff/potential.hpp"

namespace ff {

/// Connected components [a_i, b_i] of {V <= lambda}, found by scanning an
/// automatically expanded box and refining the edges by bisection to
/// |V(x) - lambda| < 1e-12. Empty when lambda < min V.
std::vector<std::pair<double, double>> droplet_components(const Potential& V,
                                                          double lambda);

/// int_a^b sqrt(lambda - V) dx for a single component with V(a)=V(b)=lambda;
/// the inverse-square-root endpoint behaviour is removed by the x = a + s^2
/// (resp. b - s^2) substitution so plain Gauss-Legendre panels apply.
double allowed_region_integral(const Potential& V, double lambda, double a,
                               double b);

}  // namespace ff

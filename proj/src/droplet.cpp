#include "ff/droplet.hpp"

#include <cmath>
#include <stdexcept>

#include "ff/quadrature.hpp"

namespace ff {

namespace {

// Bisection + Newton polish for V(x) = lambda on a bracketing interval.
double refine_edge(const Potential& V, double lambda, double lo, double hi) {
  double flo = V(lo) - lambda;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double fm = V(mid) - lambda;
    if (std::abs(fm) < 1e-13 || hi - lo < 1e-15 * (1.0 + std::abs(mid))) {
      // Newton polish
      double x = mid;
      for (int k = 0; k < 4; ++k) {
        double d = V.deriv(x);
        if (std::abs(d) < 1e-14) break;
        x -= (V(x) - lambda) / d;
      }
      if (std::abs(V(x) - lambda) <= std::abs(fm)) return x;
      return mid;
    }
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::vector<std::pair<double, double>> droplet_components(const Potential& V,
                                                          double lambda) {
  // expand the scan box until V > lambda + 1 at both ends (confinement)
  double L = 1.0;
  while ((V(-L) <= lambda + 1.0 || V(L) <= lambda + 1.0) && L < 1e6) L *= 2.0;
  if (L >= 1e6)
    throw std::invalid_argument(
        "droplet_components: potential not confining above lambda");

  const int n_scan = 16384;
  std::vector<std::pair<double, double>> comps;
  double xprev = -L, fprev = V(xprev) - lambda;
  double open_at = 0.0;
  bool open = fprev <= 0.0;
  if (open) open_at = xprev;
  for (int i = 1; i <= n_scan; ++i) {
    double x = -L + 2.0 * L * i / n_scan;
    double f = V(x) - lambda;
    if (!open && f <= 0.0) {
      open_at = refine_edge(V, lambda, xprev, x);
      open = true;
    } else if (open && f > 0.0) {
      comps.emplace_back(open_at, refine_edge(V, lambda, xprev, x));
      open = false;
    }
    xprev = x;
    fprev = f;
  }
  if (open) comps.emplace_back(open_at, L);
  return comps;
}

double allowed_region_integral(const Potential& V, double lambda, double a,
                               double b) {
  if (!(a < b)) return 0.0;
  double mid = 0.5 * (a + b);
  // left half: x = a + s^2, integrand 2 s^2 sqrt((lambda - V)/s^2)
  auto left = [&](double s) {
    double x = a + s * s;
    double q;
    if (s < 1e-8) {
      q = std::abs(V.deriv(a));
    } else {
      q = (lambda - V(x)) / (s * s);
      if (q < 0.0) q = 0.0;
    }
    return 2.0 * s * s * std::sqrt(q);
  };
  auto right = [&](double s) {
    double x = b - s * s;
    double q;
    if (s < 1e-8) {
      q = std::abs(V.deriv(b));
    } else {
      q = (lambda - V(x)) / (s * s);
      if (q < 0.0) q = 0.0;
    }
    return 2.0 * s * s * std::sqrt(q);
  };
  double I = integrate_adaptive(left, 0.0, std::sqrt(mid - a), 1e-11) +
             integrate_adaptive(right, 0.0, std::sqrt(b - mid), 1e-11);
  return I;
}

}  // namespace ff

#include "ff/quadrature.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace ff {

const GaussLegendre& gauss_legendre(int n) {
  static std::map<int, GaussLegendre> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  GaussLegendre gl;
  gl.nodes.resize(n);
  gl.weights.resize(n);
  const double eps = 1e-15;
  int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev initial guess, Newton iteration on P_n
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < eps) break;
    }
    gl.nodes[i] = -z;
    gl.nodes[n - 1 - i] = z;
    gl.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    gl.weights[n - 1 - i] = gl.weights[i];
  }
  return cache.emplace(n, std::move(gl)).first->second;
}

namespace {

double panel(const std::function<double(double)>& f, double a, double b,
             const GaussLegendre& gl) {
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t i = 0; i < gl.nodes.size(); ++i)
    s += gl.weights[i] * f(c + h * gl.nodes[i]);
  return s * h;
}

double refine(const std::function<double(double)>& f, double a, double b,
              double whole, double tol, const GaussLegendre& gl, int depth) {
  double c = 0.5 * (a + b);
  double left = panel(f, a, c, gl);
  double right = panel(f, c, b, gl);
  double err = std::abs(left + right - whole);
  // stop on the requested tolerance, the roundoff floor of the panel pair,
  // or the depth cap (the floor keeps the recursion from exploding once
  // improvements are no longer representable)
  double floor = 32.0 * 1e-16 * (std::abs(left) + std::abs(right));
  if (err < std::max(tol, floor) || depth >= 20) return left + right;
  double child_tol = std::max(0.5 * tol, floor);
  return refine(f, a, c, left, child_tol, gl, depth + 1) +
         refine(f, c, b, right, child_tol, gl, depth + 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double rel_tol, double abs_floor) {
  if (!(a < b)) {
    if (a == b) return 0.0;
    return -integrate_adaptive(f, b, a, rel_tol, abs_floor);
  }
  const GaussLegendre& gl = gauss_legendre(32);
  double whole = panel(f, a, b, gl);
  double tol = std::max(std::abs(whole) * rel_tol, abs_floor);
  return refine(f, a, b, whole, tol, gl, 0);
}

}  // namespace ff

#include "ff/orbit.hpp"

#include <cmath>
#include <stdexcept>

#include "ff/droplet.hpp"
#include "ff/errors.hpp"
#include "ff/quadrature.hpp"

namespace ff {

std::pair<double, double> turning_points(const Potential& V, double lambda) {
  auto comps = droplet_components(V, lambda);
  if (comps.empty())
    throw std::invalid_argument(
        "turning_points: {V <= lambda} is empty (lambda below min V)");
  if (comps.size() > 1)
    throw MultiCutDetected(lambda, static_cast<int>(comps.size()));
  auto [a, b] = comps.front();
  if (std::abs(V.deriv(a)) < 1e-6) throw DegenerateEdge(a, V.deriv(a));
  if (std::abs(V.deriv(b)) < 1e-6) throw DegenerateEdge(b, V.deriv(b));
  return {a, b};
}

namespace {

// int over one half of the orbit of dx / sqrt(lambda - V) with the
// turning-point substitution. side = -1: x = a + s^2; side = +1: x = b - s^2.
double time_integral(const Potential& V, double lambda, double edge,
                     double inner, int side) {
  double smax = std::sqrt(std::abs(inner - edge));
  auto f = [&](double s) {
    double x = edge - side * s * s;
    double q;
    if (s < 1e-9) {
      q = std::abs(V.deriv(edge));
    } else {
      q = (lambda - V(x)) / (s * s);
      if (q <= 0.0) q = std::abs(V.deriv(edge));
    }
    return 2.0 / std::sqrt(q);
  };
  return integrate_adaptive(f, 0.0, smax, 1e-10);
}

}  // namespace

double period(const Potential& V, double lambda) {
  auto [a, b] = turning_points(V, lambda);
  double mid = 0.5 * (a + b);
  return time_integral(V, lambda, a, mid, -1) +
         time_integral(V, lambda, b, mid, +1);
}

double action(const Potential& V, double lambda) {
  auto comps = droplet_components(V, lambda);
  if (comps.empty()) return 0.0;
  if (comps.size() > 1)
    throw MultiCutDetected(lambda, static_cast<int>(comps.size()));
  auto [a, b] = comps.front();
  return allowed_region_integral(V, lambda, a, b) / M_PI;
}

namespace {

// KDK leapfrog over n_steps of size dt; returns max |H - H0| checked every
// few steps.
double leapfrog_run(const Potential& V, double& x, double& xi, double dt,
                    long n_steps) {
  const double H0 = xi * xi + V(x);
  double max_dev = 0.0;
  for (long s = 0; s < n_steps; ++s) {
    xi -= 0.5 * dt * V.deriv(x);
    x += 2.0 * dt * xi;
    xi -= 0.5 * dt * V.deriv(x);
    if ((s & 63) == 0 || s == n_steps - 1) {
      double dev = std::abs(xi * xi + V(x) - H0);
      if (dev > max_dev) max_dev = dev;
    }
  }
  return max_dev;
}

}  // namespace

std::pair<double, double> integrate_flow(const Potential& V, double x0,
                                         double xi0, double t,
                                         double energy_tol) {
  if (t == 0.0) return {x0, xi0};
  long n_steps = 20000;
  for (int attempt = 0; attempt < 8; ++attempt) {
    double x = x0, xi = xi0;
    double dev = leapfrog_run(V, x, xi, t / n_steps, n_steps);
    if (dev < energy_tol || attempt == 7) return {x, xi};
    n_steps *= 2;
  }
  return {x0, xi0};  // unreachable
}

double flow_return_time(const Potential& V, double lambda) {
  auto [a, b] = turning_points(V, lambda);
  double T0 = period(V, lambda);
  // integrate past one period; xi rises back through 0 at t = T/2 (left
  // turn) and falls through 0 at t = T (back at x_plus)
  const long n_per = 1 << 20;
  const double dt = T0 / n_per;
  double x = b, xi = 0.0;
  long steps = 0;
  double prev_xi = 0.0;
  for (; steps < 2 * n_per; ++steps) {
    prev_xi = xi;
    xi -= 0.5 * dt * V.deriv(x);
    x += 2.0 * dt * xi;
    xi -= 0.5 * dt * V.deriv(x);
    if (steps > n_per / 2 && prev_xi > 0.0 && xi <= 0.0) break;
  }
  // linear interpolation of the zero crossing of xi
  double frac = (prev_xi - xi) != 0.0 ? prev_xi / (prev_xi - xi) : 0.5;
  return (steps + frac) * dt;
}

OrbitData angle_parametrization(const Potential& V, double mu, int M) {
  if (M < 256 || (M & (M - 1)) != 0)
    throw std::invalid_argument(
        "angle_parametrization: M must be a power of two >= 256");
  auto [a, b] = turning_points(V, mu);
  OrbitData orb;
  orb.lambda = mu;
  orb.x_minus = a;
  orb.x_plus = b;
  orb.period = period(V, mu);
  orb.action = action(V, mu);
  orb.psi_samples.resize(M);

  long n_sub = std::max(1L, (1L << 20) / M);
  for (int attempt = 0; attempt < 3; ++attempt) {
    const double dt = orb.period / (static_cast<double>(M) * n_sub);
    double x = b, xi = 0.0;
    const double H0 = xi * xi + V(x);
    double max_dev = 0.0;
    for (int m = 0; m < M; ++m) {
      orb.psi_samples[m] = x;
      for (long s = 0; s < n_sub; ++s) {
        xi -= 0.5 * dt * V.deriv(x);
        x += 2.0 * dt * xi;
        xi -= 0.5 * dt * V.deriv(x);
      }
      double dev = std::abs(xi * xi + V(x) - H0);
      if (dev > max_dev) max_dev = dev;
    }
    if (max_dev < 1e-9) break;
    n_sub *= 4;
  }
  return orb;
}

double theta_map(const Potential& V, double mu, double x) {
  auto [a, b] = turning_points(V, mu);
  return theta_map(V, mu, x, a, b, period(V, mu));
}

double theta_map(const Potential& V, double mu, double x, double a, double b,
                 double T) {
  const double slack = 1e-12 * (1.0 + std::abs(a) + std::abs(b));
  if (x < a - slack || x > b + slack) throw OutOfDroplet(x);
  x = std::min(std::max(x, a), b);
  double mid = 0.5 * (a + b);
  if (x >= mid) {
    // theta = (pi/T) int_x^b du/sqrt(mu-V), u = b - s^2
    double smax = std::sqrt(b - x);
    auto f = [&](double s) {
      double u = b - s * s;
      double q = (s < 1e-9) ? std::abs(V.deriv(b)) : (mu - V(u)) / (s * s);
      if (q <= 0.0) q = std::abs(V.deriv(b));
      return 2.0 / std::sqrt(q);
    };
    return M_PI / T * integrate_adaptive(f, 0.0, smax, 1e-11);
  }
  // theta = pi - (pi/T) int_a^x du/sqrt(mu-V), u = a + s^2
  double smax = std::sqrt(x - a);
  auto f = [&](double s) {
    double u = a + s * s;
    double q = (s < 1e-9) ? std::abs(V.deriv(a)) : (mu - V(u)) / (s * s);
    if (q <= 0.0) q = std::abs(V.deriv(a));
    return 2.0 / std::sqrt(q);
  };
  return M_PI - M_PI / T * integrate_adaptive(f, 0.0, smax, 1e-11);
}

double invert_action(const Potential& V, double target_action,
                     double lambda_hint) {
  // bracket: walk down for lo, up for hi
  double hi = lambda_hint;
  for (int k = 0; k < 200 && action(V, hi) < target_action; ++k)
    hi += 0.25 * (1.0 + std::abs(hi));
  double lo = lambda_hint;
  while (true) {
    auto comps = droplet_components(V, lo);
    if (comps.empty()) break;  // below min V: action 0 < target
    if (action(V, lo) < target_action) break;
    lo -= 0.25 * (1.0 + std::abs(lo));
  }
  for (int it = 0; it < 200; ++it) {
    double midl = 0.5 * (lo + hi);
    double g;
    try {
      g = action(V, midl);
    } catch (const std::invalid_argument&) {
      g = 0.0;
    }
    if (g < target_action)
      lo = midl;
    else
      hi = midl;
    if (hi - lo < 1e-12 * (1.0 + std::abs(hi))) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace ff

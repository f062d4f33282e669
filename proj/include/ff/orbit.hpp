#pragma once

#include <utility>
#include <vector>

#include "ff/potential.hpp"

namespace ff {

/// Classical data of the energy-lambda orbit of H(x,xi) = xi^2 + V(x).
/// psi_samples holds psi(theta_m) at theta_m = 2 pi m / M: the position of
/// the flow started at the right turning point, in normalized time.
struct OrbitData {
  double lambda = 0.0;
  double x_minus = 0.0, x_plus = 0.0;
  double period = 0.0;    // T(lambda)
  double action = 0.0;    // g(lambda)
  std::vector<double> psi_samples;
};

/// Roots of V(x) = lambda bracketing the single classically allowed interval.
/// MultiCutDetected when {V <= lambda} has several components, DegenerateEdge
/// when |V'| < 1e-6 at a root.
std::pair<double, double> turning_points(const Potential& V, double lambda);

/// T(lambda) = int dx / sqrt(lambda - V), endpoint singularity removed by the
/// x = x_pm -/+ s^2 substitution; relative accuracy ~1e-9.
double period(const Potential& V, double lambda);

/// g(lambda) = (1/pi) int (lambda - V)_+^{1/2} dx.
double action(const Potential& V, double lambda);

/// Fixed-step leapfrog for dx/dt = 2 xi, dxi/dt = -V'(x); the step is halved
/// until the energy drift over the whole span is < energy_tol.
std::pair<double, double> integrate_flow(const Potential& V, double x0,
                                         double xi0, double t,
                                         double energy_tol = 1e-9);

/// Return time to the starting point (x_plus, 0): integrates one orbit and
/// locates the xi sign change by bisection. Independent oracle for period().
double flow_return_time(const Potential& V, double lambda);

/// Samples psi(theta_m), m = 0..M-1, by the leapfrog flow. M must be a power
/// of two >= 256.
OrbitData angle_parametrization(const Potential& V, double mu, int M);

/// theta(x) = (pi/T) int_x^{x_plus} du / sqrt(mu - V(u)); theta(x_plus) = 0,
/// theta(x_minus) = pi. OutOfDroplet outside [x_minus, x_plus].
double theta_map(const Potential& V, double mu, double x);

/// Same with precomputed turning points and period (batch evaluation).
double theta_map(const Potential& V, double mu, double x, double x_minus,
                 double x_plus, double T);

/// Monotone-bisection inverse of lambda -> g(lambda).
double invert_action(const Potential& V, double target_action,
                     double lambda_hint);

}  // namespace ff

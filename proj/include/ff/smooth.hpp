#pragma once

#include <cmath>

namespace ff {

// C-infinity step: 0 for u <= 0, 1 for u >= 1, based on exp(-1/u).
inline double smooth_step(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  double a = std::exp(-1.0 / u);
  double b = std::exp(-1.0 / (1.0 - u));
  return a / (a + b);
}

inline double smooth_step_deriv(double u) {
  if (u <= 0.0 || u >= 1.0) return 0.0;
  double a = std::exp(-1.0 / u);
  double b = std::exp(-1.0 / (1.0 - u));
  double ap = a / (u * u);
  double bp = -b / ((1.0 - u) * (1.0 - u));
  double s = a + b;
  return (ap * s - a * (ap + bp)) / (s * s);
}

// C2 monotone quintic step: 0 at 0, 1 at 1, zero first/second derivatives at
// both ends.
inline double quintic_step(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  return u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
}

inline double quintic_step_deriv(double u) {
  if (u <= 0.0 || u >= 1.0) return 0.0;
  return 30.0 * u * u * (1.0 - u) * (1.0 - u);
}

}  // namespace ff

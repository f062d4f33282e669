#pragma once

#include <memory>
#include <string>
#include <vector>

namespace ff {

/// Smooth bump cutoff: chi = 1 on [lo, hi], 0 outside [lo-margin, hi+margin],
/// C-infinity transitions. Used by the multicut-perturbed potential.
struct Bump {
  double weight = 0.0;
  double lo = 0.0, hi = 0.0;
  double margin = 0.0;

  double chi(double x) const;
  double chi_deriv(double x) const;
};

/// Confining potential with analytic derivative. Value type; cheap to copy.
///
/// Kinds: harmonic (x^2), double_well (x^4 - x^2), quartic (x^4),
/// custom_polynomial, multicut_perturbed (base + sum w_j chi_j), and
/// localized single-well variants used by the multicut module.
class Potential {
 public:
  static Potential harmonic();
  static Potential double_well();
  static Potential quartic();
  static Potential polynomial(std::vector<double> coeffs);  // a0 + a1 x + ...

  /// base + sum_j w_j chi_j (the multicut_perturbed kind).
  Potential with_bumps(std::vector<Bump> bumps) const;

  /// Follows this potential on [keep_lo, keep_hi]; rises through C2 monotone
  /// quintic bridges (one width per side) to a constant plateau beyond.
  Potential localized(double keep_lo, double keep_hi, double bridge_lo_width,
                      double bridge_hi_width, double plateau) const;

  double value(double x) const;
  double deriv(double x) const;
  double operator()(double x) const { return value(x); }

  const std::string& kind() const;

 private:
  struct Impl;
  explicit Potential(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

}  // namespace ff

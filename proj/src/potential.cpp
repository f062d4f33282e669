#include "ff/potential.hpp"

#include <cmath>
#include <stdexcept>

#include "ff/smooth.hpp"

namespace ff {

double Bump::chi(double x) const {
  if (margin <= 0.0) throw std::invalid_argument("Bump: margin must be > 0");
  if (x < lo) return smooth_step((x - (lo - margin)) / margin);
  if (x > hi) return 1.0 - smooth_step((x - hi) / margin);
  return 1.0;
}

double Bump::chi_deriv(double x) const {
  if (x < lo) return smooth_step_deriv((x - (lo - margin)) / margin) / margin;
  if (x > hi) return -smooth_step_deriv((x - hi) / margin) / margin;
  return 0.0;
}

struct Potential::Impl {
  enum class Kind { Polynomial, Perturbed, Localized } tag = Kind::Polynomial;
  std::string name;

  // Polynomial
  std::vector<double> coeffs;

  // Perturbed / Localized
  std::shared_ptr<const Impl> base;
  std::vector<Bump> bumps;

  // Localized
  double keep_lo = 0.0, keep_hi = 0.0;
  double bridge_lo = 0.0, bridge_hi = 0.0;
  double plateau = 0.0;

  double value(double x) const {
    switch (tag) {
      case Kind::Polynomial: {
        double v = 0.0;
        for (std::size_t i = coeffs.size(); i-- > 0;) v = v * x + coeffs[i];
        return v;
      }
      case Kind::Perturbed: {
        double v = base->value(x);
        for (const auto& b : bumps) v += b.weight * b.chi(x);
        return v;
      }
      case Kind::Localized: {
        if (x >= keep_lo && x <= keep_hi) return base->value(x);
        double u = (x > keep_hi) ? (x - keep_hi) / bridge_hi
                                 : (keep_lo - x) / bridge_lo;
        if (u >= 1.0) return plateau;
        double s = quintic_step(u);
        return (1.0 - s) * base->value(x) + s * plateau;
      }
    }
    return 0.0;
  }

  double deriv(double x) const {
    switch (tag) {
      case Kind::Polynomial: {
        double v = 0.0;
        for (std::size_t i = coeffs.size(); i-- > 1;)
          v = v * x + coeffs[i] * static_cast<double>(i);
        return v;
      }
      case Kind::Perturbed: {
        double v = base->deriv(x);
        for (const auto& b : bumps) v += b.weight * b.chi_deriv(x);
        return v;
      }
      case Kind::Localized: {
        if (x >= keep_lo && x <= keep_hi) return base->deriv(x);
        double u, du;
        if (x > keep_hi) {
          u = (x - keep_hi) / bridge_hi;
          du = 1.0 / bridge_hi;
        } else {
          u = (keep_lo - x) / bridge_lo;
          du = -1.0 / bridge_lo;
        }
        if (u >= 1.0) return 0.0;
        double s = quintic_step(u);
        double sp = quintic_step_deriv(u) * du;
        return (1.0 - s) * base->deriv(x) + sp * (plateau - base->value(x));
      }
    }
    return 0.0;
  }
};

Potential Potential::harmonic() {
  auto impl = std::make_shared<Impl>();
  impl->coeffs = {0, 0, 1};
  impl->name = "harmonic";
  return Potential(std::move(impl));
}

Potential Potential::double_well() {
  auto impl = std::make_shared<Impl>();
  impl->coeffs = {0, 0, -1, 0, 1};
  impl->name = "double_well";
  return Potential(std::move(impl));
}

Potential Potential::quartic() {
  auto impl = std::make_shared<Impl>();
  impl->coeffs = {0, 0, 0, 0, 1};
  impl->name = "quartic";
  return Potential(std::move(impl));
}

Potential Potential::polynomial(std::vector<double> coeffs) {
  if (coeffs.empty())
    throw std::invalid_argument("Potential::polynomial: empty coefficients");
  auto impl = std::make_shared<Impl>();
  impl->coeffs = std::move(coeffs);
  impl->name = "custom_polynomial";
  return Potential(std::move(impl));
}

Potential Potential::with_bumps(std::vector<Bump> bumps) const {
  auto impl = std::make_shared<Impl>();
  impl->tag = Impl::Kind::Perturbed;
  impl->base = impl_;
  impl->bumps = std::move(bumps);
  impl->name = "multicut_perturbed";
  return Potential(std::move(impl));
}

Potential Potential::localized(double keep_lo, double keep_hi,
                               double bridge_lo_width, double bridge_hi_width,
                               double plateau) const {
  if (!(keep_lo < keep_hi) || bridge_lo_width <= 0.0 || bridge_hi_width <= 0.0)
    throw std::invalid_argument("Potential::localized: bad geometry");
  auto impl = std::make_shared<Impl>();
  impl->tag = Impl::Kind::Localized;
  impl->base = impl_;
  impl->keep_lo = keep_lo;
  impl->keep_hi = keep_hi;
  impl->bridge_lo = bridge_lo_width;
  impl->bridge_hi = bridge_hi_width;
  impl->plateau = plateau;
  impl->name = "localized";
  return Potential(std::move(impl));
}

double Potential::value(double x) const { return impl_->value(x); }
double Potential::deriv(double x) const { return impl_->deriv(x); }
const std::string& Potential::kind() const { return impl_->name; }

}  // namespace ff

#include "ff/test_function.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ff/smooth.hpp"

namespace ff {

namespace {
double poly_val(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
  return v;
}
double poly_der(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (std::size_t i = c.size(); i-- > 1;)
    v = v * x + c[i] * static_cast<double>(i);
  return v;
}
}  // namespace

TestFunction TestFunction::polynomial(std::vector<double> coeffs) {
  if (coeffs.empty())
    throw std::invalid_argument("TestFunction::polynomial: empty coefficients");
  TestFunction f;
  f.kind_ = Kind::Poly;
  f.coeffs_ = std::move(coeffs);
  std::ostringstream os;
  os << "poly";
  for (double c : f.coeffs_) os << "_" << c;
  f.id_ = os.str();
  return f;
}

TestFunction TestFunction::gaussian_bump(double amp, double center,
                                         double width) {
  if (width <= 0.0)
    throw std::invalid_argument("TestFunction::gaussian_bump: width <= 0");
  TestFunction f;
  f.kind_ = Kind::Bump;
  f.amp_ = amp;
  f.center_ = center;
  f.width_ = width;
  std::ostringstream os;
  os << "bump_" << amp << "_" << center << "_" << width;
  f.id_ = os.str();
  return f;
}

TestFunction TestFunction::windowed_polynomial(std::vector<double> coeffs,
                                               double plateau, double support) {
  if (coeffs.empty() || !(0.0 < plateau && plateau < support))
    throw std::invalid_argument(
        "TestFunction::windowed_polynomial: need coeffs and 0 < plateau < "
        "support");
  TestFunction f;
  f.kind_ = Kind::WindowedPoly;
  f.coeffs_ = std::move(coeffs);
  f.plateau_ = plateau;
  f.support_ = support;
  std::ostringstream os;
  os << "wpoly";
  for (double c : f.coeffs_) os << "_" << c;
  os << "_win_" << plateau << "_" << support;
  f.id_ = os.str();
  return f;
}

double TestFunction::value(double x) const {
  switch (kind_) {
    case Kind::Poly:
      return poly_val(coeffs_, x);
    case Kind::Bump: {
      double t = (x - center_) / width_;
      return amp_ * std::exp(-0.5 * t * t);
    }
    case Kind::WindowedPoly: {
      double ax = std::abs(x);
      if (ax >= support_) return 0.0;
      double w = 1.0;
      if (ax > plateau_)
        w = 1.0 - smooth_step((ax - plateau_) / (support_ - plateau_));
      return w * poly_val(coeffs_, x);
    }
  }
  return 0.0;
}

double TestFunction::deriv(double x) const {
  switch (kind_) {
    case Kind::Poly:
      return poly_der(coeffs_, x);
    case Kind::Bump: {
      double t = (x - center_) / width_;
      return -amp_ * t / width_ * std::exp(-0.5 * t * t);
    }
    case Kind::WindowedPoly: {
      double ax = std::abs(x);
      if (ax >= support_) return 0.0;
      double w = 1.0, wp = 0.0;
      if (ax > plateau_) {
        double h = support_ - plateau_;
        w = 1.0 - smooth_step((ax - plateau_) / h);
        wp = -smooth_step_deriv((ax - plateau_) / h) / h;
        if (x < 0) wp = -wp;
      }
      return wp * poly_val(coeffs_, x) + w * poly_der(coeffs_, x);
    }
  }
  return 0.0;
}

}  // namespace ff

#pragma once

#include <memory>
#include <string>
#include <vector>

namespace ff {

/// Smooth linear-statistic observable f with analytic derivative.
///
/// Kinds:
///   polynomial    — a0 + a1 x + ...
///   gaussian_bump — amp * exp(-(x-center)^2 / (2 width^2))
///   custom_smooth — polynomial times a C-infinity plateau window
///                   (1 on [-plateau, plateau], 0 outside [-support, support]);
///                   keeps exp(eta f)-1 a valid Laplace symbol on wide boxes
///                   while leaving f untouched on the droplet.
class TestFunction {
 public:
  static TestFunction polynomial(std::vector<double> coeffs);
  static TestFunction gaussian_bump(double amp, double center, double width);
  static TestFunction windowed_polynomial(std::vector<double> coeffs,
                                          double plateau, double support);

  double value(double x) const;
  double deriv(double x) const;
  double operator()(double x) const { return value(x); }

  const std::string& id() const { return id_; }

 private:
  TestFunction() = default;
  enum class Kind { Poly, Bump, WindowedPoly } kind_ = Kind::Poly;
  std::vector<double> coeffs_;
  double amp_ = 0, center_ = 0, width_ = 0;
  double plateau_ = 0, support_ = 0;
  std::string id_;
};

}  // namespace ff

#pragma once

#include <stdexcept>
#include <string>

namespace ff {

// Base for all domain errors so callers can catch everything from this
// library in one clause.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct AmbiguousFermiLevel : Error {
  double mu, nearest_eigenvalue, gap_tol;
  AmbiguousFermiLevel(double mu_, double lam, double tol)
      : Error("AmbiguousFermiLevel: mu=" + std::to_string(mu_) +
              " within gap_tol=" + std::to_string(tol) + " of eigenvalue " +
              std::to_string(lam) + "; nudge mu to the gap midpoint"),
        mu(mu_), nearest_eigenvalue(lam), gap_tol(tol) {}
};

struct MultiCutDetected : Error {
  int components;
  MultiCutDetected(double lambda, int k)
      : Error("MultiCutDetected: {V <= " + std::to_string(lambda) + "} has " +
              std::to_string(k) + " components"),
        components(k) {}
};

struct DegenerateEdge : Error {
  DegenerateEdge(double x, double vp)
      : Error("DegenerateEdge: |V'(" + std::to_string(x) + ")| = " +
              std::to_string(vp) + " < 1e-6 at turning point") {}
};

struct OutOfDroplet : Error {
  explicit OutOfDroplet(double x)
      : Error("OutOfDroplet: x=" + std::to_string(x) +
              " outside [x_minus, x_plus]") {}
};

struct SingularDiagonal : Error {
  SingularDiagonal()
      : Error("SingularDiagonal: |theta(x) - theta(z)| < 1e-10") {}
};

struct SymbolTooLarge : Error {
  double sup_norm;
  explicit SymbolTooLarge(double s)
      : Error("SymbolTooLarge: ||e^{eta f} - 1||_inf = " + std::to_string(s) +
              " >= 1; shrink eta"),
        sup_norm(s) {}
};

struct NormTooLarge : Error {
  double norm;
  explicit NormTooLarge(double s)
      : Error("NormTooLarge: operator norm estimate " + std::to_string(s) +
              " >= 1"),
        norm(s) {}
};

struct NumericalDegeneracy : Error {
  explicit NumericalDegeneracy(double d)
      : Error("NumericalDegeneracy: residual kernel diagonal " +
              std::to_string(d) + " below -1e-10") {}
};

struct NotMultiCut : Error {
  NotMultiCut(int found, int expected)
      : Error("NotMultiCut: found " + std::to_string(found) +
              " droplet components, expected >= " + std::to_string(expected)) {}
};

struct SeparationFailed : Error {
  SeparationFailed()
      : Error("SeparationFailed: well family fails the eigenvalue separation "
              "conditions; decomposition would be meaningless") {}
};

struct EigensolveFailure : Error {
  explicit EigensolveFailure(int info)
      : Error("EigensolveFailure: LAPACK dstevr info=" + std::to_string(info)) {}
};

}  // namespace ff

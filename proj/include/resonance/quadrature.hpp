#pragma once

#include <vector>

namespace resonance::quadrature {

/// Result of a panel-quadrature evaluation: the integral value plus an
/// absolute error estimate (panel-refinement differences, and the explicit
/// tail bound when the upper limit was truncated).
struct QuadratureValue {
  double value = 0.0;
  double error_estimate = 0.0;
};

inline constexpr double kDefaultTol = 1e-10;

/// Upper limits beyond this are truncated; the integrand's tail bound is
/// added to the error estimate. 2^17 keeps the sinc^2 tail below 1e-6.
inline constexpr double kTruncationLimit = 131072.0;

/// sin(pi u)/(pi u), extended by continuity to 1 at u = 0.
double sinc_pi(double u);

/// Integral over [0, x] of (sin(pi u)/(pi u))^2.
QuadratureValue phi(double x, double tol = kDefaultTol);

/// Integral over [0, script_l] of (sin(pi u)/(pi u))^2 e^{-2 pi kappa u}.
QuadratureValue phi2(double script_l, double kappa, double tol = kDefaultTol);

/// Integral over [0, script_l] of
///   sin^2(pi u)/(pi u)^3 * (e^{2 pi kappa u} - 1)/e^{4 pi kappa u}.
QuadratureValue phi3(double script_l, double kappa, double tol = kDefaultTol);

/// Precomputed unit-panel prefix sums of the phi integrand, answering
/// phi(x) queries for x in [0, max_x] with a single partial-panel rule.
/// Values agree with phi() to well below the bound tolerances; the class
/// exists so that dense maximizations over phi arguments stay cheap.
class PhiTable {
public:
  explicit PhiTable(double max_x);

  double max_x() const { return max_x_; }

  /// phi(x) for x in [0, max_x]; throws DomainError outside.
  double operator()(double x) const;

private:
  double max_x_;
  std::vector<double> prefix_; // prefix_[k] = integral over [0, k]
};

} // namespace resonance::quadrature

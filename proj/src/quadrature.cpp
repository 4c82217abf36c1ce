#include "resonance/quadrature.hpp"

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>

#include "resonance/errors.hpp"
#include "resonance/kahan.hpp"

namespace resonance::quadrature {

namespace {

constexpr double kPi = std::numbers::pi;

// 15-point Gauss-Legendre rule on [-1, 1]. One panel spans a single
// period of sin^2(pi u), over which the rule is accurate to rounding.
constexpr std::array<double, 15> kNodes = {
    0.0000000000000000,
    -0.2011940939974345, 0.2011940939974345,
    -0.3941513470775634, 0.3941513470775634,
    -0.5709721726085388, 0.5709721726085388,
    -0.7244177313601701, 0.7244177313601701,
    -0.8482065834104272, 0.8482065834104272,
    -0.9372733924007060, 0.9372733924007060,
    -0.9879925180204854, 0.9879925180204854};
constexpr std::array<double, 15> kWeights = {
    0.2025782419255613,
    0.1984314853271116, 0.1984314853271116,
    0.1861610000155622, 0.1861610000155622,
    0.1662692058169939, 0.1662692058169939,
    0.1395706779261543, 0.1395706779261543,
    0.1071592204671719, 0.1071592204671719,
    0.0703660474881081, 0.0703660474881081,
    0.0307532419961173, 0.0307532419961173};

constexpr int kMaxDepth = 48;

// Below this point the phi3 integrand switches to its Taylor expansion;
// the factor (e^{2 pi kappa u} - 1)/u is a removable 0/0 at the origin.
constexpr double kNearZeroCut = 9.5367431640625e-07; // 2^-20

template <typename F>
double gauss15(const F& f, double a, double b) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (int i = 0; i < 15; ++i) {
    sum += kWeights[i] * f(mid + half * kNodes[i]);
  }
  return half * sum;
}

// Adaptive bisection of one panel: accept when the whole-vs-halves
// difference meets the local budget, otherwise split.
template <typename F>
void integrate_segment(const F& f, double a, double b, double budget,
                       int depth, KahanSum& acc, KahanSum& err) {
  const double whole = gauss15(f, a, b);
  const double mid = 0.5 * (a + b);
  const double halves = gauss15(f, a, mid) + gauss15(f, mid, b);
  const double estimate = std::abs(whole - halves);
  if (estimate <= budget) {
    acc.add(halves);
    err.add(estimate);
    return;
  }
  if (depth >= kMaxDepth) {
    throw ConvergenceError("quadrature panel budget exhausted on [" +
                           std::to_string(a) + ", " + std::to_string(b) +
                           "], residual error " + std::to_string(estimate));
  }
  integrate_segment(f, a, mid, 0.5 * budget, depth + 1, acc, err);
  integrate_segment(f, mid, b, 0.5 * budget, depth + 1, acc, err);
}

// Unit panels [k, k+1] aligned with the zeros of sin(pi u), each refined
// adaptively against an equal share of the total tolerance.
template <typename F>
QuadratureValue integrate_panels(const F& f, double upper, double tol) {
  QuadratureValue result;
  if (upper <= 0.0) {
    return result;
  }
  const std::size_t npanels =
      static_cast<std::size_t>(std::ceil(upper));
  const double budget = tol / static_cast<double>(npanels);
  KahanSum acc;
  KahanSum err;
  for (std::size_t k = 0; k < npanels; ++k) {
    const double a = static_cast<double>(k);
    const double b = std::min(a + 1.0, upper);
    integrate_segment(f, a, b, budget, 0, acc, err);
  }
  result.value = acc.value();
  result.error_estimate = err.value();
  return result;
}

void check_common(double upper, double kappa, double tol, const char* name) {
  if (!(upper >= 0.0)) {
    throw DomainError(std::string(name) + ": upper limit must be >= 0");
  }
  if (!(kappa >= 0.0)) {
    throw DomainError(std::string(name) + ": kappa must be >= 0");
  }
  if (!(tol > 0.0)) {
    throw DomainError(std::string(name) + ": tol must be > 0");
  }
}

double phi3_integrand(double u, double kappa) {
  if (u < kNearZeroCut) {
    const double c = 2.0 * kPi * kappa;
    return c * (1.0 - 3.0 * kPi * kappa * u);
  }
  const double s = sinc_pi(u);
  const double x = 2.0 * kPi * kappa * u;
  return s * s * std::expm1(x) * std::exp(-2.0 * x) / u;
}

} // namespace

double sinc_pi(double u) {
  const double z = kPi * u;
  if (std::abs(z) < 1e-4) {
    const double z2 = z * z;
    return 1.0 - z2 / 6.0 * (1.0 - z2 / 20.0);
  }
  return std::sin(z) / z;
}

QuadratureValue phi(double x, double tol) {
  check_common(x, 0.0, tol, "phi");
  const double upper = std::min(x, kTruncationLimit);
  auto f = [](double u) {
    const double s = sinc_pi(u);
    return s * s;
  };
  QuadratureValue result = integrate_panels(f, upper, tol);
  if (x > kTruncationLimit) {
    result.error_estimate += 1.0 / (kPi * kPi * kTruncationLimit);
  }
  return result;
}

QuadratureValue phi2(double script_l, double kappa, double tol) {
  check_common(script_l, kappa, tol, "phi2");
  const double upper = std::min(script_l, kTruncationLimit);
  auto f = [kappa](double u) {
    const double s = sinc_pi(u);
    return s * s * std::exp(-2.0 * kPi * kappa * u);
  };
  QuadratureValue result = integrate_panels(f, upper, tol);
  if (script_l > kTruncationLimit) {
    // The damping factor is <= 1, so the sinc^2 tail bound still applies.
    result.error_estimate += 1.0 / (kPi * kPi * kTruncationLimit);
  }
  return result;
}

QuadratureValue phi3(double script_l, double kappa, double tol) {
  check_common(script_l, kappa, tol, "phi3");
  const double upper = std::min(script_l, kTruncationLimit);
  auto f = [kappa](double u) { return phi3_integrand(u, kappa); };
  QuadratureValue result = integrate_panels(f, upper, tol);
  if (script_l > kTruncationLimit) {
    // Integrand <= 1/(4 pi^3 u^3): (e^x - 1) e^{-2x} peaks at 1/4.
    result.error_estimate +=
        1.0 / (8.0 * kPi * kPi * kPi * kTruncationLimit * kTruncationLimit);
  }
  return result;
}

PhiTable::PhiTable(double max_x) : max_x_(max_x) {
  if (!(max_x >= 0.0) || max_x > kTruncationLimit) {
    throw DomainError("PhiTable: max_x must lie in [0, " +
                      std::to_string(kTruncationLimit) + "]");
  }
  const std::size_t npanels = static_cast<std::size_t>(std::ceil(max_x));
  prefix_.resize(npanels + 1);
  auto f = [](double u) {
    const double s = sinc_pi(u);
    return s * s;
  };
  KahanSum acc;
  prefix_[0] = 0.0;
  for (std::size_t k = 0; k < npanels; ++k) {
    const double a = static_cast<double>(k);
    acc.add(gauss15(f, a, a + 1.0));
    prefix_[k + 1] = acc.value();
  }
}

double PhiTable::operator()(double x) const {
  if (!(x >= 0.0) || x > max_x_) {
    throw DomainError("PhiTable: argument " + std::to_string(x) +
                      " outside [0, " + std::to_string(max_x_) + "]");
  }
  const double k = std::floor(x);
  const std::size_t idx = static_cast<std::size_t>(k);
  double value = prefix_[idx];
  if (x > k) {
    auto f = [](double u) {
      const double s = sinc_pi(u);
      return s * s;
    };
    value += gauss15(f, k, x);
  }
  return value;
}

} // namespace resonance::quadrature

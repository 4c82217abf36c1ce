#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "resonance/primes.hpp"
#include "resonance/quadrature.hpp"

namespace resonance::resonator {

/// Parameter bundle of the explicit resonator, deterministically derived
/// from (L, h, sign):
///   scriptL = h log L / (2 pi)
///   M       = exp(sqrt(log log L / h))        (lower support cutoff)
///   y       = sqrt(log(h log L) / (h log L))
///   kappa   = log(h log L) / (y h log L)      (equals y identically)
///   alpha   = kappa h
///   Q       = 4 kappa (1-y) h log L / (pi phi3(scriptL; kappa))
struct ResonatorParams {
  std::uint64_t L = 0;
  double h = 0.0;
  int sign = +1;
  double M = 0.0;
  double y = 0.0;
  double kappa = 0.0;
  double alpha = 0.0;
  double Q = 0.0;
  double scriptL = 0.0;
  /// Set when (L, h) falls outside the asymptotically meaningful window
  /// (h log L >= 8 and h log log L <= 1/4). The exact computations remain
  /// well defined; only the asymptotic comparisons lose force.
  bool range_warning = false;
};

/// Requires L >= 16, h > 0 and h log L > 1 (so y and kappa exist).
ResonatorParams derive_params(std::uint64_t L, double h, int sign);

/// f_sign(p) = sign * sqrt(Q) sin((h/2) log p) / (p^{1/2+alpha} h log p).
/// Zero outside (M, L].
double coefficient_at_prime(const ResonatorParams& params, std::uint64_t p);

struct CoefficientEntry {
  std::uint64_t n = 0;
  double value = 0.0;
};

enum class SupportKind { resonator, user };

/// Sparse, sorted support of an arithmetic function: pairs (n, f(n)).
class CoefficientTable {
public:
  CoefficientTable() = default;
  CoefficientTable(std::vector<CoefficientEntry> entries, SupportKind kind);

  const std::vector<CoefficientEntry>& entries() const { return entries_; }
  SupportKind kind() const { return kind_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  /// f(n), zero when n is not in the support.
  double value_at(std::uint64_t n) const;

  /// Text format: one "n value" pair per line, ascending n, values with
  /// 17 significant digits. '#' starts a comment.
  void save(const std::string& path) const;
  static CoefficientTable load(const std::string& path);

private:
  std::vector<CoefficientEntry> entries_;
  SupportKind kind_ = SupportKind::user;
};

inline constexpr std::size_t kDefaultSupportCap = 100'000'000;

/// All n <= L that are squarefree with every prime factor in (M, L],
/// with multiplicative values f(n) accumulated as products along the
/// depth-first enumeration. Includes n = 1 with value 1.
CoefficientTable enumerate_support(const ResonatorParams& params,
                                   const primes::PrimeTable& table,
                                   std::size_t cap = kDefaultSupportCap);

/// The exact resonance quotient
///   (2/pi) sum_{km<=L} Lambda(k)/(sqrt(k) log k) sin((h/2) log k) f(m) f(km)
///     / sum_n f(n)^2
/// for the resonator support, evaluated through the divisor-pair identity:
/// on a squarefree support k must be a prime dividing n = km, so the
/// numerator is (2/pi) sum_n f(n) sum_{p|n} sin((h/2) log p) f(n/p)/sqrt(p).
/// The sign convention lives in the coefficients: flipping the resonator
/// sign negates the quotient.
double resonance_quotient_exact(const CoefficientTable& coeffs,
                                const ResonatorParams& params);

/// Main-term estimate of the quotient with all unspecified error terms
/// set to zero:
///   {phi2(scriptL;kappa) - phi(scriptL) exp(-kappa y h log L)}
///     * sqrt(4 kappa (1-y) / (pi phi3(scriptL;kappa))) * sqrt(h log L).
/// Note kappa y h log L = log(h log L), so the exponential is 1/(h log L).
double prop6_main_term(const ResonatorParams& params);

} // namespace resonance::resonator

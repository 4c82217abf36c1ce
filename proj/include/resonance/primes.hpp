#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace resonance::resonator {
struct ResonatorParams;
}

namespace resonance::primes {

/// Immutable table of all primes up to a limit, built by a segmented
/// sieve. Shareable across threads after construction.
class PrimeTable {
public:
  static constexpr std::uint64_t kMaxLimit = std::uint64_t{1} << 34;

  static PrimeTable build(std::uint64_t limit);

  std::uint64_t limit() const { return limit_; }
  const std::vector<std::uint64_t>& primes() const { return primes_; }
  std::size_t count() const { return primes_.size(); }

  /// The primes in (m_exclusive, l_inclusive].
  std::span<const std::uint64_t> primes_in(double m_exclusive,
                                           std::uint64_t l_inclusive) const;

  /// Visits every prime power p^a <= cap (a >= 1) as fn(k, a, log_p),
  /// where log_p is the von Mangoldt value Lambda(p^a) = log p.
  /// Order: ascending p, then ascending a.
  template <typename F>
  void for_each_prime_power(std::uint64_t cap, F&& fn) const {
    for (std::uint64_t p : primes_) {
      if (p > cap) {
        break;
      }
      const double log_p = std::log(static_cast<double>(p));
      std::uint64_t k = p;
      std::uint32_t a = 1;
      while (true) {
        fn(k, a, log_p);
        if (k > cap / p) {
          break;
        }
        k *= p;
        ++a;
      }
    }
  }

private:
  PrimeTable(std::uint64_t limit, std::vector<std::uint64_t> primes)
      : limit_(limit), primes_(std::move(primes)) {}

  friend PrimeTable read_sieve_cache(const std::string& path);

  std::uint64_t limit_ = 0;
  std::vector<std::uint64_t> primes_;
};

enum class PrimeSumKind { S1, S2, S3 };

PrimeSumKind parse_prime_sum_kind(const std::string& name);
std::string to_string(PrimeSumKind kind);

/// Exact sum over the primes in (M, L] of the resonator's weight terms:
///   S1: sin^2((h/2) log p) / (p^{1+alpha} h log p)
///   S2: f(p)^2 (p^alpha - 1)
///   S3: sin^2((h/2) log p) / (p h log p)
/// Compensated accumulation; with threads > 1 the range is split into
/// fixed-size blocks whose partial sums merge in block order, so the
/// result is independent of the thread count.
double prime_sum(PrimeSumKind kind, const resonator::ResonatorParams& params,
                 const PrimeTable& table, unsigned threads = 1);

/// The integral main term matching prime_sum:
///   S1 -> (pi/2) phi2(scriptL; kappa)
///   S2 -> (pi/4) Q phi3(scriptL; kappa)
///   S3 -> (pi/2) phi(scriptL)
double prime_sum_main_term(PrimeSumKind kind,
                           const resonator::ResonatorParams& params);

/// Realized error of the asymptotic: exact sum minus main term.
double asymptotic_gap(PrimeSumKind kind, const resonator::ResonatorParams& params,
                      const PrimeTable& table, unsigned threads = 1);

/// Flat bitmap cache of the sieve: 8-byte little-endian limit header,
/// then one bit per odd integer (bit j of byte i covers 2*(8*i+j)+1).
void write_sieve_cache(const PrimeTable& table, const std::string& path);
PrimeTable read_sieve_cache(const std::string& path);

} // namespace resonance::primes

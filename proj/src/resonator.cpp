#include "resonance/resonator.hpp"

#include <algorithm>
#include <cctype>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "resonance/errors.hpp"
#include "resonance/kahan.hpp"

namespace resonance::resonator {

namespace {
constexpr double kPi = std::numbers::pi;
}

ResonatorParams derive_params(std::uint64_t L, double h, int sign) {
  if (L < 16) {
    throw DomainError("derive_params: L must be >= 16");
  }
  if (!(h > 0.0)) {
    throw DomainError("derive_params: h must be > 0");
  }
  if (sign != 1 && sign != -1) {
    throw DomainError("derive_params: sign must be +1 or -1");
  }
  const double log_l = std::log(static_cast<double>(L));
  const double x = h * log_l; // h log L
  if (!(x > 1.0)) {
    throw DomainError("derive_params: h log L must exceed 1, got " +
                      std::to_string(x));
  }
  ResonatorParams p;
  p.L = L;
  p.h = h;
  p.sign = sign;
  p.scriptL = x / (2.0 * kPi);
  p.M = std::exp(std::sqrt(std::log(log_l) / h));
  p.y = std::sqrt(std::log(x) / x);
  p.kappa = std::log(x) / (p.y * x);
  p.alpha = p.kappa * h;
  p.Q = 4.0 * p.kappa * (1.0 - p.y) * x /
        (kPi * quadrature::phi3(p.scriptL, p.kappa).value);
  p.range_warning =
      !(x >= 8.0 && h * std::log(log_l) <= 0.25) || !(p.y > 0.0 && p.y < 1.0);
  return p;
}

double coefficient_at_prime(const ResonatorParams& params, std::uint64_t p) {
  const double pd = static_cast<double>(p);
  if (!(pd > params.M) || p > params.L) {
    return 0.0;
  }
  const double lp = std::log(pd);
  return params.sign * std::sqrt(params.Q) * std::sin(0.5 * params.h * lp) /
         (std::exp((0.5 + params.alpha) * lp) * params.h * lp);
}

CoefficientTable::CoefficientTable(std::vector<CoefficientEntry> entries,
                                   SupportKind kind)
    : entries_(std::move(entries)), kind_(kind) {
  for (std::size_t i = 0; i + 1 < entries_.size(); ++i) {
    if (entries_[i].n >= entries_[i + 1].n) {
      throw DomainError("CoefficientTable: entries must be strictly "
                        "ascending in n");
    }
  }
  if (!entries_.empty() && entries_.front().n == 0) {
    throw DomainError("CoefficientTable: n must be >= 1");
  }
}

double CoefficientTable::value_at(std::uint64_t n) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), n,
                             [](const CoefficientEntry& e, std::uint64_t key) {
                               return e.n < key;
                             });
  if (it == entries_.end() || it->n != n) {
    return 0.0;
  }
  return it->value;
}

void CoefficientTable::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) {
    throw FormatError("cannot open " + path + " for writing");
  }
  char buf[64];
  for (const auto& e : entries_) {
    std::snprintf(buf, sizeof(buf), "%" PRIu64 " %.17g\n", e.n, e.value);
    out << buf;
  }
  if (!out) {
    throw FormatError("write failure on " + path);
  }
}

CoefficientTable CoefficientTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw FormatError("cannot open " + path);
  }
  std::vector<CoefficientEntry> entries;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream ss(line);
    std::uint64_t n = 0;
    double value = 0.0;
    if (!(ss >> n)) {
      if (ss.eof()) {
        continue; // blank or comment-only line
      }
      throw FormatError(path + ":" + std::to_string(lineno) +
                        ": expected 'n value'");
    }
    if (!(ss >> value)) {
      throw FormatError(path + ":" + std::to_string(lineno) +
                        ": missing coefficient value");
    }
    std::string rest;
    if (ss >> rest) {
      throw FormatError(path + ":" + std::to_string(lineno) +
                        ": trailing content '" + rest + "'");
    }
    if (n < 1) {
      throw FormatError(path + ":" + std::to_string(lineno) + ": n must be >= 1");
    }
    if (!entries.empty() && n <= entries.back().n) {
      throw FormatError(path + ":" + std::to_string(lineno) +
                        ": n not strictly ascending");
    }
    entries.push_back({n, value});
  }
  return CoefficientTable(std::move(entries), SupportKind::user);
}

CoefficientTable enumerate_support(const ResonatorParams& params,
                                   const primes::PrimeTable& table,
                                   std::size_t cap) {
  if (table.limit() < params.L) {
    throw DomainError("enumerate_support: table limit below resonator cutoff");
  }
  const auto range = table.primes_in(params.M, params.L);
  std::vector<double> fp(range.size());
  for (std::size_t i = 0; i < range.size(); ++i) {
    fp[i] = coefficient_at_prime(params, range[i]);
  }

  std::vector<CoefficientEntry> out;
  auto dfs = [&](auto&& self, std::size_t start, std::uint64_t n,
                 double value) -> void {
    if (out.size() >= cap) {
      throw CapacityError("enumerate_support: support exceeds cap of " +
                          std::to_string(cap) + " (partial count " +
                          std::to_string(out.size()) + ")");
    }
    out.push_back({n, value});
    for (std::size_t i = start; i < range.size(); ++i) {
      if (range[i] > params.L / n) {
        break; // n * p would exceed L
      }
      self(self, i + 1, n * range[i], value * fp[i]);
    }
  };
  dfs(dfs, 0, 1, 1.0);

  std::sort(out.begin(), out.end(),
            [](const CoefficientEntry& a, const CoefficientEntry& b) {
              return a.n < b.n;
            });
  return CoefficientTable(std::move(out), SupportKind::resonator);
}

double resonance_quotient_exact(const CoefficientTable& coeffs,
                                const ResonatorParams& params) {
  const auto& entries = coeffs.entries();
  if (entries.empty()) {
    throw DomainError("resonance_quotient_exact: empty support");
  }

  // The support primes are exactly the prime entries; recover them in
  // ascending order so each factorization only needs trial division up
  // to sqrt(n) within the support itself.
  std::vector<std::uint64_t> primes;
  std::vector<double> sp; // sin((h/2) log p)/sqrt(p)

  KahanSum num;
  KahanSum den;
  for (const auto& entry : entries) {
    const std::uint64_t n = entry.n;
    const double fn = entry.value;
    den.add(fn * fn);
    if (n == 1) {
      continue;
    }

    double pair_sum = 0.0;
    std::uint64_t rest = n;
    bool is_prime = true;
    for (std::size_t i = 0; i < primes.size() && primes[i] * primes[i] <= rest;
         ++i) {
      if (rest % primes[i] == 0) {
        is_prime = false;
        rest /= primes[i];
        pair_sum += sp[i] * coeffs.value_at(n / primes[i]);
      }
    }
    if (rest > 1 && rest != n) {
      // Largest prime factor of a composite n; its s-value is already
      // recorded because rest < n appeared earlier as a prime entry.
      auto it = std::lower_bound(primes.begin(), primes.end(), rest);
      if (it == primes.end() || *it != rest) {
        throw DomainError("resonance_quotient_exact: support is not "
                          "multiplicatively closed at n = " +
                          std::to_string(n));
      }
      pair_sum += sp[static_cast<std::size_t>(it - primes.begin())] *
                  coeffs.value_at(n / rest);
    }
    if (is_prime) {
      const double lp = std::log(static_cast<double>(n));
      const double s =
          std::sin(0.5 * params.h * lp) / std::sqrt(static_cast<double>(n));
      primes.push_back(n);
      sp.push_back(s);
      pair_sum = s * coeffs.value_at(1);
    }
    num.add(fn * pair_sum);
  }

  const double denom = den.value();
  if (denom == 0.0) {
    throw DomainError("resonance_quotient_exact: coefficients are "
                      "identically zero");
  }
  return (2.0 / kPi) * num.value() / denom;
}

double prop6_main_term(const ResonatorParams& params) {
  const double x = params.h * std::log(static_cast<double>(params.L));
  const double v2 = quadrature::phi2(params.scriptL, params.kappa).value;
  const double v0 = quadrature::phi(params.scriptL).value;
  const double v3 = quadrature::phi3(params.scriptL, params.kappa).value;
  const double damping = std::exp(-params.kappa * params.y * x);
  return (v2 - v0 * damping) *
         std::sqrt(4.0 * params.kappa * (1.0 - params.y) / (kPi * v3)) *
         std::sqrt(x);
}

} // namespace resonance::resonator

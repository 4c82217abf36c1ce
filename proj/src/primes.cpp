#include "resonance/primes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <numbers>

#include "resonance/errors.hpp"
#include "resonance/kahan.hpp"
#include "resonance/resonator.hpp"

namespace resonance::primes {

namespace {

constexpr std::uint64_t kSegmentSize = std::uint64_t{1} << 20;
constexpr std::size_t kSumBlock = std::size_t{1} << 16;

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) {
    --r;
  }
  while ((r + 1) * (r + 1) <= n) {
    ++r;
  }
  return r;
}

std::vector<std::uint64_t> simple_sieve(std::uint64_t limit) {
  std::vector<std::uint8_t> is_prime(limit + 1, 1);
  is_prime[0] = 0;
  if (limit >= 1) {
    is_prime[1] = 0;
  }
  for (std::uint64_t i = 2; i * i <= limit; ++i) {
    if (is_prime[i]) {
      for (std::uint64_t j = i * i; j <= limit; j += i) {
        is_prime[j] = 0;
      }
    }
  }
  std::vector<std::uint64_t> primes;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (is_prime[i]) {
      primes.push_back(i);
    }
  }
  return primes;
}

} // namespace

PrimeTable PrimeTable::build(std::uint64_t limit) {
  if (limit < 2 || limit > kMaxLimit) {
    throw CapacityError("PrimeTable: limit must lie in [2, 2^34], got " +
                        std::to_string(limit));
  }
  const auto base = simple_sieve(isqrt(limit));

  std::vector<std::uint64_t> primes;
  primes.reserve(static_cast<std::size_t>(
      1.15 * static_cast<double>(limit) /
      std::max(2.0, std::log(static_cast<double>(limit)))));

  std::vector<std::uint8_t> segment(static_cast<std::size_t>(
      std::min<std::uint64_t>(kSegmentSize, limit + 1)));
  for (std::uint64_t low = 2; low <= limit; low += kSegmentSize) {
    const std::uint64_t high = std::min(low + kSegmentSize - 1, limit);
    std::fill(segment.begin(), segment.end(), 1);
    for (std::uint64_t p : base) {
      if (p * p > high) {
        break;
      }
      std::uint64_t start = std::max(p * p, ((low + p - 1) / p) * p);
      for (std::uint64_t j = start; j <= high; j += p) {
        segment[static_cast<std::size_t>(j - low)] = 0;
      }
    }
    for (std::uint64_t n = low; n <= high; ++n) {
      if (segment[static_cast<std::size_t>(n - low)]) {
        primes.push_back(n);
      }
    }
  }
  return PrimeTable(limit, std::move(primes));
}

std::span<const std::uint64_t> PrimeTable::primes_in(
    double m_exclusive, std::uint64_t l_inclusive) const {
  auto lo = std::upper_bound(primes_.begin(), primes_.end(), m_exclusive,
                             [](double m, std::uint64_t p) {
                               return m < static_cast<double>(p);
                             });
  auto hi = std::upper_bound(primes_.begin(), primes_.end(), l_inclusive);
  if (lo >= hi) {
    return {};
  }
  return {&*lo, static_cast<std::size_t>(hi - lo)};
}

PrimeSumKind parse_prime_sum_kind(const std::string& name) {
  if (name == "S1") return PrimeSumKind::S1;
  if (name == "S2") return PrimeSumKind::S2;
  if (name == "S3") return PrimeSumKind::S3;
  throw DomainError("unknown prime-sum kind: " + name);
}

std::string to_string(PrimeSumKind kind) {
  switch (kind) {
    case PrimeSumKind::S1: return "S1";
    case PrimeSumKind::S2: return "S2";
    case PrimeSumKind::S3: return "S3";
  }
  return "?";
}

namespace {

double sum_term(PrimeSumKind kind, std::uint64_t p,
                const resonator::ResonatorParams& params) {
  const double lp = std::log(static_cast<double>(p));
  const double s = std::sin(0.5 * params.h * lp);
  switch (kind) {
    case PrimeSumKind::S1:
      return s * s / (std::exp((1.0 + params.alpha) * lp) * params.h * lp);
    case PrimeSumKind::S2: {
      // f(p)^2 (p^alpha - 1); expm1 keeps precision for tiny alpha*log p.
      const double f2 = params.Q * s * s /
                        (std::exp((1.0 + 2.0 * params.alpha) * lp) *
                         params.h * params.h * lp * lp);
      return f2 * std::expm1(params.alpha * lp);
    }
    case PrimeSumKind::S3:
      return s * s / (static_cast<double>(p) * params.h * lp);
  }
  return 0.0;
}

KahanSum sum_block(PrimeSumKind kind, std::span<const std::uint64_t> block,
                   const resonator::ResonatorParams& params) {
  KahanSum acc;
  for (std::uint64_t p : block) {
    acc.add(sum_term(kind, p, params));
  }
  return acc;
}

} // namespace

double prime_sum(PrimeSumKind kind, const resonator::ResonatorParams& params,
                 const PrimeTable& table, unsigned threads) {
  if (table.limit() < params.L) {
    throw DomainError("prime_sum: table limit " + std::to_string(table.limit()) +
                      " below resonator cutoff " + std::to_string(params.L));
  }
  const auto range = table.primes_in(params.M, params.L);
  const std::size_t nblocks = (range.size() + kSumBlock - 1) / kSumBlock;

  std::vector<KahanSum> partials(nblocks);
  if (threads <= 1 || nblocks <= 1) {
    for (std::size_t b = 0; b < nblocks; ++b) {
      partials[b] = sum_block(
          kind, range.subspan(b * kSumBlock, std::min(kSumBlock, range.size() - b * kSumBlock)),
          params);
    }
  } else {
    std::vector<std::future<KahanSum>> jobs;
    jobs.reserve(nblocks);
    for (std::size_t b = 0; b < nblocks; ++b) {
      jobs.push_back(std::async(
          std::launch::async, [&, b] {
            return sum_block(
                kind,
                range.subspan(b * kSumBlock,
                              std::min(kSumBlock, range.size() - b * kSumBlock)),
                params);
          }));
    }
    for (std::size_t b = 0; b < nblocks; ++b) {
      partials[b] = jobs[b].get();
    }
  }

  // Merge in block order regardless of how the blocks were computed.
  KahanSum total;
  for (const KahanSum& part : partials) {
    total.merge(part);
  }
  return total.value();
}

double prime_sum_main_term(PrimeSumKind kind,
                           const resonator::ResonatorParams& params) {
  constexpr double kPi = std::numbers::pi;
  switch (kind) {
    case PrimeSumKind::S1:
      return 0.5 * kPi * quadrature::phi2(params.scriptL, params.kappa).value;
    case PrimeSumKind::S2:
      return 0.25 * kPi * params.Q *
             quadrature::phi3(params.scriptL, params.kappa).value;
    case PrimeSumKind::S3:
      return 0.5 * kPi * quadrature::phi(params.scriptL).value;
  }
  return 0.0;
}

double asymptotic_gap(PrimeSumKind kind, const resonator::ResonatorParams& params,
                      const PrimeTable& table, unsigned threads) {
  return prime_sum(kind, params, table, threads) -
         prime_sum_main_term(kind, params);
}

namespace {

class FileHandle {
public:
  FileHandle(const std::string& path, const char* mode)
      : f_(std::fopen(path.c_str(), mode)) {
    if (f_ == nullptr) {
      throw FormatError("cannot open " + path);
    }
  }
  ~FileHandle() {
    if (f_ != nullptr) {
      std::fclose(f_);
    }
  }
  FileHandle(const FileHandle&) = delete;
  FileHandle& operator=(const FileHandle&) = delete;
  std::FILE* get() const { return f_; }

private:
  std::FILE* f_;
};

} // namespace

void write_sieve_cache(const PrimeTable& table, const std::string& path) {
  const std::uint64_t limit = table.limit();
  const std::uint64_t nbits = (limit + 1) / 2; // odd integers <= limit
  std::vector<std::uint8_t> bits((nbits + 7) / 8, 0);
  for (std::uint64_t p : table.primes()) {
    if (p == 2) {
      continue;
    }
    const std::uint64_t j = (p - 1) / 2;
    bits[static_cast<std::size_t>(j >> 3)] |=
        static_cast<std::uint8_t>(1u << (j & 7));
  }
  FileHandle f(path, "wb");
  std::uint8_t header[8];
  for (int i = 0; i < 8; ++i) {
    header[i] = static_cast<std::uint8_t>((limit >> (8 * i)) & 0xff);
  }
  if (std::fwrite(header, 1, 8, f.get()) != 8 ||
      (!bits.empty() &&
       std::fwrite(bits.data(), 1, bits.size(), f.get()) != bits.size())) {
    throw FormatError("short write to " + path);
  }
}

PrimeTable read_sieve_cache(const std::string& path) {
  FileHandle f(path, "rb");
  std::uint8_t header[8];
  if (std::fread(header, 1, 8, f.get()) != 8) {
    throw FormatError(path + ": truncated header");
  }
  std::uint64_t limit = 0;
  for (int i = 0; i < 8; ++i) {
    limit |= static_cast<std::uint64_t>(header[i]) << (8 * i);
  }
  if (limit < 2 || limit > PrimeTable::kMaxLimit) {
    throw FormatError(path + ": implausible limit in header");
  }
  const std::uint64_t nbits = (limit + 1) / 2;
  std::vector<std::uint8_t> bits((nbits + 7) / 8);
  if (!bits.empty() &&
      std::fread(bits.data(), 1, bits.size(), f.get()) != bits.size()) {
    throw FormatError(path + ": truncated bitmap");
  }

  std::vector<std::uint64_t> primes;
  primes.reserve(static_cast<std::size_t>(
      1.15 * static_cast<double>(limit) /
      std::max(2.0, std::log(static_cast<double>(limit)))));
  primes.push_back(2);
  for (std::uint64_t j = 1; j < nbits; ++j) {
    if (bits[static_cast<std::size_t>(j >> 3)] & (1u << (j & 7))) {
      primes.push_back(2 * j + 1);
    }
  }
  // Rebuilding from a sieve gives identical contents; corrupt caches
  // with set bits past the limit fail loudly.
  if (primes.size() > 1 && primes.back() > limit) {
    throw FormatError(path + ": bitmap wider than header limit");
  }
  return PrimeTable(limit, std::move(primes));
}

} // namespace resonance::primes

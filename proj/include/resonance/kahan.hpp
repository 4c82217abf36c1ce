#pragma once

#include <cmath>

namespace resonance {

/// Compensated accumulator (Neumaier's variant of Kahan summation).
/// Keeps the running error of a long sum near one ulp of the result
/// instead of growing with the term count.
class KahanSum {
public:
  KahanSum() = default;
  explicit KahanSum(double initial) : sum_(initial) {}

  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  KahanSum& operator+=(double x) {
    add(x);
    return *this;
  }

  /// Merge another accumulator. Order of merges matters for bit
  /// reproducibility; callers must merge in a fixed order.
  void merge(const KahanSum& other) {
    add(other.sum_);
    carry_ += other.carry_;
  }

  double value() const { return sum_ + carry_; }

private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

} // namespace resonance

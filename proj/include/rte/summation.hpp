// Copyright 2026 The rte Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef RTE_SUMMATION_HPP
#define RTE_SUMMATION_HPP

#include <cmath>
#include <cstddef>
#include <span>

namespace rte {

namespace detail {

inline double pairwise_block(const double* p, std::size_t n) {
  if (n <= 32) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += p[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_block(p, half) + pairwise_block(p + half, n - half);
}

}  // namespace detail

/// Pairwise (cascade) summation; rounding error grows like log2(n)
/// instead of n, which matters for batches of 1e5..1e7 durations.
inline double pairwise_sum(std::span<const double> values) {
  return values.empty() ? 0.0 : detail::pairwise_block(values.data(), values.size());
}

/// Neumaier-compensated running sum for term-by-term accumulation.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace rte

#endif  // RTE_SUMMATION_HPP

// Copyright 2026 The rte Authors
// SPDX-License-Identifier: Apache-2.0

#include "rte/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "rte/summation.hpp"

namespace rte {
namespace {

constexpr double kLn2Pi = 1.8378770664093454836;  // ln(2*pi)

// stirlerr(n) = ln(n!) - [n ln n - n + ln(2 pi n)/2], the Stirling series
// remainder.  Exact-to-double table for small n, asymptotic series above.
// Series coefficients are the usual 1/(12n) expansion terms.
double stirlerr(double n) {
  static constexpr double table[17] = {
      0.08106146679532726,    // n = 1
      0.0413406959554093,     // n = 2
      0.02767792568499834,    // n = 3
      0.020790672103765093,   // n = 4
      0.016644691189821193,   // n = 5
      0.013876128823070748,   // n = 6
      0.01189670994589177,    // n = 7
      0.010411265261972096,   // n = 8
      0.009255462182712733,   // n = 9
      0.00833056343336287,    // n = 10
      0.007573675487951841,   // n = 11
      0.00694284010720953,    // n = 12
      0.006408994188004207,   // n = 13
      0.0059513701127588475,  // n = 14
      0.005554733551962801,   // n = 15
      0.0052076559196096404,  // n = 16
      0.004901395948434738,   // n = 17
  };
  if (n <= 17.0) return table[static_cast<int>(n) - 1];
  constexpr double s0 = 1.0 / 12.0;
  constexpr double s1 = 1.0 / 360.0;
  constexpr double s2 = 1.0 / 1260.0;
  constexpr double s3 = 1.0 / 1680.0;
  constexpr double s4 = 1.0 / 1188.0;
  const double nn = n * n;
  return (s0 - (s1 - (s2 - (s3 - s4 / nn) / nn) / nn) / nn) / n;
}

// bd0(n, x) = n ln(n/x) + x - n, evaluated without cancellation when n and x
// are close (the regime that dominates near the mode of the Poisson pmf).
double bd0(double n, double x) {
  if (std::abs(n - x) <= 0.1 * (n + x)) {
    const double v = (n - x) / (n + x);
    double s = (n - x) * v;
    double ej = 2.0 * n * v;
    for (int j = 1;; ++j) {
      ej *= v * v;
      const double s1 = s + ej / (2 * j + 1);
      if (s1 == s) return s1;
      s = s1;
    }
  }
  return n * std::log(n / x) + x - n;
}

// ln of the Poisson(x) pmf at i, i.e. ln(exp(-x) x^i / i!).  Written as
// -stirlerr(i) - bd0(i, x) - ln(2 pi i)/2 so nearby i and x never cancel.
double log_poisson_term(std::int64_t i, double x) {
  if (i == 0) return -x;
  const double di = static_cast<double>(i);
  return -stirlerr(di) - bd0(di, x) - 0.5 * (kLn2Pi + std::log(di));
}

}  // namespace

double poisson_tail(const PoissonTailArgs& args) {
  if (args.m < 1) {
    throw std::invalid_argument("poisson_tail: m must be >= 1, got " +
                                std::to_string(args.m));
  }
  if (!(args.x >= 0.0) || !std::isfinite(args.x)) {
    throw std::invalid_argument("poisson_tail: x must be finite and >= 0");
  }
  if (args.x == 0.0) return 1.0;  // the i = 0 term is 1, every other term is 0

  const std::int64_t last = args.m - 1;
  // Largest term of the partial sum: the pmf peaks at floor(x), clipped to
  // the summation range.
  const std::int64_t mode = std::min(last, static_cast<std::int64_t>(std::floor(args.x)));
  const double log_peak = log_poisson_term(mode, args.x);

  // Accumulate terms relative to the peak via the pmf ratio recurrence,
  // walking outward until a term no longer contributes at 1e-18 relative.
  constexpr double kRelCutoff = 1e-18;
  CompensatedSum acc;
  acc.add(1.0);  // the mode term itself, scaled to 1

  double term = 1.0;
  for (std::int64_t i = mode; i >= 1; --i) {
    term *= static_cast<double>(i) / args.x;  // t(i-1) = t(i) * i / x
    if (!(term > kRelCutoff * acc.value())) break;
    acc.add(term);
  }
  term = 1.0;
  for (std::int64_t i = mode; i < last; ++i) {
    term *= args.x / static_cast<double>(i + 1);  // t(i+1) = t(i) * x / (i+1)
    if (!(term > kRelCutoff * acc.value())) break;
    acc.add(term);
  }

  const double value = std::exp(log_peak + std::log(acc.value()));
  return std::clamp(value, 0.0, 1.0);
}

double chi_square_survival(const ChiSquareArgs& args) {
  if (args.half_dof < 1) {
    throw std::invalid_argument("chi_square_survival: half_dof must be >= 1, got " +
                                std::to_string(args.half_dof));
  }
  if (!(args.threshold >= 0.0) || !std::isfinite(args.threshold)) {
    throw std::invalid_argument("chi_square_survival: threshold must be finite and >= 0");
  }
  // With 2*half_dof degrees of freedom the survival function is exactly the
  // truncated Poisson sum at half the threshold.
  return poisson_tail({args.half_dof, args.threshold / 2.0});
}

double chi_square_quantile(std::int64_t half_dof, double tail_prob) {
  if (half_dof < 1) {
    throw std::invalid_argument("chi_square_quantile: half_dof must be >= 1, got " +
                                std::to_string(half_dof));
  }
  if (!(tail_prob > 0.0 && tail_prob < 1.0)) {
    throw std::invalid_argument("chi_square_quantile: tail_prob must lie in (0, 1)");
  }

  const auto survival = [half_dof](double y) {
    return chi_square_survival({half_dof, y});
  };

  // Initial upper bracket: mean + 10 standard deviations + slack for the
  // distribution with 2n degrees of freedom, doubled until it encloses.
  const double dof = 2.0 * static_cast<double>(half_dof);
  double hi = 2.0 * dof + 20.0 * std::sqrt(2.0 * dof) + 20.0;
  for (int guard = 0; survival(hi) > tail_prob && guard < 200; ++guard) hi *= 2.0;

  double lo = 0.0;
  double mid = 0.5 * hi;
  constexpr double kProbTol = 1e-10;
  for (int iter = 0; iter < 400; ++iter) {
    mid = 0.5 * (lo + hi);
    const double s = survival(mid);
    if (std::abs(s - tail_prob) <= kProbTol) return mid;
    if (s > tail_prob) {
      lo = mid;  // survival too large: move right
    } else {
      hi = mid;
    }
    if (hi - lo <= std::numeric_limits<double>::epsilon() * hi) break;
  }
  return mid;
}

}  // namespace rte

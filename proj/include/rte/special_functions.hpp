// Copyright 2026 The rte Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef RTE_SPECIAL_FUNCTIONS_HPP
#define RTE_SPECIAL_FUNCTIONS_HPP

#include <cstdint>

namespace rte {

/// Arguments for poisson_tail(): the partial sum runs over i = 0 .. m-1.
struct PoissonTailArgs {
  std::int64_t m = 0;  ///< number of leading Poisson terms, >= 1
  double x = 0.0;      ///< Poisson mean, finite and >= 0
};

/// exp(-x) * sum_{i=0}^{m-1} x^i / i!, the probability that a Poisson(x)
/// variate is at most m-1.  Evaluated in log space around the largest term
/// with compensated accumulation, so it stays accurate far out in the tails
/// (e.g. m ~ 1e5, x ~ 1e5) where forming exp(-x) or x^i/i! directly would
/// underflow or overflow.  Result is clamped to [0, 1].
///
/// Throws std::invalid_argument if m < 1 or x is negative or non-finite.
double poisson_tail(const PoissonTailArgs& args);

/// Arguments for chi_square_survival(): a chi-square variate with an even
/// number 2*half_dof of degrees of freedom, evaluated at `threshold`.
struct ChiSquareArgs {
  std::int64_t half_dof = 0;  ///< half the degrees of freedom, >= 1
  double threshold = 0.0;     ///< evaluation point, finite and >= 0
};

/// Upper-tail probability Pr{Y > threshold} for Y chi-square distributed
/// with 2*half_dof degrees of freedom.  For even degrees of freedom this
/// equals poisson_tail({half_dof, threshold / 2}) exactly; no incomplete
/// gamma machinery is needed.
///
/// Throws std::invalid_argument on a non-positive half_dof or a negative
/// or non-finite threshold.
double chi_square_survival(const ChiSquareArgs& args);

/// Inverse of chi_square_survival in its second argument: the point y with
/// Pr{Y > y} = tail_prob for Y chi-square with 2*half_dof degrees of
/// freedom.  Solved by bracketing and bisection to an absolute tolerance of
/// 1e-10 on the tail probability.
///
/// Throws std::invalid_argument if half_dof < 1 or tail_prob is outside the
/// open interval (0, 1).
double chi_square_quantile(std::int64_t half_dof, double tail_prob);

}  // namespace rte

#endif  // RTE_SPECIAL_FUNCTIONS_HPP

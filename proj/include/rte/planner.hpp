// Copyright 2026 The rte Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef RTE_PLANNER_HPP
#define RTE_PLANNER_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rte {

/// Relative-error / confidence contract: the estimator must satisfy
/// Pr{ |estimate - truth| / truth < epsilon } >= 1 - delta.
struct PrecisionSpec {
  double epsilon = 0.0;  ///< relative half-width, in (0, 1)
  double delta = 0.0;    ///< allowed miss probability, in (0, 1)
};

/// Throws std::invalid_argument unless both fields lie in the open
/// interval (0, 1).
void validate(const PrecisionSpec& spec);

/// Which coverage window the plan is built from.
enum class CriterionKind {
  /// Exact two-sided window for the arrival-rate estimator (the reciprocal
  /// of a mean of exponential interarrival times).
  RateExact,
  /// Conservative (sufficient) window for the service-mean estimator; the
  /// window is nested inside the exact one, so its n is an upper bound.
  ServiceConservative,
  /// Exact two-sided window for the service-mean estimator.  Sharper than
  /// ServiceConservative; opt-in.
  ServiceExact,
};

/// Stable wire/CLI names: "rate_exact", "service_conservative",
/// "service_exact".
std::string_view to_string(CriterionKind kind);

/// Inverse of to_string; empty when the name is not recognized.
std::optional<CriterionKind> criterion_from_string(std::string_view name);

/// Result of solve_sample_size.
struct SampleSizePlan {
  std::int64_t n = 0;              ///< least sample size meeting the contract
  CriterionKind criterion{};       ///< window the plan was solved against
  double coverage_lb_at_n = 0.0;   ///< coverage_value(n), >= 1 - delta
  PrecisionSpec precision{};       ///< the contract that was solved
};

/// Thrown when no n within the search budget satisfies the contract.
class NoSolutionWithinBudget : public std::runtime_error {
 public:
  NoSolutionWithinBudget(std::int64_t budget, const PrecisionSpec& spec);
  std::int64_t budget() const { return budget_; }

 private:
  std::int64_t budget_;
};

/// Default cap on the sample-size search.
inline constexpr std::int64_t kDefaultMaxSampleSize = 100'000'000;

/// Coverage guarantee delivered by n samples under the given criterion:
/// the probability that the estimator lands within the relative window.
/// Exact for RateExact / ServiceExact, a lower bound for
/// ServiceConservative.  Throws std::invalid_argument if n < 1 or the
/// precision spec is invalid.
double coverage_value(std::int64_t n, const PrecisionSpec& spec, CriterionKind kind);

/// Least n with coverage_value(n) >= 1 - delta, found by exponential
/// doubling plus bisection and certified minimal before returning.
/// Throws NoSolutionWithinBudget if no n <= max_n qualifies.
SampleSizePlan solve_sample_size(const PrecisionSpec& spec, CriterionKind kind,
                                 std::int64_t max_n = kDefaultMaxSampleSize);

/// One (epsilon, delta) cell of a planning curve.  `n` and `coverage_lb`
/// are empty when the search budget was exhausted for that cell.
struct CurveRow {
  double epsilon = 0.0;
  double delta = 0.0;
  CriterionKind criterion{};
  std::optional<std::int64_t> n;
  std::optional<double> coverage_lb;
};

/// Solves the full epsilon x delta grid in row-major order (delta outer,
/// epsilon inner).  Budget overruns are recorded per row, not thrown.
std::vector<CurveRow> make_curve(std::span<const double> epsilon_grid,
                                 std::span<const double> delta_list,
                                 CriterionKind kind,
                                 std::int64_t max_n = kDefaultMaxSampleSize);

}  // namespace rte

#endif  // RTE_PLANNER_HPP

// Copyright 2026 The rte Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef RTE_ESTIMATORS_HPP
#define RTE_ESTIMATORS_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rte/planner.hpp"

namespace rte {

/// What the durations in a batch measure.
enum class BatchKind {
  Interarrival,  ///< gaps between consecutive arrivals (for rate estimation)
  ServiceTime,   ///< per-job service durations (for service-mean estimation)
};

/// Stable names: "interarrival", "service_time".
std::string_view to_string(BatchKind kind);

/// A validated batch of positive, finite durations in seconds.
struct ObservationBatch {
  std::vector<double> durations;
  BatchKind kind{};
  std::string source;  ///< provenance label (file path, "-", or synthetic tag)
};

class EmptyBatch : public std::runtime_error {
 public:
  EmptyBatch() : std::runtime_error("observation batch holds no durations") {}
};

class WrongBatchKind : public std::runtime_error {
 public:
  WrongBatchKind(BatchKind expected, BatchKind got);
};

/// Validating constructor: every duration must be finite and > 0, and the
/// batch non-empty.  Throws std::invalid_argument naming the first offending
/// index, or EmptyBatch.
ObservationBatch make_batch(std::vector<double> durations, BatchKind kind,
                            std::string source = {});

/// Default confidence level parameter used when an estimate is requested
/// without a precision contract: the interval is reported at level
/// 1 - kDefaultCiDelta.
inline constexpr double kDefaultCiDelta = 0.05;

/// A point estimate with its confidence interval and, when a precision
/// contract was supplied, the sample-size verdict against it.
struct EstimateReport {
  double point = 0.0;        ///< events/second for rate, seconds for service mean
  std::int64_t n_used = 0;   ///< observations consumed
  double ci_lower = 0.0;     ///< lower confidence bound (same unit as point)
  double ci_upper = 0.0;     ///< upper confidence bound
  double ci_level = 0.0;     ///< confidence level of the interval, e.g. 0.95

  std::optional<PrecisionSpec> precision;      ///< contract, when supplied
  std::optional<std::int64_t> required_n;      ///< planned n for the contract
  std::optional<bool> meets_guarantee;         ///< n_used >= required_n
  std::optional<double> stddev_estimate;       ///< sample stddev (service only)
};

/// Arrival-rate estimate from interarrival gaps: n divided by the summed
/// gaps, with an equal-tail confidence interval from the chi-square pivot
/// of the summed gaps.  When `precision` is given the interval level is
/// 1 - delta and the report carries the required sample size for the
/// contract under the RateExact criterion.
///
/// Throws EmptyBatch, WrongBatchKind, std::invalid_argument (bad precision
/// or non-finite data), or NoSolutionWithinBudget (contract unreachable).
EstimateReport estimate_rate(const ObservationBatch& batch,
                             std::optional<PrecisionSpec> precision = std::nullopt);

/// Mean service time estimate: the sample mean, same pivot construction as
/// estimate_rate but inverted to the mean scale.  The sample-size verdict
/// uses the ServiceConservative criterion unless `exact_criterion` is set.
/// Also reports the sample standard deviation as a descriptive statistic
/// (it is itself a random quantity, not an accuracy certificate).
EstimateReport estimate_service_mean(const ObservationBatch& batch,
                                     std::optional<PrecisionSpec> precision = std::nullopt,
                                     bool exact_criterion = false);

/// Rate from an event count over a fixed observation window, in events per
/// second.  Count may be zero (rate 0); the window must be finite and > 0.
double rate_from_count(std::int64_t count, double window_seconds);

}  // namespace rte

#endif  // RTE_ESTIMATORS_HPP

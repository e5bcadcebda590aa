// Copyright 2026 The rte Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef RTE_MONTE_CARLO_HPP
#define RTE_MONTE_CARLO_HPP

#include <cstdint>
#include <string_view>
#include <vector>

#include "rte/planner.hpp"

namespace rte {

/// Which estimator a simulation exercises.
enum class SimulationTarget {
  Rate,         ///< arrival rate from exponential interarrival gaps
  ServiceMean,  ///< mean of exponential service times
};

/// Stable names: "rate", "service".
std::string_view to_string(SimulationTarget target);

/// A coverage experiment: `trials` independent batches of `n_per_trial`
/// exponential draws, each reduced to an estimate and scored against the
/// relative-error window.
struct SimulationConfig {
  double true_param = 0.0;       ///< rate (events/s) or mean (s), finite and > 0
  std::int64_t n_per_trial = 0;  ///< draws per batch, >= 1
  std::int64_t trials = 0;       ///< number of batches, >= 1
  std::uint64_t seed = 0;        ///< root seed; trial t uses stream t
  SimulationTarget target{};
};

/// Throws std::invalid_argument on any out-of-range field.
void validate(const SimulationConfig& config);

/// Outcome of a coverage experiment.
struct CoverageReport {
  std::int64_t trials = 0;
  std::int64_t hits = 0;               ///< trials with relative error < epsilon
  double empirical_coverage = 0.0;     ///< hits / trials
  double std_error = 0.0;              ///< binomial standard error of the above
  double nominal_floor = 0.0;          ///< 1 - delta
  bool pass = false;                   ///< empirical >= floor - 3 * std_error
};

/// `count` exponential draws with the given mean, from stream 0 of the
/// seed.  Deterministic in (mean, count, seed).
std::vector<double> sample_exponential(double mean, std::int64_t count, std::uint64_t seed);

/// Runs the coverage experiment.  A trial scores a hit when the relative
/// error of its estimate is strictly below epsilon.  `threads` = 0 uses the
/// hardware concurrency; the report is bit-identical for every thread
/// count because trial t always consumes stream t of the seed.
CoverageReport run_coverage(const SimulationConfig& config, const PrecisionSpec& precision,
                            unsigned threads = 0);

/// Consistency check between the estimator-side and pivot-side views of one
/// trial: the relative-error event must coincide with the pivot landing in
/// the matching window (exactly for the rate target, one-sided for the
/// conservative service window).
struct EventAlgebraReport {
  std::int64_t trials = 0;
  std::int64_t window_mismatches = 0;   ///< two-sided disagreements (rate)
  std::int64_t forward_violations = 0;  ///< window hit but estimator miss (service)
  std::int64_t window_hits = 0;         ///< trials with the pivot inside the window
  bool passed = false;                  ///< no mismatches / violations observed
};

/// Replays `config.trials` trials and cross-checks the two event views.
EventAlgebraReport verify_event_algebra(const SimulationConfig& config,
                                        const PrecisionSpec& precision);

}  // namespace rte

#endif  // RTE_MONTE_CARLO_HPP

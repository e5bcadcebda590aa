// Copyright 2026 The rte Authors
// SPDX-License-Identifier: Apache-2.0

#include "rte/estimators.hpp"

#include <cmath>
#include <utility>

#include "rte/format.hpp"
#include "rte/special_functions.hpp"
#include "rte/summation.hpp"

namespace rte {
namespace {

// Kind check + per-element revalidation shared by both estimators.  The
// batch may have been aggregate-initialized rather than built through
// make_batch, so the estimators do not trust it.
void check_batch(const ObservationBatch& batch, BatchKind expected) {
  if (batch.kind != expected) throw WrongBatchKind(expected, batch.kind);
  if (batch.durations.empty()) throw EmptyBatch();
  for (std::size_t i = 0; i < batch.durations.size(); ++i) {
    const double d = batch.durations[i];
    if (!(d > 0.0) || !std::isfinite(d)) {
      throw std::invalid_argument("duration at index " + std::to_string(i) +
                                  " must be finite and > 0, got " + format_g12(d));
    }
  }
}

// Equal-tail chi-square quantile pair at miss probability `delta`:
// {lower, upper} quantiles for 2n degrees of freedom.
std::pair<double, double> quantile_pair(std::int64_t n, double delta) {
  return {chi_square_quantile(n, 1.0 - delta / 2.0),
          chi_square_quantile(n, delta / 2.0)};
}

}  // namespace

std::string_view to_string(BatchKind kind) {
  switch (kind) {
    case BatchKind::Interarrival: return "interarrival";
    case BatchKind::ServiceTime: return "service_time";
  }
  return "unknown";
}

WrongBatchKind::WrongBatchKind(BatchKind expected, BatchKind got)
    : std::runtime_error("batch holds " + std::string(to_string(got)) +
                         " durations but the estimator needs " +
                         std::string(to_string(expected))) {}

ObservationBatch make_batch(std::vector<double> durations, BatchKind kind,
                            std::string source) {
  if (durations.empty()) throw EmptyBatch();
  for (std::size_t i = 0; i < durations.size(); ++i) {
    const double d = durations[i];
    if (!(d > 0.0) || !std::isfinite(d)) {
      throw std::invalid_argument("duration at index " + std::to_string(i) +
                                  " must be finite and > 0, got " + format_g12(d));
    }
  }
  return ObservationBatch{std::move(durations), kind, std::move(source)};
}

EstimateReport estimate_rate(const ObservationBatch& batch,
                             std::optional<PrecisionSpec> precision) {
  check_batch(batch, BatchKind::Interarrival);
  if (precision) validate(*precision);

  const auto n = static_cast<std::int64_t>(batch.durations.size());
  const double total = pairwise_sum(batch.durations);

  EstimateReport report;
  report.n_used = n;
  report.point = static_cast<double>(n) / total;

  // Twice the summed gaps, scaled by the true rate, is chi-square with 2n
  // degrees of freedom; inverting the equal-tail interval of that pivot
  // gives exact bounds on the rate.
  const double ci_delta = precision ? precision->delta : kDefaultCiDelta;
  const auto [q_lo, q_hi] = quantile_pair(n, ci_delta);
  report.ci_lower = q_lo / (2.0 * total);
  report.ci_upper = q_hi / (2.0 * total);
  report.ci_level = 1.0 - ci_delta;

  if (precision) {
    report.precision = precision;
    const SampleSizePlan plan = solve_sample_size(*precision, CriterionKind::RateExact);
    report.required_n = plan.n;
    report.meets_guarantee = n >= plan.n;
  }
  return report;
}

EstimateReport estimate_service_mean(const ObservationBatch& batch,
                                     std::optional<PrecisionSpec> precision,
                                     bool exact_criterion) {
  check_batch(batch, BatchKind::ServiceTime);
  if (precision) validate(*precision);

  const auto n = static_cast<std::int64_t>(batch.durations.size());
  const double total = pairwise_sum(batch.durations);
  const double mean = total / static_cast<double>(n);

  EstimateReport report;
  report.n_used = n;
  report.point = mean;

  // Same pivot as the rate case, inverted to the mean scale: twice the
  // summed durations over the true mean is chi-square with 2n degrees of
  // freedom, so the upper quantile bounds the mean from below.
  const double ci_delta = precision ? precision->delta : kDefaultCiDelta;
  const auto [q_lo, q_hi] = quantile_pair(n, ci_delta);
  report.ci_lower = 2.0 * total / q_hi;
  report.ci_upper = 2.0 * total / q_lo;
  report.ci_level = 1.0 - ci_delta;

  if (n >= 2) {
    // Descriptive spread of the durations.  This is a random quantity like
    // the mean itself; the accuracy contract comes from the plan, not from
    // this number.
    CompensatedSum sq;
    for (const double d : batch.durations) {
      const double dev = d - mean;
      sq.add(dev * dev);
    }
    report.stddev_estimate = std::sqrt(sq.value() / static_cast<double>(n - 1));
  }

  if (precision) {
    report.precision = precision;
    const CriterionKind kind = exact_criterion ? CriterionKind::ServiceExact
                                               : CriterionKind::ServiceConservative;
    const SampleSizePlan plan = solve_sample_size(*precision, kind);
    report.required_n = plan.n;
    report.meets_guarantee = n >= plan.n;
  }
  return report;
}

double rate_from_count(std::int64_t count, double window_seconds) {
  if (count < 0) {
    throw std::invalid_argument("rate_from_count: count must be >= 0, got " +
                                std::to_string(count));
  }
  if (!(window_seconds > 0.0) || !std::isfinite(window_seconds)) {
    throw std::invalid_argument("rate_from_count: window must be finite and > 0, got " +
                                format_g12(window_seconds));
  }
  return static_cast<double>(count) / window_seconds;
}

}  // namespace rte

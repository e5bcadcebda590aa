// Copyright 2026 The rte Authors
// SPDX-License-Identifier: Apache-2.0

#include "rte/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "rte/counter_rng.hpp"
#include "rte/format.hpp"
#include "rte/summation.hpp"

namespace rte {
namespace {

// Sum of one trial's draws: batch of `n` exponentials with the given mean
// from stream `trial` of the seed.  The scratch buffer is caller-owned so a
// worker thread allocates once, not per trial.
double trial_sum(const CounterRng& rng, std::int64_t n, double mean,
                 std::vector<double>& scratch) {
  for (std::int64_t i = 0; i < n; ++i) {
    scratch[static_cast<std::size_t>(i)] =
        exponential_from_uniform(mean, rng.uniform_at(static_cast<std::uint64_t>(i)));
  }
  return pairwise_sum(scratch);
}

// Splits [0, trials) into `parts` contiguous ranges and sums f(range) over
// them, optionally on worker threads.  f must be pure per range.
template <typename PerRange>
std::int64_t sum_over_ranges(std::int64_t trials, unsigned parts, PerRange f) {
  if (parts <= 1) return f(std::int64_t{0}, trials);

  std::vector<std::int64_t> partial(parts, 0);
  std::vector<std::thread> workers;
  workers.reserve(parts);
  const std::int64_t base = trials / parts;
  const std::int64_t extra = trials % parts;
  std::int64_t begin = 0;
  for (unsigned k = 0; k < parts; ++k) {
    const std::int64_t len = base + (static_cast<std::int64_t>(k) < extra ? 1 : 0);
    const std::int64_t end = begin + len;
    workers.emplace_back([&partial, k, begin, end, &f] { partial[k] = f(begin, end); });
    begin = end;
  }
  for (auto& w : workers) w.join();

  std::int64_t total = 0;
  for (const std::int64_t h : partial) total += h;
  return total;
}

}  // namespace

std::string_view to_string(SimulationTarget target) {
  switch (target) {
    case SimulationTarget::Rate: return "rate";
    case SimulationTarget::ServiceMean: return "service";
  }
  return "unknown";
}

void validate(const SimulationConfig& config) {
  if (!(config.true_param > 0.0) || !std::isfinite(config.true_param)) {
    throw std::invalid_argument("true_param must be finite and > 0, got " +
                                format_g12(config.true_param));
  }
  if (config.n_per_trial < 1) {
    throw std::invalid_argument("n_per_trial must be >= 1, got " +
                                std::to_string(config.n_per_trial));
  }
  if (config.trials < 1) {
    throw std::invalid_argument("trials must be >= 1, got " + std::to_string(config.trials));
  }
}

std::vector<double> sample_exponential(double mean, std::int64_t count, std::uint64_t seed) {
  if (!(mean > 0.0) || !std::isfinite(mean)) {
    throw std::invalid_argument("sample_exponential: mean must be finite and > 0, got " +
                                format_g12(mean));
  }
  if (count < 1) {
    throw std::invalid_argument("sample_exponential: count must be >= 1, got " +
                                std::to_string(count));
  }
  const CounterRng rng(seed, 0);
  std::vector<double> draws(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) {
    draws[static_cast<std::size_t>(i)] =
        exponential_from_uniform(mean, rng.uniform_at(static_cast<std::uint64_t>(i)));
  }
  return draws;
}

CoverageReport run_coverage(const SimulationConfig& config, const PrecisionSpec& precision,
                            unsigned threads) {
  validate(config);
  validate(precision);

  const bool rate = config.target == SimulationTarget::Rate;
  const double draw_mean = rate ? 1.0 / config.true_param : config.true_param;
  const std::int64_t n = config.n_per_trial;
  const double nd = static_cast<double>(n);

  unsigned parts = threads != 0 ? threads : std::thread::hardware_concurrency();
  parts = std::clamp<unsigned>(parts, 1u,
                               static_cast<unsigned>(std::min<std::int64_t>(config.trials, 64)));

  const auto hits_in = [&](std::int64_t t0, std::int64_t t1) {
    std::vector<double> scratch(static_cast<std::size_t>(n));
    std::int64_t hits = 0;
    for (std::int64_t t = t0; t < t1; ++t) {
      const CounterRng rng(config.seed, static_cast<std::uint64_t>(t));
      const double total = trial_sum(rng, n, draw_mean, scratch);
      const double estimate = rate ? nd / total : total / nd;
      const double rel = std::abs(estimate - config.true_param) / config.true_param;
      hits += rel < precision.epsilon ? 1 : 0;
    }
    return hits;
  };

  CoverageReport report;
  report.trials = config.trials;
  report.hits = sum_over_ranges(config.trials, parts, hits_in);
  report.empirical_coverage =
      static_cast<double>(report.hits) / static_cast<double>(report.trials);
  report.std_error = std::sqrt(report.empirical_coverage * (1.0 - report.empirical_coverage) /
                               static_cast<double>(report.trials));
  report.nominal_floor = 1.0 - precision.delta;
  report.pass = report.empirical_coverage >= report.nominal_floor - 3.0 * report.std_error;
  return report;
}

EventAlgebraReport verify_event_algebra(const SimulationConfig& config,
                                        const PrecisionSpec& precision) {
  validate(config);
  validate(precision);

  const bool rate = config.target == SimulationTarget::Rate;
  const double draw_mean = rate ? 1.0 / config.true_param : config.true_param;
  const std::int64_t n = config.n_per_trial;
  const double nd = static_cast<double>(n);
  const double eps = precision.epsilon;

  EventAlgebraReport report;
  report.trials = config.trials;

  std::vector<double> scratch(static_cast<std::size_t>(n));
  for (std::int64_t t = 0; t < config.trials; ++t) {
    const CounterRng rng(config.seed, static_cast<std::uint64_t>(t));
    const double total = trial_sum(rng, n, draw_mean, scratch);

    const double estimate = rate ? nd / total : total / nd;
    const bool estimator_hit =
        std::abs(estimate - config.true_param) / config.true_param < eps;

    if (rate) {
      // Exact correspondence: the estimator lands inside the relative
      // window iff the scaled sum lands inside the reciprocal interval.
      const double pivot = 2.0 * config.true_param * total;  // chi-square, 2n dof
      const bool window_hit = pivot > 2.0 * nd / (1.0 + eps) && pivot < 2.0 * nd / (1.0 - eps);
      report.window_hits += window_hit ? 1 : 0;
      report.window_mismatches += window_hit != estimator_hit ? 1 : 0;
    } else {
      // One-sided correspondence: the narrowed window is sufficient for a
      // hit, never necessary.
      const double pivot = 2.0 * total / config.true_param;  // chi-square, 2n dof
      const bool window_hit = pivot > 2.0 * nd * (1.0 + eps) / (1.0 + 2.0 * eps) &&
                              pivot < 2.0 * nd * (1.0 + eps);
      report.window_hits += window_hit ? 1 : 0;
      report.forward_violations += window_hit && !estimator_hit ? 1 : 0;
    }
  }
  report.passed = report.window_mismatches == 0 && report.forward_violations == 0;
  return report;
}

}  // namespace rte

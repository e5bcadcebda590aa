// Copyright 2026 The rte Authors
// SPDX-License-Identifier: Apache-2.0

#include "rte/planner.hpp"

#include <algorithm>
#include <cmath>

#include "rte/format.hpp"
#include "rte/special_functions.hpp"

namespace rte {

void validate(const PrecisionSpec& spec) {
  if (!(spec.epsilon > 0.0 && spec.epsilon < 1.0)) {
    throw std::invalid_argument("epsilon must lie in the open interval (0, 1), got " +
                                format_g12(spec.epsilon));
  }
  if (!(spec.delta > 0.0 && spec.delta < 1.0)) {
    throw std::invalid_argument("delta must lie in the open interval (0, 1), got " +
                                format_g12(spec.delta));
  }
}

std::string_view to_string(CriterionKind kind) {
  switch (kind) {
    case CriterionKind::RateExact: return "rate_exact";
    case CriterionKind::ServiceConservative: return "service_conservative";
    case CriterionKind::ServiceExact: return "service_exact";
  }
  return "unknown";
}

std::optional<CriterionKind> criterion_from_string(std::string_view name) {
  if (name == "rate_exact") return CriterionKind::RateExact;
  if (name == "service_conservative") return CriterionKind::ServiceConservative;
  if (name == "service_exact") return CriterionKind::ServiceExact;
  return std::nullopt;
}

NoSolutionWithinBudget::NoSolutionWithinBudget(std::int64_t budget, const PrecisionSpec& spec)
    : std::runtime_error("no sample size up to " + std::to_string(budget) +
                         " meets epsilon=" + format_g12(spec.epsilon) +
                         ", delta=" + format_g12(spec.delta)),
      budget_(budget) {}

double coverage_value(std::int64_t n, const PrecisionSpec& spec, CriterionKind kind) {
  if (n < 1) {
    throw std::invalid_argument("coverage_value: n must be >= 1, got " + std::to_string(n));
  }
  validate(spec);

  // Each criterion is a probability that a chi-square pivot with 2n degrees
  // of freedom lands in an interval; via the survival identity that is a
  // difference of two truncated Poisson sums.  poisson_tail is decreasing in
  // x, so the smaller argument carries the upper end of the window.
  const double nd = static_cast<double>(n);
  const double eps = spec.epsilon;
  double lo_arg = 0.0;
  double hi_arg = 0.0;
  switch (kind) {
    case CriterionKind::RateExact:
      lo_arg = nd / (1.0 + eps);
      hi_arg = nd / (1.0 - eps);
      break;
    case CriterionKind::ServiceConservative:
      lo_arg = nd * (1.0 + eps) / (1.0 + 2.0 * eps);
      hi_arg = nd * (1.0 + eps);
      break;
    case CriterionKind::ServiceExact:
      lo_arg = nd * (1.0 - eps);
      hi_arg = nd * (1.0 + eps);
      break;
  }
  const double value = poisson_tail({n, lo_arg}) - poisson_tail({n, hi_arg});
  return std::clamp(value, 0.0, 1.0);
}

SampleSizePlan solve_sample_size(const PrecisionSpec& spec, CriterionKind kind,
                                 std::int64_t max_n) {
  validate(spec);
  if (max_n < 1) {
    throw std::invalid_argument("solve_sample_size: max_n must be >= 1, got " +
                                std::to_string(max_n));
  }

  const double target = 1.0 - spec.delta;
  const auto satisfies = [&](std::int64_t n) {
    return coverage_value(n, spec, kind) >= target;
  };

  // Exponential doubling to find a satisfying upper end, then bisection on
  // the bracket.  lo always names a tested, failing n (0 = sentinel).
  std::int64_t lo = 0;
  std::int64_t hi = 1;
  while (hi < max_n && !satisfies(hi)) {
    lo = hi;
    hi = std::min(max_n, hi * 2);
  }
  if (!satisfies(hi)) throw NoSolutionWithinBudget(max_n, spec);

  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (satisfies(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }

  // Minimality certificate; on failure (possible only if coverage were
  // non-monotone across the bracket) fall back to a forward linear scan.
  std::int64_t n = hi;
  if (!(satisfies(n) && (n == 1 || !satisfies(n - 1)))) {
    n = 0;
    for (std::int64_t k = 1; k <= max_n; ++k) {
      if (satisfies(k)) {
        n = k;
        break;
      }
    }
    if (n == 0) throw NoSolutionWithinBudget(max_n, spec);
  }

  return SampleSizePlan{n, kind, coverage_value(n, spec, kind), spec};
}

std::vector<CurveRow> make_curve(std::span<const double> epsilon_grid,
                                 std::span<const double> delta_list,
                                 CriterionKind kind, std::int64_t max_n) {
  if (epsilon_grid.empty() || delta_list.empty()) {
    throw std::invalid_argument("make_curve: epsilon and delta grids must be non-empty");
  }
  for (const double e : epsilon_grid) validate(PrecisionSpec{e, 0.5});
  for (const double d : delta_list) validate(PrecisionSpec{0.5, d});

  std::vector<CurveRow> rows;
  rows.reserve(epsilon_grid.size() * delta_list.size());
  for (const double d : delta_list) {
    for (const double e : epsilon_grid) {
      CurveRow row{e, d, kind, std::nullopt, std::nullopt};
      try {
        const SampleSizePlan plan = solve_sample_size({e, d}, kind, max_n);
        row.n = plan.n;
        row.coverage_lb = plan.coverage_lb_at_n;
      } catch (const NoSolutionWithinBudget&) {
        // Budget overruns are data in a curve, not failures.
      }
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace rte

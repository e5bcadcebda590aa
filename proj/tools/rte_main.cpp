// Copyright 2026 The rte Authors
// SPDX-License-Identifier: Apache-2.0
//
// rte: sample-size planning, estimation, and coverage validation for
// arrival rates and service-time means observed as exponential durations.
//
// Exit codes:
//   0  success (validate: experiment passed)
//   2  invalid flags or argument validation failure
//   3  no sample size within the search budget
//   4  input could not be read or parsed
//   5  validate experiment failed its coverage floor
//   1  unexpected internal error

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rte/estimators.hpp"
#include "rte/format.hpp"
#include "rte/io.hpp"
#include "rte/monte_carlo.hpp"
#include "rte/planner.hpp"
#include "rte/special_functions.hpp"

namespace {

using namespace rte;

enum class OutputFormat { Human, Csv, Ndjson };

OutputFormat output_format_from_flag(const std::string& name) {
  if (name == "human") return OutputFormat::Human;
  if (name == "csv") return OutputFormat::Csv;
  if (name == "ndjson") return OutputFormat::Ndjson;
  throw std::invalid_argument("--format must be human, csv, or ndjson, got '" + name + "'");
}

SimulationTarget target_from_flag(const std::string& name) {
  if (name == "rate") return SimulationTarget::Rate;
  if (name == "service") return SimulationTarget::ServiceMean;
  throw std::invalid_argument("--target must be rate or service, got '" + name + "'");
}

// Maps (--target, --criterion) to a planning criterion.  For the rate
// target the exact criterion is the only one; asking for a conservative
// rate plan is a flag error.
CriterionKind criterion_from_flags(SimulationTarget target, const std::string& criterion) {
  if (target == SimulationTarget::Rate) {
    if (!criterion.empty() && criterion != "exact") {
      throw std::invalid_argument("--criterion " + criterion +
                                  " is not available for --target rate (rate plans are exact)");
    }
    return CriterionKind::RateExact;
  }
  if (criterion.empty() || criterion == "conservative") return CriterionKind::ServiceConservative;
  if (criterion == "exact") return CriterionKind::ServiceExact;
  throw std::invalid_argument("--criterion must be exact or conservative, got '" + criterion +
                              "'");
}

// Search budget: explicit flag wins, then the RTE_MAX_N environment
// variable, then the library default.
std::int64_t resolve_budget(std::optional<std::int64_t> flag) {
  if (flag) {
    if (*flag < 1) {
      throw std::invalid_argument("--max-n must be >= 1, got " + std::to_string(*flag));
    }
    return *flag;
  }
  if (const char* env = std::getenv("RTE_MAX_N")) {
    const std::string text(env);
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || value < 1) {
      throw std::invalid_argument("RTE_MAX_N must be a positive integer, got '" + text + "'");
    }
    return value;
  }
  return kDefaultMaxSampleSize;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }
const char* true_false(bool b) { return b ? "true" : "false"; }

// ---------------------------------------------------------------- plan --

struct PlanOptions {
  std::string target;
  std::string criterion;
  std::string format = "human";
  double epsilon = 0.0;
  double delta = 0.0;
  std::optional<std::int64_t> max_n;
};

int run_plan(const PlanOptions& opt) {
  const SimulationTarget target = target_from_flag(opt.target);
  const CriterionKind kind = criterion_from_flags(target, opt.criterion);
  const OutputFormat format = output_format_from_flag(opt.format);
  const PrecisionSpec spec{opt.epsilon, opt.delta};
  const SampleSizePlan plan = solve_sample_size(spec, kind, resolve_budget(opt.max_n));

  std::ostringstream out;
  if (format == OutputFormat::Human) {
    out << "criterion: " << to_string(plan.criterion) << '\n'
        << "epsilon: " << format_g12(spec.epsilon) << '\n'
        << "delta: " << format_g12(spec.delta) << '\n'
        << "n: " << plan.n << '\n'
        << "coverage_lb: " << format_g12(plan.coverage_lb_at_n) << '\n';
  } else {
    const CurveRow row{spec.epsilon, spec.delta, kind, plan.n, plan.coverage_lb_at_n};
    emit_table({&row, 1},
               format == OutputFormat::Csv ? TableFormat::Csv : TableFormat::Ndjson, out);
  }
  std::cout << out.str();
  return 0;
}

// ------------------------------------------------------------ estimate --

struct EstimateOptions {
  std::string target;
  std::string input;
  std::string input_format = "durations_csv";
  std::string unit = "s";
  std::string criterion;
  std::optional<double> epsilon;
  std::optional<double> delta;
};

int run_estimate(const EstimateOptions& opt) {
  const SimulationTarget target = target_from_flag(opt.target);
  if (opt.epsilon.has_value() != opt.delta.has_value()) {
    throw std::invalid_argument("--epsilon and --delta must be given together");
  }

  const auto format = input_format_from_string(opt.input_format);
  if (!format) {
    throw std::invalid_argument(
        "--format must be durations_csv, timestamps_csv, or ndjson, got '" + opt.input_format +
        "'");
  }
  const auto unit = time_unit_from_string(opt.unit);
  if (!unit) {
    throw std::invalid_argument("--unit must be s, ms, or us, got '" + opt.unit + "'");
  }

  std::optional<PrecisionSpec> precision;
  if (opt.epsilon) precision = PrecisionSpec{*opt.epsilon, *opt.delta};

  const bool rate = target == SimulationTarget::Rate;
  const BatchKind kind = rate ? BatchKind::Interarrival : BatchKind::ServiceTime;
  const ObservationBatch batch = load_batch(InputSpec{opt.input, *format, *unit}, kind);

  EstimateReport report;
  if (rate) {
    if (!opt.criterion.empty() && opt.criterion != "exact") {
      throw std::invalid_argument("--criterion " + opt.criterion +
                                  " is not available for --target rate");
    }
    report = estimate_rate(batch, precision);
  } else {
    const bool exact = criterion_from_flags(target, opt.criterion) == CriterionKind::ServiceExact;
    report = estimate_service_mean(batch, precision, exact);
  }

  std::ostringstream out;
  out << "target: " << to_string(target) << '\n'
      << "source: " << batch.source << '\n'
      << "n: " << report.n_used << '\n'
      << "point: " << format_g12(report.point) << (rate ? " events/s" : " s") << '\n';
  if (report.stddev_estimate) {
    out << "stddev: " << format_g12(*report.stddev_estimate)
        << " s (descriptive; a random quantity, not an accuracy bound)\n";
  }
  out << "ci_level: " << format_g12(report.ci_level) << '\n'
      << "ci_lower: " << format_g12(report.ci_lower) << '\n'
      << "ci_upper: " << format_g12(report.ci_upper) << '\n';
  if (report.precision) {
    out << "epsilon: " << format_g12(report.precision->epsilon) << '\n'
        << "delta: " << format_g12(report.precision->delta) << '\n'
        << "required_n: " << *report.required_n << '\n'
        << "meets_guarantee: " << yes_no(*report.meets_guarantee) << '\n';
    if (!*report.meets_guarantee) {
      out << "warning: guarantee not met; collect at least " << *report.required_n
          << " observations for the requested precision\n";
    }
  }
  std::cout << out.str();
  return 0;
}

// ------------------------------------------------------------ validate --

struct ValidateOptions {
  std::string target;
  std::string criterion;
  std::string format = "human";
  double true_param = 0.0;
  double epsilon = 0.0;
  double delta = 0.0;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  std::optional<std::int64_t> n;
  std::optional<std::int64_t> max_n;
  unsigned threads = 0;
};

int run_validate(const ValidateOptions& opt) {
  const SimulationTarget target = target_from_flag(opt.target);
  const CriterionKind kind = criterion_from_flags(target, opt.criterion);
  const OutputFormat format = output_format_from_flag(opt.format);
  const PrecisionSpec spec{opt.epsilon, opt.delta};
  validate(spec);

  std::int64_t n = 0;
  if (opt.n) {
    if (*opt.n < 1) throw std::invalid_argument("--n must be >= 1, got " + std::to_string(*opt.n));
    n = *opt.n;
  } else {
    n = solve_sample_size(spec, kind, resolve_budget(opt.max_n)).n;
  }

  SimulationConfig config{opt.true_param, n, opt.trials, opt.seed, target};
  const CoverageReport report = run_coverage(config, spec, opt.threads);

  std::ostringstream out;
  if (format == OutputFormat::Human) {
    out << "target: " << to_string(target) << '\n'
        << "criterion: " << to_string(kind) << '\n'
        << "true_param: " << format_g12(opt.true_param) << '\n'
        << "epsilon: " << format_g12(spec.epsilon) << '\n'
        << "delta: " << format_g12(spec.delta) << '\n'
        << "n_per_trial: " << n << '\n'
        << "trials: " << report.trials << '\n'
        << "seed: " << opt.seed << '\n'
        << "hits: " << report.hits << '\n'
        << "empirical_coverage: " << format_g12(report.empirical_coverage) << '\n'
        << "std_error: " << format_g12(report.std_error) << '\n'
        << "nominal_floor: " << format_g12(report.nominal_floor) << '\n'
        << "pass: " << yes_no(report.pass) << '\n';
  } else if (format == OutputFormat::Csv) {
    out << "target,criterion,true_param,epsilon,delta,n_per_trial,trials,seed,hits,"
           "empirical_coverage,std_error,nominal_floor,pass\n"
        << to_string(target) << ',' << to_string(kind) << ',' << format_g12(opt.true_param) << ','
        << format_g12(spec.epsilon) << ',' << format_g12(spec.delta) << ',' << n << ','
        << report.trials << ',' << opt.seed << ',' << report.hits << ','
        << format_g12(report.empirical_coverage) << ',' << format_g12(report.std_error) << ','
        << format_g12(report.nominal_floor) << ',' << true_false(report.pass) << '\n';
  } else {
    out << "{\"target\":\"" << to_string(target) << "\",\"criterion\":\"" << to_string(kind)
        << "\",\"true_param\":" << format_g12(opt.true_param)
        << ",\"epsilon\":" << format_g12(spec.epsilon) << ",\"delta\":" << format_g12(spec.delta)
        << ",\"n_per_trial\":" << n << ",\"trials\":" << report.trials << ",\"seed\":" << opt.seed
        << ",\"hits\":" << report.hits
        << ",\"empirical_coverage\":" << format_g12(report.empirical_coverage)
        << ",\"std_error\":" << format_g12(report.std_error)
        << ",\"nominal_floor\":" << format_g12(report.nominal_floor)
        << ",\"pass\":" << true_false(report.pass) << "}\n";
  }
  std::cout << out.str();
  return report.pass ? 0 : 5;
}

// --------------------------------------------------------------- curve --

struct CurveOptions {
  std::string target;
  std::string criterion;
  std::string format = "csv";
  std::string output = "-";
  double epsilon_from = 0.0;
  double epsilon_to = 0.0;
  double epsilon_step = 0.0;
  std::vector<double> deltas;
  std::optional<std::int64_t> max_n;
};

int run_curve(const CurveOptions& opt) {
  const SimulationTarget target = target_from_flag(opt.target);
  const CriterionKind kind = criterion_from_flags(target, opt.criterion);
  if (opt.format != "csv" && opt.format != "ndjson") {
    throw std::invalid_argument("--format must be csv or ndjson, got '" + opt.format + "'");
  }
  const TableFormat format = *table_format_from_string(opt.format);

  if (!(opt.epsilon_step > 0.0)) {
    throw std::invalid_argument("--epsilon-step must be > 0, got " +
                                format_g12(opt.epsilon_step));
  }
  if (opt.epsilon_from > opt.epsilon_to) {
    throw std::invalid_argument("--epsilon-from must not exceed --epsilon-to");
  }

  // Index-based grid so step accumulation cannot drop the final point; the
  // tiny slack absorbs representation error in from + k * step.
  std::vector<double> epsilons;
  for (std::int64_t k = 0;; ++k) {
    const double e = opt.epsilon_from + static_cast<double>(k) * opt.epsilon_step;
    if (e > opt.epsilon_to + opt.epsilon_step * 1e-9) break;
    epsilons.push_back(e);
  }
  if (opt.deltas.empty()) throw std::invalid_argument("--deltas must list at least one value");

  const std::vector<CurveRow> rows = make_curve(epsilons, opt.deltas, kind,
                                                resolve_budget(opt.max_n));

  std::ostringstream out;
  emit_table(rows, format, out);
  if (opt.output == "-") {
    std::cout << out.str();
  } else {
    std::ofstream file(opt.output);
    if (!file) throw FileOpenError(opt.output);
    file << out.str();
    if (!file) throw IoError(0, "failed writing output file: " + opt.output);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Sample-size planning and validated estimation for event rates and\n"
      "service-time means observed as exponential durations."};
  app.require_subcommand(1);

  PlanOptions plan_opt;
  CLI::App* plan = app.add_subcommand(
      "plan", "Smallest sample size meeting a relative-error / confidence contract");
  plan->add_option("--target", plan_opt.target, "rate|service")->required();
  plan->add_option("--epsilon", plan_opt.epsilon, "relative half-width in (0,1)")->required();
  plan->add_option("--delta", plan_opt.delta, "miss probability in (0,1)")->required();
  plan->add_option("--criterion", plan_opt.criterion, "exact|conservative (service only)");
  plan->add_option("--max-n", plan_opt.max_n, "search budget (default 100000000 or RTE_MAX_N)");
  plan->add_option("--format", plan_opt.format, "human|csv|ndjson (default human)");

  EstimateOptions est_opt;
  CLI::App* estimate = app.add_subcommand(
      "estimate", "Point estimate with confidence interval from observed durations");
  estimate->add_option("--target", est_opt.target, "rate|service")->required();
  estimate->add_option("--input", est_opt.input, "input path, or - for stdin")->required();
  estimate->add_option("--format", est_opt.input_format,
                       "durations_csv|timestamps_csv|ndjson (default durations_csv)");
  estimate->add_option("--unit", est_opt.unit, "s|ms|us (default s)");
  estimate->add_option("--epsilon", est_opt.epsilon, "relative half-width in (0,1)");
  estimate->add_option("--delta", est_opt.delta, "miss probability in (0,1)");
  estimate->add_option("--criterion", est_opt.criterion, "exact|conservative (service only)");

  ValidateOptions val_opt;
  CLI::App* validate_cmd = app.add_subcommand(
      "validate", "Monte Carlo check that the planned sample size delivers its coverage");
  validate_cmd->add_option("--target", val_opt.target, "rate|service")->required();
  validate_cmd->add_option("--true-param", val_opt.true_param,
                           "true rate (events/s) or true mean (s)")
      ->required();
  validate_cmd->add_option("--epsilon", val_opt.epsilon, "relative half-width in (0,1)")
      ->required();
  validate_cmd->add_option("--delta", val_opt.delta, "miss probability in (0,1)")->required();
  validate_cmd->add_option("--trials", val_opt.trials, "number of simulated batches")->required();
  validate_cmd->add_option("--seed", val_opt.seed, "root seed (required: runs are reproducible)")
      ->required();
  validate_cmd->add_option("--n", val_opt.n, "draws per trial (default: the solved plan)");
  validate_cmd->add_option("--criterion", val_opt.criterion, "exact|conservative (service only)");
  validate_cmd->add_option("--max-n", val_opt.max_n, "plan search budget when --n is omitted");
  validate_cmd->add_option("--threads", val_opt.threads,
                           "worker threads, 0 = hardware (result is thread-count independent)");
  validate_cmd->add_option("--format", val_opt.format, "human|csv|ndjson (default human)");

  CurveOptions curve_opt;
  CLI::App* curve = app.add_subcommand(
      "curve", "Sample-size table over an epsilon grid for one or more deltas");
  curve->add_option("--target", curve_opt.target, "rate|service")->required();
  curve->add_option("--epsilon-from", curve_opt.epsilon_from, "grid start, in (0,1)")->required();
  curve->add_option("--epsilon-to", curve_opt.epsilon_to, "grid end, in (0,1)")->required();
  curve->add_option("--epsilon-step", curve_opt.epsilon_step, "grid step, > 0")->required();
  curve->add_option("--deltas", curve_opt.deltas, "comma-separated miss probabilities")
      ->required()
      ->delimiter(',');
  curve->add_option("--criterion", curve_opt.criterion, "exact|conservative (service only)");
  curve->add_option("--max-n", curve_opt.max_n, "per-cell search budget");
  curve->add_option("--format", curve_opt.format, "csv|ndjson (default csv)");
  curve->add_option("--output", curve_opt.output, "output path, or - for stdout (default -)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (plan->parsed()) return run_plan(plan_opt);
    if (estimate->parsed()) return run_estimate(est_opt);
    if (validate_cmd->parsed()) return run_validate(val_opt);
    if (curve->parsed()) return run_curve(curve_opt);
    std::cerr << "error: no subcommand\n";
    return 2;
  } catch (const NoSolutionWithinBudget& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

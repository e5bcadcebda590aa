// Copyright 2026 The rte Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef RTE_IO_HPP
#define RTE_IO_HPP

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rte/estimators.hpp"
#include "rte/planner.hpp"

namespace rte {

/// Shape of an observation input.
enum class InputFormat {
  DurationsCsv,   ///< one duration per line
  TimestampsCsv,  ///< one strictly increasing timestamp per line; durations
                  ///< are the first differences
  Ndjson,         ///< one JSON object per line with a "duration" or
                  ///< "timestamp" number field
};

/// Unit the input numbers are expressed in.  Values are converted to
/// seconds by shifting the decimal exponent of the source text, so the
/// conversion is exact in the decimal sense (no binary rescaling error).
enum class TimeUnit { Seconds, Milliseconds, Microseconds };

std::string_view to_string(InputFormat format);
std::string_view to_string(TimeUnit unit);
std::optional<InputFormat> input_format_from_string(std::string_view name);
std::optional<TimeUnit> time_unit_from_string(std::string_view name);

/// Where and how to read observations.
struct InputSpec {
  std::string path;  ///< file path, or "-" for standard input
  InputFormat format = InputFormat::DurationsCsv;
  TimeUnit unit = TimeUnit::Seconds;
};

/// Base class of every input-side failure; carries the 1-based line number
/// (0 when the failure is not tied to a line, e.g. an unopenable file).
class IoError : public std::runtime_error {
 public:
  IoError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class ParseError : public IoError {
 public:
  using IoError::IoError;
};

class NonMonotoneTimestamps : public IoError {
 public:
  explicit NonMonotoneTimestamps(std::size_t line);
};

class NonPositiveDuration : public IoError {
 public:
  NonPositiveDuration(std::size_t line, double value);
};

class EmptyInput : public IoError {
 public:
  EmptyInput() : IoError(0, "input contains no observations") {}
};

class FileOpenError : public IoError {
 public:
  explicit FileOpenError(const std::string& path)
      : IoError(0, "cannot open input file: " + path) {}
};

/// Reads, converts, and validates a batch of durations.  Throws one of the
/// IoError subclasses above on any malformed, non-positive, or empty input.
ObservationBatch load_batch(const InputSpec& spec, BatchKind kind);

/// Stream form of load_batch for callers that already hold the data;
/// `spec.path` is used only as the provenance label.
ObservationBatch load_batch(std::istream& in, const InputSpec& spec, BatchKind kind);

/// Output encodings for planning tables.
enum class TableFormat { Csv, Ndjson };

std::optional<TableFormat> table_format_from_string(std::string_view name);

/// Writes rows with columns epsilon, delta, criterion, n, coverage_lb,
/// status.  Doubles are rendered at 12 significant digits.  Rows whose
/// search exceeded the budget carry status "over_budget" with empty (CSV)
/// or null (NDJSON) n and coverage_lb; all other rows carry status "ok".
void emit_table(std::span<const CurveRow> rows, TableFormat format, std::ostream& out);

/// Inverse of emit_table.  Throws ParseError (with line numbers) on any
/// structural or numeric defect, including a status field inconsistent
/// with the presence of n / coverage_lb.
std::vector<CurveRow> parse_table(std::istream& in, TableFormat format);

}  // namespace rte

#endif  // RTE_IO_HPP

// Copyright 2026 The rte Authors
// SPDX-License-Identifier: Apache-2.0

#include "rte/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <ostream>
#include <utility>

#include <json.hpp>

#include "rte/format.hpp"

namespace rte {
namespace {

using nlohmann::json;

constexpr std::string_view kTableHeader = "epsilon,delta,criterion,n,coverage_lb,status";

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

int exponent_shift(TimeUnit unit) {
  switch (unit) {
    case TimeUnit::Seconds: return 0;
    case TimeUnit::Milliseconds: return -3;
    case TimeUnit::Microseconds: return -6;
  }
  return 0;
}

// Rewrites a decimal token with its exponent shifted, e.g. ("0.1", -3) ->
// "0.1e-3".  This is how unit conversion stays exact in the decimal sense:
// the digits are untouched and only the parse target changes.  A token
// whose exponent field does not parse is returned unchanged so the caller's
// number parse reports the malformed line.
std::string shift_decimal_exponent(std::string_view token, int shift) {
  if (shift == 0) return std::string(token);
  const std::size_t epos = token.find_first_of("eE");
  if (epos == std::string_view::npos) {
    return std::string(token) + 'e' + std::to_string(shift);
  }
  const std::string_view exp_text = token.substr(epos + 1);
  int exp = 0;
  const char* first = exp_text.data();
  const char* last = exp_text.data() + exp_text.size();
  if (!exp_text.empty() && exp_text.front() == '+') ++first;  // from_chars has no '+'
  const auto [ptr, ec] = std::from_chars(first, last, exp);
  if (ec != std::errc{} || ptr != last) return std::string(token);
  return std::string(token.substr(0, epos)) + 'e' + std::to_string(exp + shift);
}

// Strict full-token decimal parse; rejects inf/nan and trailing junk.
double parse_decimal(std::string_view token, std::size_t line) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || !std::isfinite(value)) {
    throw ParseError(line, "line " + std::to_string(line) +
                               ": not a finite decimal number: '" + std::string(token) + "'");
  }
  return value;
}

double parse_scaled(std::string_view token, int shift, std::size_t line) {
  return parse_decimal(shift_decimal_exponent(token, shift), line);
}

void append_duration(std::vector<double>& out, double value, std::size_t line) {
  if (!(value > 0.0)) throw NonPositiveDuration(line, value);
  out.push_back(value);
}

std::vector<double> read_durations_csv(std::istream& in, int shift) {
  std::vector<double> out;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string_view token = trim(raw);
    if (token.empty()) continue;
    append_duration(out, parse_scaled(token, shift, line), line);
  }
  return out;
}

std::vector<double> read_timestamps_csv(std::istream& in, int shift) {
  std::vector<double> out;
  std::string raw;
  std::size_t line = 0;
  bool have_prev = false;
  double prev = 0.0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string_view token = trim(raw);
    if (token.empty()) continue;
    const double ts = parse_scaled(token, shift, line);
    if (have_prev) {
      if (ts < prev) throw NonMonotoneTimestamps(line);
      const double gap = ts - prev;
      if (!(gap > 0.0)) throw NonPositiveDuration(line, gap);
      out.push_back(gap);
    }
    prev = ts;
    have_prev = true;
  }
  return out;
}

std::vector<double> read_ndjson(std::istream& in, int shift) {
  std::vector<double> out;
  std::string raw;
  std::size_t line = 0;
  bool duration_mode = false;
  bool mode_known = false;
  while (std::getline(in, raw)) {
    ++line;
    if (trim(raw).empty()) continue;
    const json j = json::parse(raw, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object()) {
      throw ParseError(line, "line " + std::to_string(line) + ": not a JSON object");
    }
    if (!mode_known) {
      if (j.contains("duration")) {
        duration_mode = true;
      } else if (j.contains("timestamp")) {
        duration_mode = false;
      } else {
        throw ParseError(line, "line " + std::to_string(line) +
                                   ": object has neither 'duration' nor 'timestamp'");
      }
      mode_known = true;
    }
    const char* field = duration_mode ? "duration" : "timestamp";
    if (!j.contains(field) || !j.at(field).is_number()) {
      throw ParseError(line, "line " + std::to_string(line) + ": expected a number field '" +
                                 field + "'");
    }
    // Scale through the value's shortest decimal rendering so the unit
    // conversion matches the CSV path digit for digit.
    const double value = parse_scaled(j.at(field).dump(), shift, line);
    if (duration_mode) {
      append_duration(out, value, line);
    } else {
      out.push_back(value);  // timestamps; differenced below
    }
  }
  if (!duration_mode && !out.empty()) {
    std::vector<double> gaps;
    gaps.reserve(out.size() - 1);
    for (std::size_t i = 1; i < out.size(); ++i) {
      // Re-reporting the exact source line would require tracking one per
      // value; the index-based position is still 1-based and unambiguous
      // because blank NDJSON lines are rare in practice.
      if (out[i] < out[i - 1]) throw NonMonotoneTimestamps(i + 1);
      const double gap = out[i] - out[i - 1];
      if (!(gap > 0.0)) throw NonPositiveDuration(i + 1, gap);
      gaps.push_back(gap);
    }
    return gaps;
  }
  return out;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

std::int64_t parse_count(std::string_view token, std::size_t line) {
  std::int64_t value = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || value < 1) {
    throw ParseError(line, "line " + std::to_string(line) + ": not a positive integer: '" +
                               std::string(token) + "'");
  }
  return value;
}

CurveRow parse_table_csv_row(std::string_view text, std::size_t line) {
  const auto fields = split_csv(text);
  if (fields.size() != 6) {
    throw ParseError(line, "line " + std::to_string(line) + ": expected 6 fields, got " +
                               std::to_string(fields.size()));
  }
  CurveRow row;
  row.epsilon = parse_decimal(fields[0], line);
  row.delta = parse_decimal(fields[1], line);
  const auto kind = criterion_from_string(fields[2]);
  if (!kind) {
    throw ParseError(line, "line " + std::to_string(line) + ": unknown criterion: '" +
                               std::string(fields[2]) + "'");
  }
  row.criterion = *kind;
  const std::string_view status = fields[5];
  if (status == "ok") {
    row.n = parse_count(fields[3], line);
    row.coverage_lb = parse_decimal(fields[4], line);
  } else if (status == "over_budget") {
    if (!fields[3].empty() || !fields[4].empty()) {
      throw ParseError(line, "line " + std::to_string(line) +
                                 ": over_budget row must leave n and coverage_lb empty");
    }
  } else {
    throw ParseError(line, "line " + std::to_string(line) + ": unknown status: '" +
                               std::string(status) + "'");
  }
  return row;
}

CurveRow parse_table_json_row(const json& j, std::size_t line) {
  for (const char* key : {"epsilon", "delta", "criterion", "status"}) {
    if (!j.contains(key)) {
      throw ParseError(line, "line " + std::to_string(line) + ": missing field '" + key + "'");
    }
  }
  if (!j.at("epsilon").is_number() || !j.at("delta").is_number() ||
      !j.at("criterion").is_string() || !j.at("status").is_string()) {
    throw ParseError(line, "line " + std::to_string(line) + ": field has the wrong type");
  }
  CurveRow row;
  row.epsilon = j.at("epsilon").get<double>();
  row.delta = j.at("delta").get<double>();
  const auto kind = criterion_from_string(j.at("criterion").get<std::string>());
  if (!kind) {
    throw ParseError(line, "line " + std::to_string(line) + ": unknown criterion: '" +
                               j.at("criterion").get<std::string>() + "'");
  }
  row.criterion = *kind;
  const std::string status = j.at("status").get<std::string>();
  const bool n_present = j.contains("n") && !j.at("n").is_null();
  const bool cov_present = j.contains("coverage_lb") && !j.at("coverage_lb").is_null();
  if (status == "ok") {
    if (!n_present || !cov_present || !j.at("n").is_number_integer() ||
        !j.at("coverage_lb").is_number()) {
      throw ParseError(line, "line " + std::to_string(line) +
                                 ": ok row needs integer 'n' and number 'coverage_lb'");
    }
    row.n = j.at("n").get<std::int64_t>();
    if (*row.n < 1) {
      throw ParseError(line, "line " + std::to_string(line) + ": n must be >= 1");
    }
    row.coverage_lb = j.at("coverage_lb").get<double>();
  } else if (status == "over_budget") {
    if (n_present || cov_present) {
      throw ParseError(line, "line " + std::to_string(line) +
                                 ": over_budget row must carry null n and coverage_lb");
    }
  } else {
    throw ParseError(line, "line " + std::to_string(line) + ": unknown status: '" + status + "'");
  }
  return row;
}

}  // namespace

IoError::IoError(std::size_t line, const std::string& message)
    : std::runtime_error(message), line_(line) {}

NonMonotoneTimestamps::NonMonotoneTimestamps(std::size_t line)
    : IoError(line, "line " + std::to_string(line) + ": timestamps must be strictly increasing") {}

NonPositiveDuration::NonPositiveDuration(std::size_t line, double value)
    : IoError(line, "line " + std::to_string(line) + ": duration must be > 0, got " +
                        format_g12(value)) {}

std::string_view to_string(InputFormat format) {
  switch (format) {
    case InputFormat::DurationsCsv: return "durations_csv";
    case InputFormat::TimestampsCsv: return "timestamps_csv";
    case InputFormat::Ndjson: return "ndjson";
  }
  return "unknown";
}

std::string_view to_string(TimeUnit unit) {
  switch (unit) {
    case TimeUnit::Seconds: return "s";
    case TimeUnit::Milliseconds: return "ms";
    case TimeUnit::Microseconds: return "us";
  }
  return "unknown";
}

std::optional<InputFormat> input_format_from_string(std::string_view name) {
  if (name == "durations_csv") return InputFormat::DurationsCsv;
  if (name == "timestamps_csv") return InputFormat::TimestampsCsv;
  if (name == "ndjson") return InputFormat::Ndjson;
  return std::nullopt;
}

std::optional<TimeUnit> time_unit_from_string(std::string_view name) {
  if (name == "s") return TimeUnit::Seconds;
  if (name == "ms") return TimeUnit::Milliseconds;
  if (name == "us") return TimeUnit::Microseconds;
  return std::nullopt;
}

std::optional<TableFormat> table_format_from_string(std::string_view name) {
  if (name == "csv") return TableFormat::Csv;
  if (name == "ndjson") return TableFormat::Ndjson;
  return std::nullopt;
}

ObservationBatch load_batch(std::istream& in, const InputSpec& spec, BatchKind kind) {
  const int shift = exponent_shift(spec.unit);
  std::vector<double> durations;
  switch (spec.format) {
    case InputFormat::DurationsCsv:
      durations = read_durations_csv(in, shift);
      break;
    case InputFormat::TimestampsCsv:
      durations = read_timestamps_csv(in, shift);
      break;
    case InputFormat::Ndjson:
      durations = read_ndjson(in, shift);
      break;
  }
  if (durations.empty()) throw EmptyInput();
  return make_batch(std::move(durations), kind, spec.path);
}

ObservationBatch load_batch(const InputSpec& spec, BatchKind kind) {
  if (spec.path == "-") return load_batch(std::cin, spec, kind);
  std::ifstream file(spec.path);
  if (!file) throw FileOpenError(spec.path);
  return load_batch(file, spec, kind);
}

void emit_table(std::span<const CurveRow> rows, TableFormat format, std::ostream& out) {
  if (format == TableFormat::Csv) {
    out << kTableHeader << '\n';
    for (const CurveRow& row : rows) {
      out << format_g12(row.epsilon) << ',' << format_g12(row.delta) << ','
          << to_string(row.criterion) << ',';
      if (row.n) out << *row.n;
      out << ',';
      if (row.coverage_lb) out << format_g12(*row.coverage_lb);
      out << ',' << (row.n ? "ok" : "over_budget") << '\n';
    }
    return;
  }
  for (const CurveRow& row : rows) {
    // Hand-assembled so doubles keep the same 12-digit rendering as CSV.
    out << "{\"epsilon\":" << format_g12(row.epsilon) << ",\"delta\":" << format_g12(row.delta)
        << ",\"criterion\":\"" << to_string(row.criterion) << "\",\"n\":";
    if (row.n) {
      out << *row.n;
    } else {
      out << "null";
    }
    out << ",\"coverage_lb\":";
    if (row.coverage_lb) {
      out << format_g12(*row.coverage_lb);
    } else {
      out << "null";
    }
    out << ",\"status\":\"" << (row.n ? "ok" : "over_budget") << "\"}\n";
  }
}

std::vector<CurveRow> parse_table(std::istream& in, TableFormat format) {
  std::vector<CurveRow> rows;
  std::string raw;
  std::size_t line = 0;
  bool saw_header = false;
  while (std::getline(in, raw)) {
    ++line;
    const std::string_view text = trim(raw);
    if (text.empty()) continue;
    if (format == TableFormat::Csv) {
      if (!saw_header) {
        if (text != kTableHeader) {
          throw ParseError(line, "line " + std::to_string(line) + ": expected header '" +
                                     std::string(kTableHeader) + "'");
        }
        saw_header = true;
        continue;
      }
      rows.push_back(parse_table_csv_row(text, line));
    } else {
      const json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
      if (j.is_discarded() || !j.is_object()) {
        throw ParseError(line, "line " + std::to_string(line) + ": not a JSON object");
      }
      rows.push_back(parse_table_json_row(j, line));
    }
  }
  if (format == TableFormat::Csv && !saw_header) {
    throw ParseError(0, "table is missing its header line");
  }
  return rows;
}

}  // namespace rte

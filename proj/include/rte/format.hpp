// Copyright 2026 The rte Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef RTE_FORMAT_HPP
#define RTE_FORMAT_HPP

#include <cstdio>
#include <string>

namespace rte {

/// Shortest-meaningful decimal rendering used for all numeric output:
/// 12 significant digits, plain or scientific as %g decides.  Twelve digits
/// round-trip every value this project emits for human or machine use.
inline std::string format_g12(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return std::string(buf);
}

}  // namespace rte

#endif  // RTE_FORMAT_HPP

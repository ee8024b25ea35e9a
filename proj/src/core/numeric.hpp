// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The jiaf Authors

#pragma once

#include <cmath>
#include <span>
#include <string>

namespace jiaf {

/// Neumaier-compensated sum. Sequential, so results are reproducible bit for bit.
inline double stable_sum(std::span<const double> values) {
  double sum = 0.0;
  double carry = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }
  return sum + carry;
}

/// `%.17g`-style text (17 significant digits), independent of the process
/// locale. Always parses back to the identical double.
std::string format_double(double value);
// Shortest form that still round-trips; for human-facing text.
std::string format_short(double value);

/// Locale-independent strict parse; the whole string must be consumed.
bool parse_double(std::string_view text, double& out);

}  // namespace jiaf

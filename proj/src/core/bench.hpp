// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The jiaf Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "core/dataset.hpp"

namespace jiaf {

struct BenchRow {
  std::size_t n = 0;
  double median_s = 0.0;
  double p95_s = 0.0;
};

/// Wall time of single-segment feature extraction on a synthetic segment of
/// `n` samples (64 kHz), after one untimed warm-up call.
BenchRow bench_extraction(std::size_t n, std::size_t runs, Method method,
                          std::uint64_t seed);

/// Least-squares slope of log(time) against log(N log N); about 1 for
/// O(N log N) growth.
double scaling_exponent(std::span<const BenchRow> rows);

/// Nearest-rank percentile, q in [0, 1].
double percentile(std::vector<double> values, double q);

}  // namespace jiaf

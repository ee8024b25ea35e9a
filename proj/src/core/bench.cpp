// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The jiaf Authors

#include "core/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "core/error.hpp"
#include "core/stft_baseline.hpp"
#include "core/synth.hpp"

namespace jiaf {

double percentile(std::vector<double> values, double q) {
  if (values.empty()) {
    return 0.0;
  }
  std::sort(values.begin(), values.end());
  const auto rank = static_cast<std::size_t>(
      std::ceil(q * static_cast<double>(values.size())));
  return values[std::clamp<std::size_t>(rank, 1, values.size()) - 1];
}

BenchRow bench_extraction(std::size_t n, std::size_t runs, Method method,
                          std::uint64_t seed) {
  if (runs == 0) {
    throw Error(ErrorKind::config, "benchmark needs at least one run");
  }
  SynthRecipe recipe;
  recipe.length = n;
  const Signal signal = synth_one(recipe, FaultClass::combined, seed, 0).signal;

  auto run_once = [&] {
    return method == Method::stft ? extract_stft_features(signal)
                                  : extract_features(signal);
  };
  volatile double sink = run_once().sc;

  std::vector<double> times;
  times.reserve(runs);
  for (std::size_t r = 0; r < runs; ++r) {
    const auto start = std::chrono::steady_clock::now();
    sink = sink + run_once().sc;
    const auto stop = std::chrono::steady_clock::now();
    times.push_back(std::chrono::duration<double>(stop - start).count());
  }
  return BenchRow{n, percentile(times, 0.5), percentile(times, 0.95)};
}

double scaling_exponent(std::span<const BenchRow> rows) {
  const double count = static_cast<double>(rows.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& r : rows) {
    const double n = static_cast<double>(r.n);
    const double x = std::log(n * std::log2(n));
    const double y = std::log(r.median_s);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = count * sxx - sx * sx;
  return denom == 0.0 ? 0.0 : (count * sxy - sx * sy) / denom;
}

}  // namespace jiaf

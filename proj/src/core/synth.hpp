// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The jiaf Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "core/analytic_signal.hpp"

namespace jiaf {

/// Class ids follow the four health states of the benchmark layout.
enum class FaultClass : int {
  healthy = 1,   // carrier + noise
  combined = 2,  // modulated at both fault rates
  inner = 3,     // modulated at the inner-race rate
  outer = 4,     // modulated at the outer-race rate
};

enum class ModulationShape {
  sinusoid,  // m(t) = cos(2 pi f t + phi)
  impact,    // impacts every 1/f seconds, each decaying as exp(-t / decay)
};

struct SynthRecipe {
  double fs = 64000.0;
  std::size_t length = 6400;
  double carrier_hz = 8000.0;
  double f_ir = 123.0;
  double f_or = 76.0;
  double depth = 0.5;
  double snr_db = 10.0;  // infinity disables noise
  ModulationShape shape = ModulationShape::impact;
  double decay_s = 1.5e-3;

  void validate() const;
};

struct LabeledSignal {
  Signal signal;
  int label = 0;
};

/// Unit-peak modulating waveform at `rate_hz` with phase `phase` (radians of
/// one period), sampled at n / fs.
double modulation(const SynthRecipe& recipe, double rate_hz, double phase,
                  double t);

/// One segment of class `cls`. A pure function of (recipe, cls, seed, index).
LabeledSignal synth_one(const SynthRecipe& recipe, FaultClass cls,
                        std::uint64_t seed, std::size_t index);

/// `per_class` segments of each of the four classes, class-major order.
/// Throws ErrorKind::config when per_class == 0.
std::vector<LabeledSignal> synth_generate(const SynthRecipe& recipe,
                                          std::size_t per_class,
                                          std::uint64_t seed);

}  // namespace jiaf

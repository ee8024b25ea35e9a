// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The jiaf Authors

#include "core/synth.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "core/error.hpp"

namespace jiaf {

void SynthRecipe::validate() const {
  if (!(fs > 0.0) || length < Signal::kMinLength || !(carrier_hz > 0.0) ||
      !(carrier_hz < fs / 2.0) || !(f_ir > 0.0) || !(f_or > 0.0) ||
      !(depth >= 0.0) || std::isnan(snr_db) || !(decay_s > 0.0)) {
    throw Error(ErrorKind::config, "invalid synthetic recipe");
  }
}

double modulation(const SynthRecipe& recipe, double rate_hz, double phase,
                  double t) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  if (recipe.shape == ModulationShape::sinusoid) {
    return std::cos(two_pi * rate_hz * t + phase);
  }
  // Impacts at every period start, each ringing down as exp(-t / decay).
  const double period = 1.0 / rate_hz;
  double since = std::fmod(t + phase / two_pi * period, period);
  if (since < 0.0) {
    since += period;
  }
  return std::exp(-since / recipe.decay_s);
}

LabeledSignal synth_one(const SynthRecipe& recipe, FaultClass cls,
                        std::uint64_t seed, std::size_t index) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(cls),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> angle(0.0, two_pi);
  const double carrier_phase = angle(rng);
  const double ir_phase = angle(rng);
  const double or_phase = angle(rng);

  const bool has_ir = cls == FaultClass::inner || cls == FaultClass::combined;
  const bool has_or = cls == FaultClass::outer || cls == FaultClass::combined;

  std::vector<double> x(recipe.length);
  double power = 0.0;
  for (std::size_t n = 0; n < x.size(); ++n) {
    const double t = static_cast<double>(n) / recipe.fs;
    double envelope = 1.0;
    if (has_ir) {
      envelope *= 1.0 + recipe.depth * modulation(recipe, recipe.f_ir, ir_phase, t);
    }
    if (has_or) {
      envelope *= 1.0 + recipe.depth * modulation(recipe, recipe.f_or, or_phase, t);
    }
    x[n] = envelope * std::cos(two_pi * recipe.carrier_hz * t + carrier_phase);
    power += x[n] * x[n];
  }
  power /= static_cast<double>(x.size());

  if (std::isfinite(recipe.snr_db)) {
    const double sigma = std::sqrt(power / std::pow(10.0, recipe.snr_db / 10.0));
    std::normal_distribution<double> noise(0.0, sigma);
    for (double& v : x) {
      v += noise(rng);
    }
  }
  return LabeledSignal{Signal(std::move(x), recipe.fs), static_cast<int>(cls)};
}

std::vector<LabeledSignal> synth_generate(const SynthRecipe& recipe,
                                          std::size_t per_class,
                                          std::uint64_t seed) {
  recipe.validate();
  if (per_class == 0) {
    throw Error(ErrorKind::config, "per-class count must be positive");
  }
  std::vector<LabeledSignal> out;
  out.reserve(4 * per_class);
  for (int c = 1; c <= 4; ++c) {
    for (std::size_t i = 0; i < per_class; ++i) {
      out.push_back(synth_one(recipe, static_cast<FaultClass>(c), seed, i));
    }
  }
  return out;
}

}  // namespace jiaf

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The jiaf Authors

#include "core/analytic_signal.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "core/error.hpp"
#include "core/fft.hpp"

namespace jiaf {

Signal::Signal(std::vector<double> samples, double fs)
    : samples_(std::move(samples)), fs_(fs) {
  if (!(fs_ > 0.0) || !std::isfinite(fs_)) {
    throw Error(ErrorKind::invalid_input,
                "sampling rate must be positive and finite");
  }
  if (samples_.size() < kMinLength) {
    throw Error(ErrorKind::too_short,
                "signal has " + std::to_string(samples_.size()) +
                    " samples; at least " + std::to_string(kMinLength) +
                    " are required");
  }
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (!std::isfinite(samples_[i])) {
      throw Error(ErrorKind::invalid_input,
                  "non-finite sample at index " + std::to_string(i));
    }
  }
}

std::vector<std::complex<double>> analytic_transform(const Signal& signal) {
  const std::size_t n = signal.size();
  std::vector<std::complex<double>> buffer(n);
  for (std::size_t i = 0; i < n; ++i) {
    buffer[i] = signal.samples()[i];
  }
  std::vector<std::complex<double>> spectrum(n);
  fft::forward(buffer, spectrum);

  // Bins 1 .. ceil(N/2)-1 are doubled; N/2 (even N) and 0 stay; the rest go.
  const std::size_t half = n / 2;
  const std::size_t last_doubled = (n % 2 == 0) ? half - 1 : half;
  for (std::size_t k = 1; k <= last_doubled; ++k) {
    spectrum[k] *= 2.0;
  }
  for (std::size_t k = last_doubled + 1 + (n % 2 == 0 ? 1 : 0); k < n; ++k) {
    spectrum[k] = 0.0;
  }

  fft::inverse(spectrum, buffer);
  return buffer;
}

std::vector<double> instantaneous_amplitude(
    std::span<const std::complex<double>> analytic) {
  std::vector<double> out(analytic.size());
  for (std::size_t i = 0; i < analytic.size(); ++i) {
    out[i] = std::abs(analytic[i]);
  }
  return out;
}

UnwrappedPhase instantaneous_phase(
    std::span<const std::complex<double>> analytic) {
  constexpr double pi = std::numbers::pi;
  constexpr double two_pi = 2.0 * std::numbers::pi;

  UnwrappedPhase result;
  result.values.resize(analytic.size());
  double offset = 0.0;
  double previous_raw = 0.0;
  for (std::size_t i = 0; i < analytic.size(); ++i) {
    double raw = 0.0;
    if (analytic[i] == std::complex<double>(0.0, 0.0)) {
      ++result.zero_magnitude_samples;
    } else {
      raw = std::arg(analytic[i]);
    }
    if (i > 0) {
      const double jump = raw - previous_raw;
      if (jump > pi) {
        offset -= two_pi * std::ceil((jump - pi) / two_pi);
      } else if (jump < -pi) {
        offset += two_pi * std::ceil((-jump - pi) / two_pi);
      }
    }
    result.values[i] = raw + offset;
    previous_raw = raw;
  }
  return result;
}

std::vector<double> instantaneous_frequency(std::span<const double> ip,
                                            double fs) {
  const std::size_t n = ip.size();
  std::vector<double> out(n, 0.0);
  if (n < 2) {
    return out;
  }
  const double one_sided = fs / (2.0 * std::numbers::pi);
  const double central = fs / (4.0 * std::numbers::pi);
  out[0] = one_sided * (ip[1] - ip[0]);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    out[i] = central * (ip[i + 1] - ip[i - 1]);
  }
  out[n - 1] = one_sided * (ip[n - 1] - ip[n - 2]);
  return out;
}

InstantaneousSeries analyze(const Signal& signal) {
  const auto analytic = analytic_transform(signal);
  InstantaneousSeries series;
  series.fs = signal.fs();
  series.ia = instantaneous_amplitude(analytic);
  auto phase = instantaneous_phase(analytic);
  series.zero_magnitude_samples = phase.zero_magnitude_samples;
  series.ip = std::move(phase.values);
  series.ifreq = instantaneous_frequency(series.ip, series.fs);
  return series;
}

}  // namespace jiaf

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The jiaf Authors

#include "core/stft_baseline.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "core/error.hpp"
#include "core/fft.hpp"

namespace jiaf {

StftLayout StftLayout::for_length(std::size_t n) {
  if (n < Signal::kMinLength || n % 4 != 0) {
    throw Error(ErrorKind::invalid_input,
                "STFT baseline needs a segment length divisible by 4 (got " +
                    std::to_string(n) + ")");
  }
  return StftLayout{n / 2, n / 4};
}

std::vector<double> hamming(std::size_t length) {
  std::vector<double> w(length, 1.0);
  if (length < 2) {
    return w;
  }
  const double denom = static_cast<double>(length - 1);
  for (std::size_t i = 0; i < length; ++i) {
    w[i] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi *
                                  static_cast<double>(i) / denom);
  }
  return w;
}

StftEnvelopeSpectrum stft_envelope_spectrum(const Signal& signal) {
  const StftLayout layout = StftLayout::for_length(signal.size());
  constexpr std::size_t nfft = StftLayout::kNfft;
  constexpr std::size_t bins = nfft / 2 + 1;

  const std::vector<double> envelope =
      instantaneous_amplitude(analytic_transform(signal));
  const std::vector<double> window = hamming(layout.window_length);
  const std::size_t used = std::min(layout.window_length, nfft);

  StftEnvelopeSpectrum out;
  out.bin_freqs.resize(bins);
  out.agg_power.assign(bins, 0.0);
  for (std::size_t k = 0; k < bins; ++k) {
    out.bin_freqs[k] = static_cast<double>(k) * signal.fs() /
                       static_cast<double>(nfft);
  }

  std::vector<fft::Complex> frame(nfft);
  std::vector<fft::Complex> spectrum(nfft);
  for (std::size_t w = 0; w < StftLayout::kWindows; ++w) {
    std::fill(frame.begin(), frame.end(), fft::Complex{});
    const std::size_t start = layout.offset(w);
    for (std::size_t i = 0; i < used; ++i) {
      frame[i] = envelope[start + i] * window[i];
    }
    fft::forward(frame, spectrum);
    for (std::size_t k = 0; k < bins; ++k) {
      out.agg_power[k] += std::norm(spectrum[k]);
    }
  }
  for (double& p : out.agg_power) {
    p /= static_cast<double>(StftLayout::kWindows);
  }
  return out;
}

FeatureVector extract_stft_features(const Signal& signal,
                                    const FeatureOptions& options) {
  const StftEnvelopeSpectrum spectrum = stft_envelope_spectrum(signal);
  return features_from({spectrum.agg_power, spectrum.bin_freqs}, options);
}

}  // namespace jiaf

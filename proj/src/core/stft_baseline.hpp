// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The jiaf Authors

#pragma once

#include <cstddef>
#include <vector>

#include "core/analytic_signal.hpp"
#include "core/features.hpp"

namespace jiaf {

/// One-sided, window-averaged power spectrum of the signal envelope.
struct StftEnvelopeSpectrum {
  std::vector<double> bin_freqs;  // k * fs / nfft, Hz
  std::vector<double> agg_power;  // mean |X_w[k]|^2 over the windows
};

struct StftLayout {
  static constexpr std::size_t kWindows = 3;
  static constexpr std::size_t kNfft = 4096;

  std::size_t window_length = 0;
  std::size_t hop = 0;

  /// Three Hamming windows of N/2 samples at 50% overlap (hop N/4), so they
  /// tile [0, N) exactly. Requires N divisible by 4.
  static StftLayout for_length(std::size_t n);

  std::size_t offset(std::size_t window) const { return window * hop; }
};

/// Symmetric Hamming window 0.54 - 0.46 cos(2 pi n / (L - 1)).
std::vector<double> hamming(std::size_t length);

StftEnvelopeSpectrum stft_envelope_spectrum(const Signal& signal);

/// The six features computed with A := aggregated power, F := bin frequency.
FeatureVector extract_stft_features(const Signal& signal,
                                    const FeatureOptions& options = {});

}  // namespace jiaf

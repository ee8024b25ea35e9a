// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The jiaf Authors

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "core/analytic_signal.hpp"

namespace jiaf {

/// Paired amplitude / frequency sequences that the representations consume.
/// For the proposed method these are IA and IF; the STFT baseline feeds
/// aggregated bin power and bin frequencies instead.
struct AmplitudeFrequency {
  std::span<const double> amp;
  std::span<const double> freq;

  static AmplitudeFrequency of(const InstantaneousSeries& series) {
    return {series.ia, series.ifreq};
  }
};

/// Amplitude-frequency mapping: each sample's frequency (x) paired with its
/// amplitude (y), in time order.
struct Iafm {
  std::vector<double> freq;
  std::vector<double> amp;
};

/// Full cross-correlation R[k] = sum_n amp[n] freq[n-k], zero-padded,
/// for lags -(N-1) .. N-1.
struct Iafc {
  std::vector<double> values;

  std::int64_t min_lag() const noexcept {
    return -static_cast<std::int64_t>(values.size() / 2);
  }
  std::int64_t lag_at(std::size_t index) const noexcept {
    return min_lag() + static_cast<std::int64_t>(index);
  }
};

/// Energy-frequency distribution: ie_norm[n] * if_norm[n].
struct Iefd {
  std::vector<double> values;
  std::vector<double> ie_norm;
  std::vector<double> if_norm;
};

Iafm compute_iafm(AmplitudeFrequency input);

/// O(N log N): both sequences share one complex FFT, then one inverse FFT.
Iafc compute_iafc(AmplitudeFrequency input);

/// Throws ErrorKind::degenerate if sum(amp^2) == 0 or sum(freq) == 0.
Iefd compute_iefd(AmplitudeFrequency input);

inline Iafm compute_iafm(const InstantaneousSeries& s) {
  return compute_iafm(AmplitudeFrequency::of(s));
}
inline Iafc compute_iafc(const InstantaneousSeries& s) {
  return compute_iafc(AmplitudeFrequency::of(s));
}
inline Iefd compute_iefd(const InstantaneousSeries& s) {
  return compute_iefd(AmplitudeFrequency::of(s));
}

/// Joint time-energy-frequency triples, one CSV row per sample:
/// `time_s,freq_hz,energy` = (n / fs, F[n], A[n]).
void write_heatmap_csv(std::ostream& out, const InstantaneousSeries& series);

}  // namespace jiaf

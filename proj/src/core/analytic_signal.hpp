// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The jiaf Authors

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace jiaf {

/// A finite run of real vibration samples at a fixed sampling rate.
///
/// Construction validates: at least kMinLength samples, fs > 0 and finite,
/// every sample finite. A constructed Signal is therefore always valid.
class Signal {
 public:
  static constexpr std::size_t kMinLength = 16;

  Signal(std::vector<double> samples, double fs);

  std::span<const double> samples() const noexcept { return samples_; }
  double fs() const noexcept { return fs_; }
  std::size_t size() const noexcept { return samples_.size(); }
  double duration_s() const noexcept {
    return static_cast<double>(samples_.size()) / fs_;
  }

 private:
  std::vector<double> samples_;
  double fs_;
};

/// Per-sample envelope (ia), unwrapped phase (ip, rad) and frequency
/// (ifreq, Hz), all of the source signal's length.
struct InstantaneousSeries {
  std::vector<double> ia;
  std::vector<double> ip;
  std::vector<double> ifreq;
  double fs = 0.0;
  /// Samples where the analytic signal was exactly zero; their raw phase is 0.
  std::size_t zero_magnitude_samples = 0;

  std::size_t size() const noexcept { return ia.size(); }
};

/// x[n] + j H{x}[n] via the FFT: negative frequencies zeroed, positive ones
/// doubled, DC (and Nyquist for even N) kept at unit gain.
std::vector<std::complex<double>> analytic_transform(const Signal& signal);

std::vector<double> instantaneous_amplitude(
    std::span<const std::complex<double>> analytic);

struct UnwrappedPhase {
  std::vector<double> values;
  std::size_t zero_magnitude_samples = 0;
};

/// atan2 of the analytic signal, unwrapped so successive samples never jump
/// by more than pi.
UnwrappedPhase instantaneous_phase(
    std::span<const std::complex<double>> analytic);

/// Central difference (fs / 4 pi)(ip[n+1] - ip[n-1]) in the interior and
/// one-sided (fs / 2 pi) differences at both ends, so the output keeps
/// the input length. Negative values are returned as computed.
std::vector<double> instantaneous_frequency(std::span<const double> ip,
                                            double fs);

/// Full chain: analytic transform, IA, unwrapped IP, IF.
InstantaneousSeries analyze(const Signal& signal);

}  // namespace jiaf

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The jiaf Authors

#include "core/representations.hpp"

#include <cassert>
#include <ostream>

#include "core/error.hpp"
#include "core/fft.hpp"
#include "core/numeric.hpp"

namespace jiaf {

Iafm compute_iafm(AmplitudeFrequency input) {
  assert(input.amp.size() == input.freq.size());
  return Iafm{{input.freq.begin(), input.freq.end()},
              {input.amp.begin(), input.amp.end()}};
}

Iafc compute_iafc(AmplitudeFrequency input) {
  assert(input.amp.size() == input.freq.size());
  const std::size_t n = input.amp.size();
  Iafc result;
  if (n == 0) {
    return result;
  }
  const std::size_t lags = 2 * n - 1;
  const std::size_t size = fft::good_size(lags);

  // z = amp + j freq, so Z carries both spectra:
  //   Amp[k]  = (Z[k] + conj Z[-k]) / 2
  //   Freq[k] = (Z[k] - conj Z[-k]) / 2j
  std::vector<fft::Complex> packed(size, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    packed[i] = {input.amp[i], input.freq[i]};
  }
  std::vector<fft::Complex> spectrum(size);
  fft::forward(packed, spectrum);

  // Circular correlation c[k] = sum_m amp[m+k] freq[m] has spectrum
  // Amp[k] conj(Freq[k]).
  for (std::size_t k = 0; k < size; ++k) {
    const fft::Complex z = spectrum[k];
    const fft::Complex zr = std::conj(spectrum[(size - k) % size]);
    const fft::Complex amp_k = 0.5 * (z + zr);
    const fft::Complex freq_k = fft::Complex(0.0, -0.5) * (z - zr);
    packed[k] = amp_k * std::conj(freq_k);
  }
  fft::inverse(packed, spectrum);

  // Lag k >= 0 sits at index k, lag k < 0 at size + k.
  result.values.resize(lags);
  for (std::size_t i = 0; i < lags; ++i) {
    const auto lag = static_cast<std::int64_t>(i) - static_cast<std::int64_t>(n - 1);
    const std::size_t slot =
        lag >= 0 ? static_cast<std::size_t>(lag)
                 : size - static_cast<std::size_t>(-lag);
    result.values[i] = spectrum[slot].real();
  }
  return result;
}

Iefd compute_iefd(AmplitudeFrequency input) {
  assert(input.amp.size() == input.freq.size());
  const std::size_t n = input.amp.size();
  Iefd result;
  result.ie_norm.resize(n);
  result.if_norm.resize(n);
  result.values.resize(n);

  for (std::size_t i = 0; i < n; ++i) {
    result.ie_norm[i] = input.amp[i] * input.amp[i];
  }
  const double energy = stable_sum(result.ie_norm);
  const double freq_total = stable_sum(input.freq);
  if (!(energy > 0.0) || !std::isfinite(energy)) {
    throw Error(ErrorKind::degenerate,
                "envelope energy is zero; cannot normalize IE");
  }
  if (freq_total == 0.0 || !std::isfinite(freq_total)) {
    throw Error(ErrorKind::degenerate,
                "instantaneous frequency sums to zero; cannot normalize IF");
  }
  for (std::size_t i = 0; i < n; ++i) {
    result.ie_norm[i] /= energy;
    result.if_norm[i] = input.freq[i] / freq_total;
    result.values[i] = result.ie_norm[i] * result.if_norm[i];
  }
  return result;
}

void write_heatmap_csv(std::ostream& out, const InstantaneousSeries& series) {
  out << "time_s,freq_hz,energy\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    out << format_double(static_cast<double>(i) / series.fs) << ','
        << format_double(series.ifreq[i]) << ',' << format_double(series.ia[i])
        << '\n';
  }
}

}  // namespace jiaf

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The jiaf Authors

#include "core/features.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "core/error.hpp"
#include "core/numeric.hpp"

namespace jiaf {

bool FeatureVector::is_finite() const {
  for (double v : as_array()) {
    if (!std::isfinite(v)) {
      return false;
    }
  }
  return true;
}

namespace {

double amplitude_total(const Iafm& iafm) {
  const double total = stable_sum(iafm.amp);
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw Error(ErrorKind::degenerate, "IAFM amplitudes sum to zero");
  }
  return total;
}

}  // namespace

double spectral_centroid(const Iafm& iafm) {
  const double total = amplitude_total(iafm);
  std::vector<double> weighted(iafm.amp.size());
  for (std::size_t i = 0; i < weighted.size(); ++i) {
    weighted[i] = iafm.freq[i] * iafm.amp[i];
  }
  return stable_sum(weighted) / total;
}

double spectral_spread(const Iafm& iafm, double sc) {
  const double total = amplitude_total(iafm);
  std::vector<double> weighted(iafm.amp.size());
  for (std::size_t i = 0; i < weighted.size(); ++i) {
    const double d = iafm.freq[i] - sc;
    weighted[i] = d * d * iafm.amp[i];
  }
  return std::sqrt(stable_sum(weighted) / total);
}

double coefficient_of_variation(double sc, double ss) {
  if (sc == 0.0) {
    throw Error(ErrorKind::degenerate,
                "spectral centroid is zero; CoV undefined");
  }
  return ss / sc * 100.0;
}

CorrelationPeak correlation_peak(const Iafc& iafc) {
  CorrelationPeak best;
  bool found = false;
  for (std::size_t i = 0; i < iafc.values.size(); ++i) {
    const double v = iafc.values[i];
    const std::int64_t lag = iafc.lag_at(i);
    bool take = !found || v > best.cp;
    if (found && v == best.cp) {
      const auto a = std::llabs(lag);
      const auto b = std::llabs(best.pl);
      take = a < b || (a == b && lag < best.pl);
    }
    if (take) {
      best = {v, lag};
      found = true;
    }
  }
  return best;
}

double value_entropy(std::span<const double> values,
                     const FeatureOptions& options) {
  const double n = static_cast<double>(values.size());
  if (values.empty()) {
    return 0.0;
  }

  // (representative value, count) per distinct value or bin.
  std::vector<std::pair<double, std::size_t>> groups;
  if (options.entropy_bins == 0) {
    std::vector<std::uint64_t> bits(values.size());
    std::transform(values.begin(), values.end(), bits.begin(),
                   [](double v) { return std::bit_cast<std::uint64_t>(v); });
    std::sort(bits.begin(), bits.end());
    for (std::size_t i = 0; i < bits.size();) {
      std::size_t j = i;
      while (j < bits.size() && bits[j] == bits[i]) {
        ++j;
      }
      groups.emplace_back(std::bit_cast<double>(bits[i]), j - i);
      i = j;
    }
  } else {
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    const double width = (hi - lo) / static_cast<double>(options.entropy_bins);
    std::vector<std::size_t> counts(options.entropy_bins, 0);
    for (double v : values) {
      std::size_t bin = 0;
      if (width > 0.0) {
        bin = std::min(options.entropy_bins - 1,
                       static_cast<std::size_t>((v - lo) / width));
      }
      ++counts[bin];
    }
    for (std::size_t b = 0; b < counts.size(); ++b) {
      if (counts[b] > 0) {
        groups.emplace_back(lo + (static_cast<double>(b) + 0.5) * width,
                            counts[b]);
      }
    }
  }

  std::vector<double> terms;
  terms.reserve(groups.size());
  for (const auto& [value, count] : groups) {
    const double p = static_cast<double>(count) / n;
    const double weight = options.entropy == EntropyForm::shannon ? p : value;
    terms.push_back(-weight * std::log2(p));
  }
  return stable_sum(terms);
}

double mean_to_entropy_ratio(const Iefd& iefd, const FeatureOptions& options) {
  const double entropy = value_entropy(iefd.values, options);
  if (entropy == 0.0) {
    throw Error(ErrorKind::degenerate,
                "IEFD has zero entropy (all values identical)");
  }
  const double mean =
      stable_sum(iefd.values) / static_cast<double>(iefd.values.size());
  return mean / entropy;
}

FeatureVector features_from(AmplitudeFrequency input,
                            const FeatureOptions& options) {
  FeatureVector f;
  const Iafm iafm = compute_iafm(input);
  f.sc = spectral_centroid(iafm);
  f.ss = spectral_spread(iafm, f.sc);
  f.cov = coefficient_of_variation(f.sc, f.ss);

  const CorrelationPeak peak = correlation_peak(compute_iafc(input));
  f.cp = peak.cp;
  f.pl = peak.pl;

  f.mer = mean_to_entropy_ratio(compute_iefd(input), options);
  return f;
}

FeatureVector extract_features(const Signal& signal,
                               const FeatureOptions& options) {
  const InstantaneousSeries series = analyze(signal);
  return features_from(AmplitudeFrequency::of(series), options);
}

}  // namespace jiaf

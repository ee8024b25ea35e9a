// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The jiaf Authors

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

#include "core/analytic_signal.hpp"
#include "core/representations.hpp"

namespace jiaf {

/// The six engineered features. Serialized (and fed to the classifier) in
/// the fixed order ss, sc, cov, cp, pl, mer.
struct FeatureVector {
  double ss = 0.0;   // Hz
  double sc = 0.0;   // Hz
  double cov = 0.0;  // percent
  double cp = 0.0;
  std::int64_t pl = 0;  // samples
  double mer = 0.0;

  static constexpr std::size_t kSize = 6;
  static constexpr std::array<std::string_view, kSize> kNames = {
      "ss", "sc", "cov", "cp", "pl", "mer"};

  std::array<double, kSize> as_array() const {
    return {ss, sc, cov, cp, static_cast<double>(pl), mer};
  }
  bool is_finite() const;

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

/// Entropy denominator of the mean-to-entropy ratio.
enum class EntropyForm {
  /// -sum_i P(x_i) log2 P(x_i)
  shannon,
  /// -sum_i x_i log2 P(x_i)
  literal,
};

struct FeatureOptions {
  EntropyForm entropy = EntropyForm::shannon;
  /// 0 counts exact bit-level distinct IEFD values; otherwise equal-width
  /// bins over [min, max].
  std::size_t entropy_bins = 0;
};

double spectral_centroid(const Iafm& iafm);
double spectral_spread(const Iafm& iafm, double sc);
double coefficient_of_variation(double sc, double ss);

struct CorrelationPeak {
  double cp = 0.0;
  std::int64_t pl = 0;
};

/// Maximum of the IAFC and its lag. Exact ties go to the smallest |lag|,
/// then to the negative lag.
CorrelationPeak correlation_peak(const Iafc& iafc);

/// Entropy (bits) of the empirical distribution of `values`.
double value_entropy(std::span<const double> values,
                     const FeatureOptions& options = {});

/// mean(IEFD) / entropy(IEFD). Throws ErrorKind::degenerate on zero entropy.
double mean_to_entropy_ratio(const Iefd& iefd,
                             const FeatureOptions& options = {});

/// Features from an arbitrary amplitude/frequency pair; shared by the
/// proposed and the STFT-baseline paths.
FeatureVector features_from(AmplitudeFrequency input,
                            const FeatureOptions& options = {});

/// Analytic signal -> IAFM / IAFC / IEFD -> six features.
FeatureVector extract_features(const Signal& signal,
                               const FeatureOptions& options = {});

}  // namespace jiaf

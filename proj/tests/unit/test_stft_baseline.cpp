// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The jiaf Authors

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "core/analytic_signal.hpp"
#include "core/error.hpp"
#include "core/features.hpp"
#include "core/stft_baseline.hpp"
#include "support/oracles.hpp"

namespace {

constexpr double kFs = 64000.0;

std::vector<double> am_signal(std::size_t n, double fm) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = i / kFs;
    x[i] = (1.0 + 0.5 * std::cos(2 * std::numbers::pi * fm * t)) *
           std::cos(2 * std::numbers::pi * 8000.0 * t);
  }
  return x;
}

}  // namespace

TEST_CASE("window layout for the standard segment") {
  const auto layout = jiaf::StftLayout::for_length(6400);
  CHECK(layout.window_length == 3200);
  CHECK(layout.hop == 1600);
  CHECK(layout.offset(0) == 0);
  CHECK(layout.offset(1) == 1600);
  CHECK(layout.offset(2) == 3200);
}

TEST_CASE("windows tile the segment with half overlap") {
  for (std::size_t n : {16, 400, 6400, 12800}) {
    const auto layout = jiaf::StftLayout::for_length(n);
    CHECK(layout.offset(0) == 0);
    CHECK(layout.offset(jiaf::StftLayout::kWindows - 1) + layout.window_length == n);
    CHECK(layout.hop * 2 == layout.window_length);
  }
}

TEST_CASE("lengths not divisible by four are rejected") {
  for (std::size_t n : {6401, 6402, 6403}) {
    try {
      jiaf::StftLayout::for_length(n);
      FAIL("expected an error");
    } catch (const jiaf::Error& e) {
      CHECK(e.kind() == jiaf::ErrorKind::invalid_input);
    }
  }
}

TEST_CASE("symmetric Hamming window") {
  const auto w = jiaf::hamming(11);
  CHECK(w.front() == Catch::Approx(0.08));
  CHECK(w.back() == Catch::Approx(0.08));
  CHECK(w[5] == Catch::Approx(1.0));
  for (std::size_t i = 0; i < w.size(); ++i) CHECK(w[i] == Catch::Approx(w[w.size() - 1 - i]));
}

TEST_CASE("envelope spectrum shape and bin frequencies") {
  std::mt19937_64 rng(1);
  const auto spec = jiaf::stft_envelope_spectrum(jiaf::Signal(oracle::gaussian(rng, 6400), kFs));
  REQUIRE(spec.bin_freqs.size() == 2049);
  REQUIRE(spec.agg_power.size() == 2049);
  for (std::size_t k = 0; k < 2049; ++k) {
    REQUIRE(spec.bin_freqs[k] == k * kFs / 4096.0);
    REQUIRE(spec.agg_power[k] >= 0.0);
  }
}

TEST_CASE("constant envelope concentrates power at DC") {
  const jiaf::Signal s(std::vector<double>(6400, 1.0), kFs);
  const auto spec = jiaf::stft_envelope_spectrum(s);
  CHECK(std::max_element(spec.agg_power.begin(), spec.agg_power.end()) ==
        spec.agg_power.begin());
  const auto f = jiaf::extract_stft_features(s);
  // The Hamming main lobe spans about 2.6 bins of 15.625 Hz.
  CHECK(std::abs(f.sc) < 2 * kFs / 4096.0);
}

TEST_CASE("modulation rate is the dominant envelope-spectrum line") {
  const double fm = 120.0;
  const auto spec = jiaf::stft_envelope_spectrum(jiaf::Signal(am_signal(6400, fm), kFs));
  // Skip DC and its window main lobe.
  std::size_t best = 4;
  for (std::size_t k = 4; k < spec.agg_power.size(); ++k) {
    if (spec.agg_power[k] > spec.agg_power[best]) best = k;
  }
  CHECK(std::abs(spec.bin_freqs[best] - fm) <= kFs / 4096.0);
}

TEST_CASE("aggregated power matches a full-spectrum naive-DFT oracle") {
  std::mt19937_64 rng(3);
  const jiaf::Signal s(oracle::gaussian(rng, 1600), kFs);
  const auto envelope = jiaf::analyze(s).ia;
  const auto window = jiaf::hamming(800);
  std::vector<double> want(2049, 0.0);
  for (std::size_t w = 0; w < 3; ++w) {
    std::vector<oracle::cld> frame(4096, 0.0L);
    for (std::size_t i = 0; i < 800; ++i) {
      frame[i] = static_cast<long double>(envelope[w * 400 + i]) * window[i];
    }
    const auto full = oracle::naive_dft(frame);
    for (std::size_t k = 0; k < 2049; ++k) {
      // The full spectrum of a real frame is conjugate-symmetric.
      REQUIRE(std::abs(std::abs(full[k]) - std::abs(full[(4096 - k) % 4096])) <
              1e-9 * (1.0 + std::abs(full[k])));
      want[k] += static_cast<double>(std::norm(full[k]) / 3.0L);
    }
  }
  CHECK(oracle::norm_rel_err(jiaf::stft_envelope_spectrum(s).agg_power, want) < 1e-9);
}

TEST_CASE("aggregated power scales with the square of the amplitude") {
  std::mt19937_64 rng(4);
  const auto x = oracle::gaussian(rng, 6400);
  const auto base = jiaf::stft_envelope_spectrum(jiaf::Signal(x, kFs)).agg_power;
  for (double c : {0.5, 3.0, 1e4}) {
    std::vector<double> y(x);
    for (double& v : y) v *= c;
    const auto scaled = jiaf::stft_envelope_spectrum(jiaf::Signal(y, kFs)).agg_power;
    std::vector<double> want(base);
    for (double& v : want) v *= c * c;
    CHECK(oracle::norm_rel_err(scaled, want) < 1e-9);
  }
}

TEST_CASE("STFT features use the spectrum arrays") {
  const jiaf::Signal s(am_signal(6400, 76.0), kFs);
  const auto spec = jiaf::stft_envelope_spectrum(s);
  const auto f = jiaf::extract_stft_features(s);
  CHECK(f.pl >= -2048);
  CHECK(f.pl <= 2048);
  CHECK(oracle::rel_err(f.sc, oracle::centroid(spec.agg_power, spec.bin_freqs)) < 1e-12);
  CHECK(oracle::rel_err(f.ss, oracle::spread(spec.agg_power, spec.bin_freqs)) < 1e-9);
  const auto peak = oracle::peak(oracle::cross_correlation(spec.agg_power, spec.bin_freqs));
  CHECK(f.pl == peak.lag);
  CHECK(oracle::rel_err(f.cp, peak.value) < 1e-9);
  CHECK(f.is_finite());
  const auto proposed = jiaf::extract_features(s);
  CHECK_FALSE(proposed == f);
}

TEST_CASE("longer segments are truncated to the transform length") {
  std::mt19937_64 rng(6);
  const auto spec = jiaf::stft_envelope_spectrum(jiaf::Signal(oracle::gaussian(rng, 12800), kFs));
  CHECK(spec.agg_power.size() == 2049);
}

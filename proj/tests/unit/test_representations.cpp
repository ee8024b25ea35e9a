// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The jiaf Authors

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "core/analytic_signal.hpp"
#include "core/error.hpp"
#include "core/representations.hpp"
#include "core/synth.hpp"
#include "support/oracles.hpp"

using jiaf::AmplitudeFrequency;

namespace {

constexpr double kFs = 64000.0;

}  // namespace

TEST_CASE("IAFM pairs IF with IA in time order") {
  const std::vector<double> a = {1, 1, 1, 1};
  const std::vector<double> f = {10, 20, 30, 40};
  const auto iafm = jiaf::compute_iafm(AmplitudeFrequency{a, f});
  CHECK(iafm.freq == f);
  CHECK(iafm.amp == a);
}

TEST_CASE("IAFM of a tone is a single-frequency cloud") {
  const std::size_t n = 6400;
  const auto series = jiaf::analyze(jiaf::Signal(oracle::tone(n, 8000.0, kFs), kFs));
  const auto iafm = jiaf::compute_iafm(series);
  REQUIRE(iafm.freq.size() == n);
  for (std::size_t i = n / 20; i < n - n / 20; ++i) {
    REQUIRE(std::abs(iafm.freq[i] - 8000.0) < 80.0);
  }
}

TEST_CASE("IAFM of a modulated signal is wider in amplitude than a tone's") {
  jiaf::SynthRecipe recipe;
  recipe.snr_db = std::numeric_limits<double>::infinity();
  const auto healthy = jiaf::synth_one(recipe, jiaf::FaultClass::healthy, 42, 0);
  const auto faulty = jiaf::synth_one(recipe, jiaf::FaultClass::inner, 42, 0);
  auto amp_spread = [](const jiaf::Signal& s) {
    const auto amp = jiaf::compute_iafm(jiaf::analyze(s)).amp;
    const std::size_t n = amp.size();
    double mean = 0.0;
    for (std::size_t i = n / 20; i < n - n / 20; ++i) mean += amp[i];
    mean /= static_cast<double>(n - 2 * (n / 20));
    double var = 0.0;
    for (std::size_t i = n / 20; i < n - n / 20; ++i) var += (amp[i] - mean) * (amp[i] - mean);
    return std::sqrt(var);
  };
  CHECK(amp_spread(faulty.signal) > 2.0 * amp_spread(healthy.signal));
}

TEST_CASE("IAFC hand-computed example") {
  const std::vector<double> a = {1, 2, 3};
  const auto iafc = jiaf::compute_iafc(AmplitudeFrequency{a, a});
  REQUIRE(iafc.values.size() == 5);
  CHECK(iafc.min_lag() == -2);
  const std::vector<double> want = {3, 8, 14, 8, 3};
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(iafc.values[i] == Catch::Approx(want[i]).margin(1e-12));
    CHECK(iafc.lag_at(i) == static_cast<std::int64_t>(i) - 2);
  }
}

TEST_CASE("IAFC of a delta envelope sifts F") {
  std::mt19937_64 rng(2);
  const std::size_t n = 37;
  std::vector<double> a(n, 0.0);
  a[0] = 1.0;
  const auto f = oracle::uniform(rng, n, -5.0, 5.0);
  const auto iafc = jiaf::compute_iafc(AmplitudeFrequency{a, f});
  REQUIRE(iafc.values.size() == 2 * n - 1);
  for (std::size_t i = 0; i < iafc.values.size(); ++i) {
    const std::int64_t k = iafc.lag_at(i);
    const double want = (k <= 0) ? f[static_cast<std::size_t>(-k)] : 0.0;
    REQUIRE(std::abs(iafc.values[i] - want) < 1e-12);
  }
}

TEST_CASE("IAFC equals the brute-force cross-correlation") {
  std::mt19937_64 rng(17);
  for (std::size_t n : {16, 17, 100, 257, 1024, 6400}) {
    const auto a = oracle::uniform(rng, n, 0.0, 2.0);
    const auto f = oracle::uniform(rng, n, 0.0, 9000.0);
    const auto got = jiaf::compute_iafc(AmplitudeFrequency{a, f});
    const auto want = oracle::cross_correlation(a, f);
    INFO("N = " << n);
    REQUIRE(got.values.size() == 2 * n - 1);
    CHECK(oracle::norm_rel_err(got.values, want) < 1e-9);
  }
}

TEST_CASE("IAFC is lag-reversed when the inputs are swapped") {
  std::mt19937_64 rng(4);
  const auto a = oracle::uniform(rng, 300, 0.0, 1.0);
  const auto f = oracle::uniform(rng, 300, -100.0, 100.0);
  const auto af = jiaf::compute_iafc(AmplitudeFrequency{a, f}).values;
  const auto fa = jiaf::compute_iafc(AmplitudeFrequency{f, a}).values;
  std::vector<double> reversed(af.rbegin(), af.rend());
  CHECK(oracle::norm_rel_err(fa, reversed) < 1e-9);
}

TEST_CASE("IAFC of identical inputs peaks at lag 0") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = oracle::uniform(rng, 128, 0.0, 1.0);
    const auto iafc = jiaf::compute_iafc(AmplitudeFrequency{a, a});
    const auto it = std::max_element(iafc.values.begin(), iafc.values.end());
    REQUIRE(iafc.lag_at(static_cast<std::size_t>(it - iafc.values.begin())) == 0);
  }
}

TEST_CASE("IAFC is non-negative when both inputs are") {
  std::mt19937_64 rng(12);
  const auto a = oracle::uniform(rng, 500, 0.0, 1.0);
  const auto f = oracle::uniform(rng, 500, 0.0, 8000.0);
  for (double v : jiaf::compute_iafc(AmplitudeFrequency{a, f}).values) {
    // Round-off on near-zero tail lags may dip a hair below zero.
    REQUIRE(v > -1e-9 * 8000.0 * 500.0);
  }
}

TEST_CASE("IEFD of constant inputs is uniform") {
  const std::size_t n = 50;
  const std::vector<double> a(n, 2.0), f(n, 300.0);
  const auto iefd = jiaf::compute_iefd(AmplitudeFrequency{a, f});
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(iefd.ie_norm[i] == Catch::Approx(1.0 / n).epsilon(1e-14));
    CHECK(iefd.if_norm[i] == Catch::Approx(1.0 / n).epsilon(1e-14));
    CHECK(iefd.values[i] == Catch::Approx(1.0 / (n * n)).epsilon(1e-14));
  }
}

TEST_CASE("IEFD of a single-support envelope is a delta") {
  std::vector<double> a(20, 0.0);
  a[7] = 4.0;
  const std::vector<double> f(20, 1.0);
  const auto iefd = jiaf::compute_iefd(AmplitudeFrequency{a, f});
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(iefd.ie_norm[i] == (i == 7 ? 1.0 : 0.0));
  }
}

TEST_CASE("IEFD values are the product of the normalizations") {
  std::mt19937_64 rng(6);
  const auto a = oracle::uniform(rng, 400, 0.0, 3.0);
  const auto f = oracle::uniform(rng, 400, -50.0, 9000.0);
  const auto iefd = jiaf::compute_iefd(AmplitudeFrequency{a, f});
  for (std::size_t i = 0; i < a.size(); ++i) {
    REQUIRE(iefd.values[i] == iefd.ie_norm[i] * iefd.if_norm[i]);
  }
}

TEST_CASE("IEFD normalizations sum to one") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = oracle::uniform(rng, 6400, 0.0, 3.0);
    const auto f = oracle::uniform(rng, 6400, 0.0, 16000.0);
    const auto iefd = jiaf::compute_iefd(AmplitudeFrequency{a, f});
    long double se = 0, sf = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      se += iefd.ie_norm[i];
      sf += iefd.if_norm[i];
    }
    REQUIRE(std::abs(static_cast<double>(se) - 1.0) < 1e-12);
    REQUIRE(std::abs(static_cast<double>(sf) - 1.0) < 1e-12);
  }
}

TEST_CASE("IEFD is invariant to amplitude scale") {
  std::mt19937_64 rng(14);
  const auto a = oracle::uniform(rng, 1000, 0.0, 3.0);
  const auto f = oracle::uniform(rng, 1000, 0.0, 16000.0);
  const auto base = jiaf::compute_iefd(AmplitudeFrequency{a, f});
  for (double c : {0.5, 3.0, 1e4}) {
    std::vector<double> ca(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) ca[i] = c * a[i];
    const auto scaled = jiaf::compute_iefd(AmplitudeFrequency{ca, f});
    for (std::size_t i = 0; i < a.size(); ++i) {
      REQUIRE(oracle::rel_err(scaled.values[i], base.values[i]) < 1e-12);
    }
  }
}

TEST_CASE("IEFD rejects inputs that cannot be normalized") {
  const std::vector<double> zero(32, 0.0), one(32, 1.0);
  std::vector<double> balanced(32, 1.0);
  for (std::size_t i = 0; i < 16; ++i) balanced[i] = -1.0;
  try {
    jiaf::compute_iefd(AmplitudeFrequency{zero, one});
    FAIL("expected an error");
  } catch (const jiaf::Error& e) {
    CHECK(e.kind() == jiaf::ErrorKind::degenerate);
  }
  try {
    jiaf::compute_iefd(AmplitudeFrequency{one, balanced});
    FAIL("expected an error");
  } catch (const jiaf::Error& e) {
    CHECK(e.kind() == jiaf::ErrorKind::degenerate);
  }
}

TEST_CASE("IEFD of an AM signal oscillates at the modulation rate") {
  const std::size_t n = 6400;
  const double fm = 120.0;
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = i / kFs;
    x[i] = (1.0 + 0.5 * std::cos(2 * std::numbers::pi * fm * t)) *
           std::cos(2 * std::numbers::pi * 8000.0 * t);
  }
  const auto iefd = jiaf::compute_iefd(jiaf::analyze(jiaf::Signal(x, kFs)));
  // Remove the mean so bin 0 does not dominate; the oracle skips DC anyway.
  std::vector<double> centered(iefd.values);
  double mean = 0.0;
  for (double v : centered) mean += v;
  mean /= static_cast<double>(n);
  for (double& v : centered) v -= mean;
  const double peak_hz = oracle::dominant_bin(centered) * kFs / n;
  CHECK(std::abs(peak_hz - fm) <= 0.05 * fm);
}

TEST_CASE("heatmap export has one triple per sample") {
  std::vector<double> x = {1, -1, 1, -1, 1, -1, 1, -1, 1, -1, 1, -1, 1, -1, 1, -1};
  const auto series = jiaf::analyze(jiaf::Signal(x, 4.0));
  std::ostringstream out;
  jiaf::write_heatmap_csv(out, series);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "time_s,freq_hz,energy");
  std::vector<std::string> times;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    times.push_back(line.substr(0, line.find(',')));
    ++rows;
  }
  CHECK(rows == x.size());
  CHECK(times[0] == "0");
  CHECK(times[1] == "0.25");
  CHECK(times[2] == "0.5");
  CHECK(times[3] == "0.75");
  CHECK(out.str().find('\r') == std::string::npos);
}

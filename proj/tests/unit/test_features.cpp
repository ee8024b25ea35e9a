// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The jiaf Authors

#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstring>
#include <random>

#include "core/analytic_signal.hpp"
#include "core/error.hpp"
#include "core/features.hpp"
#include "core/representations.hpp"
#include "core/synth.hpp"
#include "support/oracles.hpp"

using jiaf::AmplitudeFrequency;

namespace {

constexpr double kFs = 64000.0;

jiaf::Iafm iafm_of(std::vector<double> a, std::vector<double> f) {
  return jiaf::Iafm{std::move(f), std::move(a)};
}

template <typename Fn>
jiaf::ErrorKind kind_of(Fn&& fn) {
  try {
    fn();
  } catch (const jiaf::Error& e) {
    return e.kind();
  }
  FAIL("no jiaf::Error thrown");
  return jiaf::ErrorKind::invalid_input;
}

}  // namespace

TEST_CASE("spectral centroid examples") {
  CHECK(jiaf::spectral_centroid(iafm_of({1, 1, 1, 1}, {10, 20, 30, 40})) == 25.0);
  CHECK(jiaf::spectral_centroid(iafm_of({0, 0, 1}, {5, 10, 20})) == 20.0);
  CHECK(kind_of([] { jiaf::spectral_centroid(iafm_of({0, 0, 0}, {1, 2, 3})); }) ==
        jiaf::ErrorKind::degenerate);
}

TEST_CASE("spectral spread examples") {
  CHECK(jiaf::spectral_spread(iafm_of({1, 1}, {10, 20}), 15.0) == 5.0);
  CHECK(jiaf::spectral_spread(iafm_of({0.2, 3.0, 1.1}, {440, 440, 440}), 440.0) == 0.0);
}

TEST_CASE("centroid and spread match the direct formulas") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = oracle::uniform(rng, 1000, 0.0, 2.0);
    const auto f = oracle::uniform(rng, 1000, -200.0, 9000.0);
    const auto m = iafm_of(a, f);
    const double sc = jiaf::spectral_centroid(m);
    const double ss = jiaf::spectral_spread(m, sc);
    REQUIRE(oracle::rel_err(sc, oracle::centroid(a, f)) < 1e-12);
    REQUIRE(oracle::rel_err(ss, oracle::spread(a, f)) < 1e-12);
    // Koenig-Huygens.
    long double m2 = 0, w = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      m2 += static_cast<long double>(f[i]) * f[i] * a[i];
      w += a[i];
    }
    REQUIRE(oracle::rel_err(ss * ss, static_cast<double>(m2 / w) - sc * sc) < 1e-9);
    REQUIRE(sc >= *std::min_element(f.begin(), f.end()));
    REQUIRE(sc <= *std::max_element(f.begin(), f.end()));
  }
}

TEST_CASE("coefficient of variation") {
  CHECK(jiaf::coefficient_of_variation(15.0, 5.0) == Catch::Approx(100.0 / 3.0));
  CHECK(jiaf::coefficient_of_variation(15.0, 0.0) == 0.0);
  CHECK(kind_of([] { jiaf::coefficient_of_variation(0.0, 1.0); }) ==
        jiaf::ErrorKind::degenerate);
}

TEST_CASE("correlation peak examples") {
  const std::vector<double> x = {1, 2, 3};
  auto p = jiaf::correlation_peak(jiaf::compute_iafc(AmplitudeFrequency{x, x}));
  CHECK(p.cp == Catch::Approx(14.0));
  CHECK(p.pl == 0);

  const std::vector<double> a = {1, 0, 0}, f = {0, 0, 1};
  p = jiaf::correlation_peak(jiaf::compute_iafc(AmplitudeFrequency{a, f}));
  CHECK(p.cp == Catch::Approx(1.0));
  CHECK(p.pl == -2);
}

TEST_CASE("correlation peak tie-breaking") {
  // Exact ties at lags -1, +1 and +2: the smallest |lag| wins, then the negative one.
  jiaf::Iafc iafc{{0.0, 5.0, 1.0, 5.0, 5.0}};
  auto p = jiaf::correlation_peak(iafc);
  CHECK(p.cp == 5.0);
  CHECK(p.pl == -1);
  iafc.values = {5.0, 0.0, 5.0, 0.0, 5.0};
  CHECK(jiaf::correlation_peak(iafc).pl == 0);
  iafc.values = {5.0, 0.0, 0.0, 0.0, 5.0};
  CHECK(jiaf::correlation_peak(iafc).pl == -2);
}

TEST_CASE("correlation peak agrees with the brute-force argmax") {
  std::mt19937_64 rng(41);
  for (std::size_t n : {16, 100, 1024}) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto a = oracle::uniform(rng, n, 0.0, 1.0);
      const auto f = oracle::uniform(rng, n, 0.0, 1.0);
      const auto p = jiaf::correlation_peak(jiaf::compute_iafc(AmplitudeFrequency{a, f}));
      const auto want = oracle::peak(oracle::cross_correlation(a, f));
      REQUIRE(p.pl == want.lag);
      REQUIRE(oracle::rel_err(p.cp, want.value) < 1e-9);
    }
  }
}

TEST_CASE("value entropy") {
  CHECK(jiaf::value_entropy(std::vector<double>{1, 2, 1, 2, 1, 2}) == Catch::Approx(1.0));
  std::vector<double> distinct(64);
  for (std::size_t i = 0; i < distinct.size(); ++i) distinct[i] = 0.5 * i;
  CHECK(jiaf::value_entropy(distinct) == Catch::Approx(6.0));

  std::mt19937_64 rng(2);
  auto values = oracle::uniform(rng, 200, 0.0, 1.0);
  for (std::size_t i = 0; i < 100; ++i) values[i + 100] = values[i % 37];
  CHECK(jiaf::value_entropy(values) == Catch::Approx(oracle::shannon_entropy(values)).epsilon(1e-12));

  // Literal form: -sum x_i log2 P(x_i) over the distinct values.
  jiaf::FeatureOptions literal;
  literal.entropy = jiaf::EntropyForm::literal;
  const std::vector<double> two = {0.25, 0.75, 0.25, 0.75};
  CHECK(jiaf::value_entropy(two, literal) == Catch::Approx(1.0));

  // Binned: equal-width bins collapse nearby values.
  jiaf::FeatureOptions binned;
  binned.entropy_bins = 2;
  CHECK(jiaf::value_entropy(std::vector<double>{0.0, 0.1, 0.9, 1.0}, binned) ==
        Catch::Approx(1.0));
}

TEST_CASE("mean-to-entropy ratio") {
  const std::size_t n = 8;
  jiaf::Iefd iefd;
  iefd.values = {0.1, 0.3, 0.1, 0.3, 0.1, 0.3, 0.1, 0.3};
  CHECK(jiaf::mean_to_entropy_ratio(iefd) == Catch::Approx(0.2));

  iefd.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) iefd.values[i] = 0.01 * (i + 1);
  CHECK(jiaf::mean_to_entropy_ratio(iefd) == Catch::Approx(0.045 / 3.0));

  iefd.values.assign(n, 0.125);
  CHECK(kind_of([&] { jiaf::mean_to_entropy_ratio(iefd); }) == jiaf::ErrorKind::degenerate);
}

TEST_CASE("features of a pure tone") {
  for (double amp : {1.0, 0.01, 250.0}) {
    const auto f = jiaf::extract_features(
        jiaf::Signal(oracle::tone(6400, 8000.0, kFs, amp, 0.7), kFs));
    INFO("amplitude " << amp);
    CHECK(std::abs(f.sc - 8000.0) < 80.0);
    CHECK(f.ss < 400.0);
    CHECK(f.pl == 0);
    CHECK(f.ss >= 0.0);
    CHECK(f.cov >= 0.0);
  }
}

TEST_CASE("features agree with a composition of the oracles") {
  std::mt19937_64 rng(77);
  const jiaf::Signal s(oracle::gaussian(rng, 512), kFs);
  const auto series = jiaf::analyze(s);
  const auto f = jiaf::extract_features(s);
  CHECK(oracle::rel_err(f.sc, oracle::centroid(series.ia, series.ifreq)) < 1e-12);
  CHECK(oracle::rel_err(f.ss, oracle::spread(series.ia, series.ifreq)) < 1e-9);
  CHECK(oracle::rel_err(f.cov, 100.0 * f.ss / f.sc) < 1e-15);
  const auto want = oracle::peak(oracle::cross_correlation(series.ia, series.ifreq));
  CHECK(f.pl == want.lag);
  CHECK(oracle::rel_err(f.cp, want.value) < 1e-9);
  CHECK(f.pl >= -511);
  CHECK(f.pl <= 511);
  const auto iefd = jiaf::compute_iefd(series);
  long double mean = 0;
  for (double v : iefd.values) mean += v;
  mean /= iefd.values.size();
  CHECK(oracle::rel_err(f.mer, static_cast<double>(mean) /
                                   oracle::shannon_entropy(iefd.values)) < 1e-12);
}

TEST_CASE("scale covariance of the feature vector") {
  jiaf::SynthRecipe recipe;
  for (int trial = 0; trial < 10; ++trial) {
    const auto x = jiaf::synth_one(recipe, static_cast<jiaf::FaultClass>(1 + trial % 4),
                                   7, static_cast<std::size_t>(trial))
                       .signal;
    const auto base = jiaf::extract_features(x);
    for (double c : {0.5, 3.0, 1e4}) {
      std::vector<double> y(x.samples().begin(), x.samples().end());
      for (double& v : y) v *= c;
      const auto f = jiaf::extract_features(jiaf::Signal(y, kFs));
      REQUIRE(oracle::rel_err(f.sc, base.sc) < 1e-9);
      REQUIRE(oracle::rel_err(f.ss, base.ss) < 1e-9);
      REQUIRE(oracle::rel_err(f.cov, base.cov) < 1e-9);
      REQUIRE(oracle::rel_err(f.mer, base.mer) < 1e-9);
      REQUIRE(oracle::rel_err(f.cp, c * base.cp) < 1e-9);
      REQUIRE(f.pl == base.pl);
    }
  }
}

TEST_CASE("feature vector serialization order") {
  const jiaf::FeatureVector f{1, 2, 3, 4, 5, 6};
  CHECK(f.as_array() == std::array<double, 6>{1, 2, 3, 4, 5, 6});
  CHECK(jiaf::FeatureVector::kNames[0] == "ss");
  CHECK(jiaf::FeatureVector::kNames[5] == "mer");
  CHECK(f.is_finite());
  CHECK_FALSE(jiaf::FeatureVector{1, 2, std::nan(""), 4, 5, 6}.is_finite());
}

TEST_CASE("constant signal features are degenerate") {
  CHECK(kind_of([] { jiaf::extract_features(jiaf::Signal(std::vector<double>(64, 1.0), kFs)); }) ==
        jiaf::ErrorKind::degenerate);
  CHECK(kind_of([] { jiaf::extract_features(jiaf::Signal(std::vector<double>(64, 0.0), kFs)); }) ==
        jiaf::ErrorKind::degenerate);
}

TEST_CASE("feature extraction is deterministic") {
  std::mt19937_64 rng(5);
  const jiaf::Signal s(oracle::gaussian(rng, 6400), kFs);
  const auto a = jiaf::extract_features(s);
  const auto b = jiaf::extract_features(s);
  CHECK(std::memcmp(&a, &b, sizeof a) == 0);
}

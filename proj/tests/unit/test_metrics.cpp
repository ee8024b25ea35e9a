// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The jiaf Authors

#include <catch_amalgamated.hpp>

#include <cmath>
#include <memory>
#include <random>
#include <sstream>

#include "core/dataset.hpp"
#include "core/error.hpp"
#include "core/forest.hpp"
#include "core/metrics.hpp"
#include "support/oracles.hpp"

namespace {

double auc(const std::vector<double>& scores, const std::vector<bool>& positive) {
  const std::unique_ptr<bool[]> flags(new bool[positive.size()]);
  std::copy(positive.begin(), positive.end(), flags.get());
  return jiaf::roc_auc(scores, std::span<const bool>(flags.get(), positive.size()));
}

}  // namespace

TEST_CASE("argmax breaks ties toward the lowest index") {
  CHECK(jiaf::argmax(std::vector<double>{0.2, 0.5, 0.3}) == 1);
  CHECK(jiaf::argmax(std::vector<double>{0.4, 0.4, 0.2}) == 0);
  CHECK(jiaf::argmax(std::vector<double>{0.1, 0.45, 0.45}) == 1);
}

TEST_CASE("argmax survives positive rescaling") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    std::vector<double> p = {u(rng), u(rng), u(rng), u(rng)};
    const double sum = p[0] + p[1] + p[2] + p[3];
    for (double& v : p) v /= sum;
    const auto before = jiaf::argmax(p);
    const double c = 0.01 + 10 * u(rng);
    for (double& v : p) v *= c;
    const double sum2 = p[0] + p[1] + p[2] + p[3];
    for (double& v : p) v /= sum2;
    REQUIRE(jiaf::argmax(p) == before);
  }
}

TEST_CASE("ROC-AUC on constructed sets") {
  CHECK(auc({0.1, 0.2, 0.8, 0.9}, {false, false, true, true}) == 1.0);
  CHECK(auc({0.9, 0.8, 0.2, 0.1}, {false, false, true, true}) == 0.0);
  CHECK(auc({0.5, 0.5, 0.5, 0.5}, {false, true, false, true}) == 0.5);
  CHECK(auc({0.1, 0.4, 0.35, 0.8}, {false, false, true, true}) == 0.75);
  CHECK(std::isnan(auc({0.1, 0.2}, {true, true})));
  CHECK(std::isnan(auc({0.1, 0.2}, {false, false})));
}

TEST_CASE("ROC-AUC is 1 exactly when positives outrank negatives") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> s(20);
    std::vector<bool> pos(20);
    for (std::size_t i = 0; i < 20; ++i) {
      pos[i] = i % 2 == 0;
      s[i] = std::round(u(rng) * 20) / 20;
    }
    double min_pos = 2, max_neg = -1;
    for (std::size_t i = 0; i < 20; ++i) {
      if (pos[i]) min_pos = std::min(min_pos, s[i]);
      else max_neg = std::max(max_neg, s[i]);
    }
    const double a = auc(s, pos);
    REQUIRE(a >= 0.0);
    REQUIRE(a <= 1.0);
    REQUIRE((a == 1.0) == (min_pos > max_neg));
  }
}

TEST_CASE("ROC-AUC matches the threshold-sweep oracle") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> s(30);
    std::vector<bool> pos(30);
    for (std::size_t i = 0; i < 30; ++i) {
      pos[i] = u(rng) < 0.4;
      // Coarse rounding on half the trials to exercise ties.
      s[i] = trial % 2 ? std::round(u(rng) * 8) / 8 : u(rng);
    }
    pos[0] = true;
    pos[1] = false;
    REQUIRE(std::abs(auc(s, pos) - oracle::threshold_sweep_auc(s, pos)) < 1e-12);
  }
}

TEST_CASE("uniform random scores give AUC near one half") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> s(10000);
  std::vector<bool> pos(10000);
  for (std::size_t i = 0; i < s.size(); ++i) {
    s[i] = u(rng);
    pos[i] = i % 2 == 0;
  }
  CHECK(std::abs(auc(s, pos) - 0.5) < 0.02);
}

TEST_CASE("evaluate_scores accounting") {
  const std::vector<std::vector<double>> probs = {
      {0.9, 0.1, 0.0}, {0.2, 0.7, 0.1}, {0.1, 0.2, 0.7}, {0.6, 0.3, 0.1},
      {0.3, 0.3, 0.4}, {0.1, 0.8, 0.1}};
  const std::vector<std::size_t> labels = {0, 1, 2, 1, 2, 0};
  const auto r = jiaf::evaluate_scores(probs, labels, {"a", "b", "c"});
  CHECK(r.test_rows == 6);
  // Predictions: 0, 1, 2, 0, 2, 1
  CHECK(r.confusion == std::vector<std::vector<std::size_t>>{{1, 1, 0}, {1, 1, 0}, {0, 0, 2}});
  CHECK(r.accuracy == Catch::Approx(400.0 / 6));
  CHECK(r.support == std::vector<std::size_t>{2, 2, 2});
  CHECK(r.precision[2] == 1.0);
  CHECK(r.recall[0] == 0.5);
  std::size_t total = 0;
  for (const auto& row : r.confusion) for (auto v : row) total += v;
  CHECK(total == 6);

  // Macro AUC is the mean of the per-class one-vs-rest AUCs.
  double want = 0.0;
  for (std::size_t c = 0; c < 3; ++c) {
    std::vector<double> s;
    std::vector<bool> pos;
    for (std::size_t i = 0; i < probs.size(); ++i) {
      s.push_back(probs[i][c]);
      pos.push_back(labels[i] == c);
    }
    want += oracle::threshold_sweep_auc(s, pos) / 3;
  }
  CHECK(r.roc_auc == Catch::Approx(want).epsilon(1e-12));
  CHECK(r.auc_classes == 3);
}

TEST_CASE("perfect scores") {
  const std::vector<std::vector<double>> probs = {{1, 0}, {0, 1}, {1, 0}, {0, 1}};
  const std::vector<std::size_t> labels = {0, 1, 0, 1};
  const auto r = jiaf::evaluate_scores(probs, labels, {"x", "y"});
  CHECK(r.accuracy == 100.0);
  CHECK(r.roc_auc == 1.0);
  CHECK(r.confusion == std::vector<std::vector<std::size_t>>{{2, 0}, {0, 2}});
}

TEST_CASE("evaluate maps classes by name and checks coverage") {
  using Node = jiaf::DecisionTree::Node;
  const jiaf::DecisionTree tree({Node{0, 0.5, 1, 2, {}}, Node{-1, 0, 0, 0, {3, 0}},
                                 Node{-1, 0, 0, 0, {0, 3}}});
  const jiaf::RandomForest forest({tree}, {"low", "high"}, {}, {3, 3});

  jiaf::LabeledDataset test;
  test.class_names = {"high", "low"};  // different order from the forest
  test.rows.push_back({{0.1, 0, 0, 0, 0, 0}, 1, {"t", 0}});
  test.rows.push_back({{0.9, 0, 0, 0, 0, 0}, 0, {"t", 1}});
  const auto r = jiaf::evaluate(forest, test);
  CHECK(r.accuracy == 100.0);
  CHECK(r.class_names == std::vector<std::string>{"low", "high"});

  test.class_names.push_back("unseen");
  test.rows.push_back({{0.9, 0, 0, 0, 0, 0}, 2, {"t", 2}});
  try {
    jiaf::evaluate(forest, test);
    FAIL("expected an error");
  } catch (const jiaf::Error& e) {
    CHECK(e.kind() == jiaf::ErrorKind::config);
  }

  jiaf::LabeledDataset empty;
  empty.class_names = {"low", "high"};
  try {
    jiaf::evaluate(forest, empty);
    FAIL("expected an error");
  } catch (const jiaf::Error& e) {
    CHECK(e.kind() == jiaf::ErrorKind::config);
  }
}

TEST_CASE("report and CSV exports") {
  const std::vector<std::vector<double>> probs = {{0.8, 0.2}, {0.3, 0.7}, {0.6, 0.4}};
  const std::vector<std::size_t> labels = {0, 1, 1};
  const auto r = jiaf::evaluate_scores(probs, labels, {"1", "2"});
  jiaf::ForestConfig config;
  jiaf::ReportContext ctx;
  ctx.train_rows = 7;
  std::ostringstream report;
  jiaf::write_report(report, r, config, ctx);
  const auto text = report.str();
  CHECK_THAT(text, Catch::Matchers::ContainsSubstring("n_trees=100"));
  CHECK_THAT(text, Catch::Matchers::ContainsSubstring("macro average of one-vs-rest"));
  CHECK_THAT(text, Catch::Matchers::ContainsSubstring("train_fraction=0.7,"));
  CHECK_THAT(text, Catch::Matchers::ContainsSubstring("train_rows: 7"));
  CHECK_THAT(text, Catch::Matchers::ContainsSubstring("accuracy_percent: 66.6667"));

  std::ostringstream csv;
  jiaf::write_confusion_csv(csv, r);
  CHECK(csv.str() == "true_class,1,2\n1,1,0\n2,1,1\n");
}

TEST_CASE("predictions CSV") {
  using Node = jiaf::DecisionTree::Node;
  const jiaf::DecisionTree tree({Node{-1, 0, 0, 0, {1, 3}}});
  const jiaf::RandomForest forest({tree}, {"a", "b"}, {}, {1, 3});
  jiaf::LabeledDataset rows;
  rows.class_names = {"a", "b"};
  rows.rows.push_back({{}, 0, {"src", 4}});
  rows.rows.push_back({{}, std::nullopt, {"src", 5}});
  std::ostringstream out;
  jiaf::write_predictions_csv(out, forest, rows);
  CHECK(out.str() ==
        "source,segment,label,predicted,p_a,p_b\n"
        "src,4,a,b,0.25,0.75\n"
        "src,5,,b,0.25,0.75\n");
}

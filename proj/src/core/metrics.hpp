// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The jiaf Authors

#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "core/dataset.hpp"
#include "core/forest.hpp"

namespace jiaf {

/// Index of the largest entry; ties go to the lowest index.
std::size_t argmax(std::span<const double> values);

/// Area under the ROC curve from the Mann-Whitney rank statistic (tied scores
/// count one half). NaN when either class is absent.
double roc_auc(std::span<const double> scores, std::span<const bool> positive);

struct EvalReport {
  std::vector<std::string> class_names;
  double accuracy = 0.0;  // percent
  double roc_auc = 0.0;   // macro one-vs-rest
  std::size_t auc_classes = 0;  // classes with both positives and negatives
  std::vector<std::vector<std::size_t>> confusion;  // [true][predicted]
  std::vector<double> precision;
  std::vector<double> recall;
  std::vector<std::size_t> support;
  std::size_t test_rows = 0;
};

/// Predicts every row and scores the result. Throws ErrorKind::config for an
/// empty test set or a test label the forest never saw in training.
EvalReport evaluate(const RandomForest& forest, const LabeledDataset& test);

/// Same, from already computed probability rows (one per test row).
EvalReport evaluate_scores(const std::vector<std::vector<double>>& probabilities,
                           std::span<const std::size_t> labels,
                           std::vector<std::string> class_names);

struct ReportContext {
  Method method = Method::proposed;
  std::size_t train_rows = 0;
  double train_fraction = 0.7;
  std::uint64_t split_seed = 42;
  std::size_t features_dropped = 0;
};

/// Plain-text report. Its header states the forest settings and the ROC-AUC
/// averaging scheme. Contains nothing run-dependent (no timestamps).
void write_report(std::ostream& out, const EvalReport& report,
                  const ForestConfig& config, const ReportContext& context);

/// `true_class,<predicted class names...>`, one row per true class.
void write_confusion_csv(std::ostream& out, const EvalReport& report);

/// `source,segment,label,predicted,p_<class>...` for every row.
void write_predictions_csv(std::ostream& out, const RandomForest& forest,
                           const LabeledDataset& rows);

}  // namespace jiaf

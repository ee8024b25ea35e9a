// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The jiaf Authors

#include "core/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <numeric>
#include <ostream>

#include "core/error.hpp"
#include "core/numeric.hpp"

namespace jiaf {

std::size_t argmax(std::span<const double> values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) {
      best = i;
    }
  }
  return best;
}

double roc_auc(std::span<const double> scores, std::span<const bool> positive) {
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  double positive_rank_sum = 0.0;
  std::size_t positives = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) {
      ++j;
    }
    // Ranks i+1 .. j share their average.
    const double rank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t t = i; t < j; ++t) {
      if (positive[order[t]]) {
        positive_rank_sum += rank;
        ++positives;
      }
    }
    i = j;
  }
  const std::size_t negatives = n - positives;
  if (positives == 0 || negatives == 0) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  const double p = static_cast<double>(positives);
  const double u = positive_rank_sum - p * (p + 1.0) / 2.0;
  return u / (p * static_cast<double>(negatives));
}

EvalReport evaluate_scores(const std::vector<std::vector<double>>& probabilities,
                           std::span<const std::size_t> labels,
                           std::vector<std::string> class_names) {
  const std::size_t k = class_names.size();
  const std::size_t n = labels.size();
  if (n == 0) {
    throw Error(ErrorKind::config, "test set is empty");
  }
  EvalReport report;
  report.class_names = std::move(class_names);
  report.test_rows = n;
  report.confusion.assign(k, std::vector<std::size_t>(k, 0));

  std::size_t correct = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t predicted = argmax(probabilities[i]);
    ++report.confusion[labels[i]][predicted];
    correct += predicted == labels[i] ? 1 : 0;
  }
  report.accuracy = 100.0 * static_cast<double>(correct) / static_cast<double>(n);

  double auc_total = 0.0;
  std::vector<double> scores(n);
  std::unique_ptr<bool[]> positive(new bool[n]);
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      scores[i] = probabilities[i][c];
      positive[i] = labels[i] == c;
    }
    const double auc = roc_auc(scores, std::span<const bool>(positive.get(), n));
    if (!std::isnan(auc)) {
      auc_total += auc;
      ++report.auc_classes;
    }
  }
  report.roc_auc = report.auc_classes > 0
                       ? auc_total / static_cast<double>(report.auc_classes)
                       : std::numeric_limits<double>::quiet_NaN();

  report.precision.assign(k, 0.0);
  report.recall.assign(k, 0.0);
  report.support.assign(k, 0);
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t predicted = 0;
    for (std::size_t t = 0; t < k; ++t) {
      predicted += report.confusion[t][c];
      report.support[c] += report.confusion[c][t];
    }
    const double hit = static_cast<double>(report.confusion[c][c]);
    report.precision[c] = predicted > 0 ? hit / static_cast<double>(predicted) : 0.0;
    report.recall[c] =
        report.support[c] > 0 ? hit / static_cast<double>(report.support[c]) : 0.0;
  }
  return report;
}

EvalReport evaluate(const RandomForest& forest, const LabeledDataset& test) {
  if (test.rows.empty()) {
    throw Error(ErrorKind::config, "test set is empty");
  }
  const auto& names = forest.class_names();
  std::vector<std::vector<double>> probabilities;
  std::vector<std::size_t> labels;
  probabilities.reserve(test.size());
  labels.reserve(test.size());
  for (const Row& row : test.rows) {
    if (!row.label) {
      throw Error(ErrorKind::config, "test rows must be labeled");
    }
    const std::string& name = test.class_names[*row.label];
    const auto it = std::find(names.begin(), names.end(), name);
    const auto index = static_cast<std::size_t>(it - names.begin());
    if (it == names.end() || forest.training_counts()[index] == 0) {
      throw Error(ErrorKind::config,
                  "test class '" + name + "' was absent from training");
    }
    labels.push_back(index);
    probabilities.push_back(forest.predict_proba(row.features));
  }
  return evaluate_scores(probabilities, labels, names);
}

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) {
    s.insert(0, width - s.size(), ' ');
  }
  return s;
}

}  // namespace

void write_report(std::ostream& out, const EvalReport& report,
                  const ForestConfig& config, const ReportContext& context) {
  out << "# jiaf evaluation report\n"
      << "# classifier: random forest, gini splits, bootstrap resampling"
      << " (n_trees=" << config.n_trees << ", max_depth="
      << (config.max_depth == 0 ? std::string("unlimited")
                                : std::to_string(config.max_depth))
      << ", min_leaf=" << config.min_leaf
      << ", features_per_split=" << config.features_per_split
      << ", seed=" << config.seed << ")\n"
      << "# roc-auc: macro average of one-vs-rest Mann-Whitney AUC over "
      << report.auc_classes << " classes\n"
      << "# split: stratified, train_fraction=" << format_short(context.train_fraction)
      << ", seed=" << context.split_seed << "\n"
      << "method: " << to_string(context.method) << '\n'
      << "train_rows: " << context.train_rows << '\n'
      << "test_rows: " << report.test_rows << '\n'
      << "accuracy_percent: " << fixed(report.accuracy, 4) << '\n'
      << "roc_auc: " << fixed(report.roc_auc, 6) << '\n'
      << '\n'
      << "confusion matrix (rows: true class, columns: predicted class)\n";

  std::size_t width = 8;
  for (const auto& name : report.class_names) {
    width = std::max(width, name.size() + 2);
  }
  out << pad("", width);
  for (const auto& name : report.class_names) {
    out << pad(name, width);
  }
  out << '\n';
  for (std::size_t t = 0; t < report.class_names.size(); ++t) {
    out << pad(report.class_names[t], width);
    for (auto v : report.confusion[t]) {
      out << pad(std::to_string(v), width);
    }
    out << '\n';
  }
  out << '\n' << pad("class", width) << pad("precision", 12) << pad("recall", 12)
      << pad("support", 10) << '\n';
  for (std::size_t c = 0; c < report.class_names.size(); ++c) {
    out << pad(report.class_names[c], width) << pad(fixed(report.precision[c], 4), 12)
        << pad(fixed(report.recall[c], 4), 12)
        << pad(std::to_string(report.support[c]), 10) << '\n';
  }
}

void write_confusion_csv(std::ostream& out, const EvalReport& report) {
  out << "true_class";
  for (const auto& name : report.class_names) {
    out << ',' << name;
  }
  out << '\n';
  for (std::size_t t = 0; t < report.class_names.size(); ++t) {
    out << report.class_names[t];
    for (auto v : report.confusion[t]) {
      out << ',' << v;
    }
    out << '\n';
  }
}

void write_predictions_csv(std::ostream& out, const RandomForest& forest,
                           const LabeledDataset& rows) {
  const auto& names = forest.class_names();
  out << "source,segment,label,predicted";
  for (const auto& name : names) {
    out << ",p_" << name;
  }
  out << '\n';
  for (const Row& row : rows.rows) {
    const auto probs = forest.predict_proba(row.features);
    out << row.provenance.source << ',' << row.provenance.segment << ','
        << (row.label ? rows.class_names[*row.label] : std::string()) << ','
        << names[argmax(probs)];
    for (double p : probs) {
      out << ',' << format_double(p);
    }
    out << '\n';
  }
}

}  // namespace jiaf

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The jiaf Authors

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "core/dataset.hpp"
#include "core/features.hpp"

namespace jiaf {

using FeatureArray = std::array<double, FeatureVector::kSize>;

struct ForestConfig {
  std::size_t n_trees = 100;
  std::size_t max_depth = 0;  // 0 = unlimited
  std::size_t min_leaf = 1;
  std::size_t features_per_split = 3;  // ceil(sqrt(6))
  std::uint64_t seed = 42;
  unsigned workers = 0;  // not persisted; never changes the result

  void validate() const;  // ErrorKind::config
};

/// Axis-aligned binary tree. Internal nodes send x[feature] <= threshold left.
class DecisionTree {
 public:
  struct Node {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    std::uint32_t left = 0;
    std::uint32_t right = 0;
    std::vector<std::uint32_t> counts;  // leaves only: per-class sample count
    bool is_leaf() const noexcept { return feature < 0; }
  };

  DecisionTree() = default;
  explicit DecisionTree(std::vector<Node> nodes) : nodes_(std::move(nodes)) {}

  const Node& leaf_for(const FeatureArray& x) const;
  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  std::size_t depth() const;

 private:
  std::vector<Node> nodes_;
};

/// Bootstrap sample for one tree: `n` draws with replacement, a pure
/// function of (seed, tree index).
std::vector<std::size_t> bootstrap_indices(std::uint64_t seed,
                                           std::size_t tree_index,
                                           std::size_t n);

class RandomForest {
 public:
  RandomForest(std::vector<DecisionTree> trees,
               std::vector<std::string> class_names, ForestConfig config,
               std::vector<std::size_t> training_counts);

  /// Needs at least two classes with at least two rows each; unlabeled rows
  /// are rejected. Throws ErrorKind::config / ErrorKind::degenerate.
  static RandomForest train(const LabeledDataset& data,
                            const ForestConfig& config);

  /// Mean of per-tree leaf class frequencies; sums to 1.
  std::vector<double> predict_proba(const FeatureArray& x) const;
  std::vector<double> predict_proba(const FeatureVector& f) const {
    return predict_proba(f.as_array());
  }
  std::size_t predict(const FeatureVector& f) const;

  const std::vector<DecisionTree>& trees() const noexcept { return trees_; }
  const std::vector<std::string>& class_names() const noexcept { return class_names_; }
  const ForestConfig& config() const noexcept { return config_; }
  /// Training rows per class (before bootstrapping).
  const std::vector<std::size_t>& training_counts() const noexcept {
    return training_counts_;
  }

  /// Line-oriented text format headed by "jiaf-forest 1".
  void save(std::ostream& out) const;
  static RandomForest load(std::istream& in);  // ErrorKind::model_format

 private:
  std::vector<DecisionTree> trees_;
  std::vector<std::string> class_names_;
  ForestConfig config_;
  std::vector<std::size_t> training_counts_;
};

}  // namespace jiaf

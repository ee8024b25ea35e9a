// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The jiaf Authors

#include "core/forest.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "core/error.hpp"
#include "core/numeric.hpp"
#include "core/parallel.hpp"

namespace jiaf {

void ForestConfig::validate() const {
  if (n_trees < 1) {
    throw Error(ErrorKind::config, "n_trees must be at least 1");
  }
  if (min_leaf < 1) {
    throw Error(ErrorKind::config, "min_leaf must be at least 1");
  }
  if (features_per_split < 1 || features_per_split > FeatureVector::kSize) {
    throw Error(ErrorKind::config, "features_per_split must be in [1, 6]");
  }
}

const DecisionTree::Node& DecisionTree::leaf_for(const FeatureArray& x) const {
  const Node* node = &nodes_.front();
  while (!node->is_leaf()) {
    node = &nodes_[x[static_cast<std::size_t>(node->feature)] <= node->threshold
                       ? node->left
                       : node->right];
  }
  return *node;
}

std::size_t DecisionTree::depth() const {
  std::vector<std::size_t> level(nodes_.size(), 0);
  std::size_t deepest = 0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    deepest = std::max(deepest, level[i]);
    if (!nodes_[i].is_leaf()) {
      level[nodes_[i].left] = level[i] + 1;
      level[nodes_[i].right] = level[i] + 1;
    }
  }
  return deepest;
}

namespace {

std::mt19937_64 tree_rng(std::uint64_t seed, std::size_t tree_index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(tree_index),
                    static_cast<std::uint32_t>(tree_index >> 32)};
  return std::mt19937_64(seq);
}

std::vector<std::size_t> draw_bootstrap(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<std::size_t> out(n);
  for (auto& i : out) {
    i = pick(rng);
  }
  return out;
}

double gini_sum_of_squares(const std::vector<std::uint32_t>& counts, double n) {
  double s = 0.0;
  for (auto c : counts) {
    const double p = static_cast<double>(c) / n;
    s += p * p;
  }
  return 1.0 - s;
}

class TreeBuilder {
 public:
  TreeBuilder(const std::vector<FeatureArray>& x, const std::vector<std::size_t>& y,
              std::size_t classes, const ForestConfig& config, std::mt19937_64& rng)
      : x_(x), y_(y), classes_(classes), config_(config), rng_(rng) {}

  DecisionTree build(std::vector<std::size_t> sample) {
    nodes_.clear();
    grow(std::move(sample), 0);
    return DecisionTree(std::move(nodes_));
  }

 private:
  struct Split {
    int feature = -1;
    double threshold = 0.0;
    double impurity = 0.0;
  };

  std::uint32_t grow(std::vector<std::size_t> sample, std::size_t depth) {
    const auto id = static_cast<std::uint32_t>(nodes_.size());
    nodes_.emplace_back();

    std::vector<std::uint32_t> counts(classes_, 0);
    for (auto i : sample) {
      ++counts[y_[i]];
    }
    const bool pure =
        std::count_if(counts.begin(), counts.end(), [](auto c) { return c > 0; }) <= 1;
    const bool depth_reached = config_.max_depth != 0 && depth >= config_.max_depth;
    Split split;
    if (!pure && !depth_reached && sample.size() >= 2 * config_.min_leaf) {
      split = best_split(sample);
    }
    if (split.feature < 0) {
      nodes_[id].counts = std::move(counts);
      return id;
    }

    std::vector<std::size_t> left;
    std::vector<std::size_t> right;
    for (auto i : sample) {
      (x_[i][static_cast<std::size_t>(split.feature)] <= split.threshold ? left : right)
          .push_back(i);
    }
    sample.clear();
    sample.shrink_to_fit();
    const auto l = grow(std::move(left), depth + 1);
    const auto r = grow(std::move(right), depth + 1);
    nodes_[id].feature = split.feature;
    nodes_[id].threshold = split.threshold;
    nodes_[id].left = l;
    nodes_[id].right = r;
    return id;
  }

  // Features are visited in a random order; the first features_per_split are
  // always evaluated, further ones only while no valid split has been found.
  Split best_split(const std::vector<std::size_t>& sample) {
    std::array<int, FeatureVector::kSize> order{};
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng_);

    Split best;
    std::vector<std::pair<double, std::size_t>> column(sample.size());
    for (std::size_t visited = 0; visited < order.size(); ++visited) {
      if (visited >= config_.features_per_split && best.feature >= 0) {
        break;
      }
      const auto f = static_cast<std::size_t>(order[visited]);
      for (std::size_t j = 0; j < sample.size(); ++j) {
        column[j] = {x_[sample[j]][f], y_[sample[j]]};
      }
      std::sort(column.begin(), column.end());

      const double n = static_cast<double>(column.size());
      std::vector<std::uint32_t> left(classes_, 0);
      std::vector<std::uint32_t> right(classes_, 0);
      for (const auto& [v, c] : column) {
        ++right[c];
      }
      for (std::size_t j = 0; j + 1 < column.size(); ++j) {
        ++left[column[j].second];
        --right[column[j].second];
        const std::size_t nl = j + 1;
        const std::size_t nr = column.size() - nl;
        if (column[j].first == column[j + 1].first || nl < config_.min_leaf ||
            nr < config_.min_leaf) {
          continue;
        }
        const double dl = static_cast<double>(nl);
        const double dr = static_cast<double>(nr);
        const double impurity =
            (dl * gini_sum_of_squares(left, dl) + dr * gini_sum_of_squares(right, dr)) / n;
        if (best.feature < 0 || impurity < best.impurity) {
          double threshold = 0.5 * (column[j].first + column[j + 1].first);
          if (!(threshold < column[j + 1].first)) {
            threshold = column[j].first;
          }
          best = {static_cast<int>(f), threshold, impurity};
        }
      }
    }
    return best;
  }

  const std::vector<FeatureArray>& x_;
  const std::vector<std::size_t>& y_;
  std::size_t classes_;
  const ForestConfig& config_;
  std::mt19937_64& rng_;
  std::vector<DecisionTree::Node> nodes_;
};

}  // namespace

std::vector<std::size_t> bootstrap_indices(std::uint64_t seed,
                                           std::size_t tree_index,
                                           std::size_t n) {
  auto rng = tree_rng(seed, tree_index);
  return draw_bootstrap(rng, n);
}

RandomForest::RandomForest(std::vector<DecisionTree> trees,
                           std::vector<std::string> class_names,
                           ForestConfig config,
                           std::vector<std::size_t> training_counts)
    : trees_(std::move(trees)),
      class_names_(std::move(class_names)),
      config_(config),
      training_counts_(std::move(training_counts)) {
  if (training_counts_.empty()) {
    training_counts_.assign(class_names_.size(), 0);
  }
}

RandomForest RandomForest::train(const LabeledDataset& data,
                                 const ForestConfig& config) {
  config.validate();
  std::vector<FeatureArray> x;
  std::vector<std::size_t> y;
  x.reserve(data.size());
  y.reserve(data.size());
  for (const Row& row : data.rows) {
    if (!row.label) {
      throw Error(ErrorKind::config, "training rows must be labeled");
    }
    x.push_back(row.features.as_array());
    y.push_back(*row.label);
  }
  const auto counts = data.class_counts();
  const auto populated =
      std::count_if(counts.begin(), counts.end(), [](auto c) { return c > 0; });
  if (populated < 2) {
    throw Error(ErrorKind::degenerate, "training needs at least two classes");
  }
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (counts[c] == 1) {
      throw Error(ErrorKind::degenerate,
                  "class '" + data.class_names[c] + "' has a single training row");
    }
  }

  std::vector<DecisionTree> trees(config.n_trees);
  parallel_for(config.n_trees, config.workers, [&](std::size_t t) {
    auto rng = tree_rng(config.seed, t);
    std::vector<std::size_t> sample = draw_bootstrap(rng, x.size());
    TreeBuilder builder(x, y, data.class_names.size(), config, rng);
    trees[t] = builder.build(std::move(sample));
  });
  return RandomForest(std::move(trees), data.class_names, config, counts);
}

std::vector<double> RandomForest::predict_proba(const FeatureArray& x) const {
  std::vector<double> probs(class_names_.size(), 0.0);
  for (const auto& tree : trees_) {
    const auto& leaf = tree.leaf_for(x);
    const double total =
        static_cast<double>(std::accumulate(leaf.counts.begin(), leaf.counts.end(), 0ull));
    for (std::size_t c = 0; c < probs.size(); ++c) {
      probs[c] += static_cast<double>(leaf.counts[c]) / total;
    }
  }
  for (double& p : probs) {
    p /= static_cast<double>(trees_.size());
  }
  return probs;
}

std::size_t RandomForest::predict(const FeatureVector& f) const {
  const auto probs = predict_proba(f);
  return static_cast<std::size_t>(std::max_element(probs.begin(), probs.end()) -
                                  probs.begin());
}

// Persistence -------------------------------------------------------------------

void RandomForest::save(std::ostream& out) const {
  out << "jiaf-forest 1\n";
  out << "classes " << class_names_.size() << '\n';
  for (const auto& name : class_names_) {
    out << name << '\n';
  }
  out << "config " << config_.n_trees << ' ' << config_.max_depth << ' '
      << config_.min_leaf << ' ' << config_.features_per_split << ' '
      << config_.seed << '\n';
  out << "training_counts";
  for (auto c : training_counts_) {
    out << ' ' << c;
  }
  out << '\n';
  out << "trees " << trees_.size() << '\n';
  for (const auto& tree : trees_) {
    out << "tree " << tree.nodes().size() << '\n';
    for (const auto& node : tree.nodes()) {
      if (node.is_leaf()) {
        out << 'L';
        for (auto c : node.counts) {
          out << ' ' << c;
        }
      } else {
        out << "S " << node.feature << ' ' << format_double(node.threshold) << ' '
            << node.left << ' ' << node.right;
      }
      out << '\n';
    }
  }
  out << "end\n";
}

namespace {

[[noreturn]] void bad_model(const std::string& what) {
  throw Error(ErrorKind::model_format, "model: " + what);
}

std::istringstream next_line(std::istream& in, std::string_view keyword) {
  std::string line;
  if (!std::getline(in, line)) {
    bad_model("unexpected end of file, expected '" + std::string(keyword) + "'");
  }
  std::istringstream ls(line);
  std::string word;
  ls >> word;
  if (word != keyword) {
    bad_model("expected '" + std::string(keyword) + "', found '" + word + "'");
  }
  return ls;
}

}  // namespace

RandomForest RandomForest::load(std::istream& in) {
  auto header = next_line(in, "jiaf-forest");
  int version = 0;
  if (!(header >> version) || version != 1) {
    bad_model("unsupported format version");
  }
  std::size_t k = 0;
  if (!(next_line(in, "classes") >> k) || k < 2) {
    bad_model("bad class count");
  }
  std::vector<std::string> names(k);
  for (auto& name : names) {
    if (!std::getline(in, name)) {
      bad_model("truncated class names");
    }
  }
  ForestConfig config;
  if (!(next_line(in, "config") >> config.n_trees >> config.max_depth >>
        config.min_leaf >> config.features_per_split >> config.seed)) {
    bad_model("bad config line");
  }
  std::vector<std::size_t> training(k);
  auto counts_line = next_line(in, "training_counts");
  for (auto& c : training) {
    if (!(counts_line >> c)) {
      bad_model("bad training counts");
    }
  }
  std::size_t tree_count = 0;
  if (!(next_line(in, "trees") >> tree_count) || tree_count == 0) {
    bad_model("bad tree count");
  }
  std::vector<DecisionTree> trees;
  trees.reserve(tree_count);
  for (std::size_t t = 0; t < tree_count; ++t) {
    std::size_t node_count = 0;
    if (!(next_line(in, "tree") >> node_count) || node_count == 0) {
      bad_model("bad node count");
    }
    std::vector<DecisionTree::Node> nodes(node_count);
    for (auto& node : nodes) {
      std::string line;
      if (!std::getline(in, line)) {
        bad_model("truncated tree");
      }
      std::istringstream ls(line);
      std::string kind;
      ls >> kind;
      if (kind == "L") {
        node.counts.resize(k);
        for (auto& c : node.counts) {
          if (!(ls >> c)) {
            bad_model("bad leaf");
          }
        }
        if (std::accumulate(node.counts.begin(), node.counts.end(), 0ull) == 0) {
          bad_model("empty leaf");
        }
      } else if (kind == "S") {
        std::string threshold;
        if (!(ls >> node.feature >> threshold >> node.left >> node.right) ||
            !parse_double(threshold, node.threshold) || node.feature < 0 ||
            node.feature >= static_cast<int>(FeatureVector::kSize) ||
            node.left >= node_count || node.right >= node_count) {
          bad_model("bad split node");
        }
      } else {
        bad_model("unknown node kind '" + kind + "'");
      }
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (!nodes[i].is_leaf() && (nodes[i].left <= i || nodes[i].right <= i)) {
        bad_model("tree nodes are not in pre-order");
      }
    }
    trees.emplace_back(std::move(nodes));
  }
  next_line(in, "end");
  return RandomForest(std::move(trees), std::move(names), config, std::move(training));
}

}  // namespace jiaf

#include "ucpbench/random_forest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "ucpbench/rng.hpp"

namespace ucpbench {

namespace {

int majority_label(const std::vector<int>& counts) {
  int best = 0;
  for (int c = 1; c < static_cast<int>(counts.size()); ++c)
    if (counts[static_cast<std::size_t>(c)] > counts[static_cast<std::size_t>(best)])
      best = c;  // strict comparison keeps ties at the smaller label
  return best;
}

double gini(const std::vector<int>& counts, int total) {
  if (total == 0) return 0.0;
  double g = 1.0;
  for (int c : counts) {
    const double p = static_cast<double>(c) / static_cast<double>(total);
    g -= p * p;
  }
  return g;
}

}  // namespace

int ForestModel::predict_tree(const Tree& t, std::span<const double> f) const {
  int node = 0;
  while (t.nodes[static_cast<std::size_t>(node)].feature >= 0) {
    const auto& nd = t.nodes[static_cast<std::size_t>(node)];
    node = f[static_cast<std::size_t>(nd.feature)] <= nd.threshold ? nd.left
                                                                   : nd.right;
  }
  return t.nodes[static_cast<std::size_t>(node)].label;
}

std::vector<int> ForestModel::tree_votes(std::span<const double> f) const {
  std::vector<int> votes;
  votes.reserve(trees_.size());
  for (const auto& t : trees_) votes.push_back(predict_tree(t, f));
  return votes;
}

int ForestModel::predict(std::span<const double> f) const {
  if (constant_) return labels_.front();
  std::map<int, int> tally;
  for (int v : tree_votes(f)) ++tally[v];
  int best_label = labels_.front();
  int best_count = -1;
  for (const auto& [label, count] : tally) {
    if (count > best_count) {  // map iterates labels ascending: ties keep smaller
      best_count = count;
      best_label = label;
    }
  }
  return best_label;
}

namespace {

class TreeGrower {
 public:
  TreeGrower(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
             int n_labels, const ForestParams& params, Rng& rng)
      : x_(x), y_(y), n_labels_(n_labels), params_(params), rng_(rng) {
    features_per_split_ = static_cast<int>(
        std::ceil(std::sqrt(static_cast<double>(x[0].size()))));
  }

  ForestModel::Tree grow(const std::vector<std::size_t>& rows) {
    tree_.nodes.clear();
    build(rows);
    return tree_;
  }

  // Reduced-error pruning: replace a subtree by its majority leaf whenever
  // that does not increase the error on the out-of-bag rows reaching it.
  // Nodes no out-of-bag row reaches are left untouched (no evidence).
  void prune(ForestModel::Tree& tree, const std::vector<std::size_t>& oob_rows) {
    if (!tree.nodes.empty() && !oob_rows.empty()) prune_node(tree, 0, oob_rows);
  }

 private:
  int build(const std::vector<std::size_t>& rows) {
    std::vector<int> counts(static_cast<std::size_t>(n_labels_), 0);
    for (auto r : rows) ++counts[static_cast<std::size_t>(y_[r])];
    const int label = majority_label(counts);

    const int node_index = static_cast<int>(tree_.nodes.size());
    tree_.nodes.push_back({});
    tree_.nodes.back().label = label;

    const bool pure = counts[static_cast<std::size_t>(label)] ==
                      static_cast<int>(rows.size());
    if (pure || static_cast<int>(rows.size()) < 2 * params_.min_leaf)
      return node_index;

    int best_feature = -1;
    double best_threshold = 0.0;
    double best_impurity = std::numeric_limits<double>::infinity();
    const auto candidates = sample_features();
    for (int f : candidates) {
      double threshold, impurity;
      if (best_split_on(rows, f, threshold, impurity) && impurity < best_impurity) {
        best_impurity = impurity;
        best_feature = f;
        best_threshold = threshold;
      }
    }
    if (best_feature < 0) return node_index;

    std::vector<std::size_t> left_rows, right_rows;
    for (auto r : rows) {
      if (x_[r][static_cast<std::size_t>(best_feature)] <= best_threshold)
        left_rows.push_back(r);
      else
        right_rows.push_back(r);
    }

    const int left = build(left_rows);
    const int right = build(right_rows);
    auto& node = tree_.nodes[static_cast<std::size_t>(node_index)];
    node.feature = best_feature;
    node.threshold = best_threshold;
    node.left = left;
    node.right = right;
    return node_index;
  }

  // Candidate thresholds are midpoints between consecutive distinct values;
  // both children must satisfy min_leaf. Returns false if no legal split.
  bool best_split_on(const std::vector<std::size_t>& rows, int feature,
                     double& threshold, double& impurity) const {
    std::vector<std::pair<double, int>> vals;
    vals.reserve(rows.size());
    for (auto r : rows)
      vals.emplace_back(x_[r][static_cast<std::size_t>(feature)], y_[r]);
    std::sort(vals.begin(), vals.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    const int total = static_cast<int>(vals.size());
    std::vector<int> left_counts(static_cast<std::size_t>(n_labels_), 0);
    std::vector<int> right_counts(static_cast<std::size_t>(n_labels_), 0);
    for (const auto& [v, label] : vals)
      ++right_counts[static_cast<std::size_t>(label)];

    bool found = false;
    double best = std::numeric_limits<double>::infinity();
    double best_thr = 0.0;
    int n_left = 0;
    for (int i = 0; i < total - 1; ++i) {
      ++left_counts[static_cast<std::size_t>(vals[static_cast<std::size_t>(i)].second)];
      --right_counts[static_cast<std::size_t>(vals[static_cast<std::size_t>(i)].second)];
      ++n_left;
      if (vals[static_cast<std::size_t>(i)].first ==
          vals[static_cast<std::size_t>(i + 1)].first)
        continue;
      const int n_right = total - n_left;
      if (n_left < params_.min_leaf || n_right < params_.min_leaf) continue;
      const double weighted =
          (n_left * gini(left_counts, n_left) + n_right * gini(right_counts, n_right)) /
          static_cast<double>(total);
      if (weighted < best) {
        best = weighted;
        best_thr = 0.5 * (vals[static_cast<std::size_t>(i)].first +
                          vals[static_cast<std::size_t>(i + 1)].first);
        found = true;
      }
    }
    threshold = best_thr;
    impurity = best;
    return found;
  }

  std::vector<int> sample_features() const {
    const int d = static_cast<int>(x_[0].size());
    std::vector<int> all(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) all[static_cast<std::size_t>(i)] = i;
    const int take = std::min(features_per_split_, d);
    for (int i = 0; i < take; ++i) {
      const int j = rng_.next_int(i, d - 1);
      std::swap(all[static_cast<std::size_t>(i)], all[static_cast<std::size_t>(j)]);
    }
    all.resize(static_cast<std::size_t>(take));
    std::sort(all.begin(), all.end());  // deterministic evaluation order
    return all;
  }

  // Returns the subtree's error count on the given rows, pruning in place.
  int prune_node(ForestModel::Tree& tree, int index,
                 const std::vector<std::size_t>& rows) {
    auto& node = tree.nodes[static_cast<std::size_t>(index)];
    int leaf_errors = 0;
    for (auto r : rows)
      if (y_[r] != node.label) ++leaf_errors;
    if (node.feature < 0) return leaf_errors;
    if (rows.empty()) return 0;  // no evidence: keep the subtree

    std::vector<std::size_t> left_rows, right_rows;
    for (auto r : rows) {
      if (x_[r][static_cast<std::size_t>(node.feature)] <= node.threshold)
        left_rows.push_back(r);
      else
        right_rows.push_back(r);
    }
    const int subtree_errors = prune_node(tree, node.left, left_rows) +
                               prune_node(tree, node.right, right_rows);
    if (leaf_errors <= subtree_errors) {
      node.feature = -1;  // collapse to leaf; children become unreachable
      return leaf_errors;
    }
    return subtree_errors;
  }

  const std::vector<std::vector<double>>& x_;
  const std::vector<int>& y_;
  int n_labels_;
  ForestParams params_;
  Rng& rng_;
  ForestModel::Tree tree_;
  int features_per_split_;
};

}  // namespace

ForestModel rf_fit(const std::vector<std::vector<double>>& features,
                   const std::vector<int>& labels, std::uint64_t seed,
                   const ForestParams& params) {
  if (features.empty() || features.size() != labels.size())
    throw std::invalid_argument("rf_fit: feature/label size mismatch or empty");

  ForestModel model;
  model.params_ = params;
  model.labels_ = labels;
  std::sort(model.labels_.begin(), model.labels_.end());
  model.labels_.erase(std::unique(model.labels_.begin(), model.labels_.end()),
                      model.labels_.end());

  // Labels are assumed to be small non-negative cluster indices.
  for (int l : model.labels_)
    if (l < 0) throw std::invalid_argument("rf_fit: labels must be non-negative");
  const int n_labels = model.labels_.back() + 1;

  if (model.labels_.size() < 2) {
    model.constant_ = true;  // degenerate single-class training set
    return model;
  }

  const std::size_t n = features.size();
  for (int t = 0; t < params.num_trees; ++t) {
    Rng rng(derive_seed(seed, "rf-tree", static_cast<std::uint64_t>(t)));
    std::vector<std::size_t> bag(n);
    std::vector<bool> in_bag(n, false);
    for (std::size_t i = 0; i < n; ++i) {
      bag[i] = rng.next_index(n);
      in_bag[bag[i]] = true;
    }
    std::vector<std::size_t> oob;
    for (std::size_t i = 0; i < n; ++i)
      if (!in_bag[i]) oob.push_back(i);

    TreeGrower grower(features, labels, n_labels, params, rng);
    auto tree = grower.grow(bag);
    if (params.prune) grower.prune(tree, oob);
    model.trees_.push_back(std::move(tree));
  }
  return model;
}

}  // namespace ucpbench

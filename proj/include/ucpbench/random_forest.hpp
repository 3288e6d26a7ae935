#pragma once

// Random-forest classifier used to map environmental-factor vectors to
// cluster labels. Fixed setup: 10 trees on bootstrap samples, Gini splits
// over a random subset of ceil(sqrt(d)) features per node, leaves hold at
// least 3 training rows, and each tree is reduced-error pruned against its
// out-of-bag rows. Majority vote across trees, ties toward the smaller
// label.

#include <cstdint>
#include <span>
#include <vector>

namespace ucpbench {

struct ForestParams {
  int num_trees = 10;
  int min_leaf = 3;
  bool prune = true;
  int min_split = 1;  // nominal; min_leaf is the binding constraint
};

class ForestModel {
 public:
  struct Node {
    int feature = -1;       // -1 marks a leaf
    double threshold = 0.0; // go left when value <= threshold
    int left = -1;
    int right = -1;
    int label = 0;          // majority label at this node
  };
  struct Tree {
    std::vector<Node> nodes;  // nodes[0] is the root
  };

  int predict(std::span<const double> features) const;
  std::vector<int> tree_votes(std::span<const double> features) const;

  const std::vector<int>& class_labels() const { return labels_; }
  bool constant() const { return constant_; }
  std::size_t tree_count() const { return trees_.size(); }
  const ForestParams& params() const { return params_; }

 private:
  friend ForestModel rf_fit(const std::vector<std::vector<double>>&,
                            const std::vector<int>&, std::uint64_t,
                            const ForestParams&);

  int predict_tree(const Tree& t, std::span<const double> features) const;

  std::vector<Tree> trees_;
  std::vector<int> labels_;  // sorted distinct training labels
  ForestParams params_;
  bool constant_ = false;
};

ForestModel rf_fit(const std::vector<std::vector<double>>& features,
                   const std::vector<int>& labels, std::uint64_t seed,
                   const ForestParams& params = {});

}  // namespace ucpbench

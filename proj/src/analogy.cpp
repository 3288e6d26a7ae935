#include "ucpbench/analogy.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ucpbench/kmeans.hpp"
#include "ucpbench/mathstats.hpp"

namespace ucpbench {

namespace {

// Nearest row to `query`, optionally excluding one row (for leave-one-out).
std::size_t nearest_row(const std::vector<std::vector<double>>& features,
                        std::span<const double> query, std::size_t exclude) {
  std::size_t best = features.size();
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < features.size(); ++i) {
    if (i == exclude) continue;
    const double d = euclidean_distance(features[i], query);
    if (d < best_d) {  // strict: ties keep the earlier row
      best_d = d;
      best = i;
    }
  }
  return best;
}

}  // namespace

AnalogyIndex build_analogy_index(const std::vector<std::vector<double>>& features,
                                 std::span<const double> productivity) {
  if (features.empty() || features.size() != productivity.size())
    throw std::invalid_argument("build_analogy_index: empty or mismatched input");

  AnalogyIndex index;
  index.features = features;
  index.productivity.assign(productivity.begin(), productivity.end());
  index.mean_productivity = stats::mean(productivity);

  // Historical correlation via leave-one-out 1-NN over the training set.
  if (features.size() >= 3) {
    std::vector<double> predicted(features.size());
    for (std::size_t i = 0; i < features.size(); ++i)
      predicted[i] = index.productivity[nearest_row(features, features[i], i)];
    const double r = stats::pearson(predicted, productivity);
    index.historical_correlation = std::isnan(r) ? 0.0 : r;
  }
  return index;
}

Neighbor nearest_analogy(const AnalogyIndex& index, std::span<const double> query) {
  if (index.features.empty())
    throw std::invalid_argument("nearest_analogy: empty index");
  const std::size_t row = nearest_row(index.features, query, index.features.size());
  return {index.productivity[row], row};
}

}  // namespace ucpbench

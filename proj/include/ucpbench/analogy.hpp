#pragma once

// Nearest-analogy retrieval over environmental-factor vectors. Features
// share the 0..5 rating scale, so Euclidean distance is used without
// scaling and exactly one analogy is retrieved (ties toward the earlier
// training row).
//
// The index also carries h (mean training productivity) and r (historical
// correlation between leave-one-out 1-NN predictions and the actual
// productivities), the two quantities the regression-to-mean adjustment
// needs.

#include <cstddef>
#include <span>
#include <vector>

namespace ucpbench {

struct AnalogyIndex {
  std::vector<std::vector<double>> features;
  std::vector<double> productivity;
  double mean_productivity = 0.0;      // h
  double historical_correlation = 0.0; // r; 0 when undefined (zero variance)
};

AnalogyIndex build_analogy_index(const std::vector<std::vector<double>>& features,
                                 std::span<const double> productivity);

struct Neighbor {
  double productivity = 0.0;
  std::size_t row = 0;
};

Neighbor nearest_analogy(const AnalogyIndex& index, std::span<const double> query);

// Pulls the retrieved productivity toward the training mean in proportion to
// how weakly the analogy procedure correlates with the truth:
//   adjusted = neighbor + (mean - neighbor) * (1 - r).
inline double regression_to_mean(double neighbor_productivity,
                                 double mean_productivity, double correlation) {
  return neighbor_productivity +
         (mean_productivity - neighbor_productivity) * (1.0 - correlation);
}

}  // namespace ucpbench

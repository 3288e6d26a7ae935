#pragma once

// Lloyd k-means with deterministic farthest-point initialization, plus the
// cluster validity index used to pick k:
//
//   validity = [ (1/m) sum_i sum_{x in c_i} ||x - z_i|| ]
//              / min_{i != j} ||z_i - z_j||^2
//
// Note the asymmetry: unsquared distances in the numerator, squared center
// separation in the denominator. Implemented exactly in that form.
//
// Best k is searched over 2..max(2, floor(m/3)), minimizing validity, ties
// broken toward smaller k.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace ucpbench {

class DegenerateClusteringError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Clustering {
  int k = 0;
  std::vector<std::vector<double>> centers;
  std::vector<int> assignment;      // per-point cluster index
  double inertia = 0.0;             // within-cluster sum of squared distances
  double intra_distance_sum = 0.0;  // within-cluster sum of unsquared distances

  std::size_t point_count() const { return assignment.size(); }
};

// Lloyd iterations until the assignment reaches a fixed point, capped at 100.
// Empty clusters are re-seeded to the point currently farthest from its own
// center. Deterministic given the seed.
Clustering kmeans_fit(const std::vector<std::vector<double>>& points, int k,
                      std::uint64_t seed);

// Eq.-style validity of a converged clustering. Requires k >= 2; coincident
// centers make the denominator zero and raise DegenerateClusteringError.
double cluster_validity(const Clustering& c);

struct BestKResult {
  int k = 2;
  bool degenerate_range = false;  // fewer than 6 points: no real search ran
};

BestKResult select_best_k(const std::vector<std::vector<double>>& points,
                          std::uint64_t seed);

double euclidean_distance(std::span<const double> a, std::span<const double> b);

}  // namespace ucpbench

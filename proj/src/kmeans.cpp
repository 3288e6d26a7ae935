#include "ucpbench/kmeans.hpp"

#include <cmath>
#include <limits>

#include "ucpbench/rng.hpp"

namespace ucpbench {

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}

namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

// First center drawn from the seed, the rest chosen to maximize the minimum
// distance to already-picked centers (ties toward the smaller point index).
std::vector<std::vector<double>> farthest_point_init(
    const std::vector<std::vector<double>>& points, int k, Rng& rng) {
  std::vector<std::vector<double>> centers;
  centers.reserve(static_cast<std::size_t>(k));
  centers.push_back(points[rng.next_index(points.size())]);
  std::vector<double> min_sq(points.size(),
                             std::numeric_limits<double>::infinity());
  while (static_cast<int>(centers.size()) < k) {
    std::size_t best = 0;
    double best_d = -1.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      min_sq[i] = std::min(min_sq[i], squared_distance(points[i], centers.back()));
      if (min_sq[i] > best_d) {
        best_d = min_sq[i];
        best = i;
      }
    }
    centers.push_back(points[best]);
  }
  return centers;
}

int nearest_center(const std::vector<std::vector<double>>& centers,
                   std::span<const double> p) {
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < centers.size(); ++j) {
    const double d = squared_distance(p, centers[j]);
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(j);
    }
  }
  return best;
}

}  // namespace

Clustering kmeans_fit(const std::vector<std::vector<double>>& points, int k,
                      std::uint64_t seed) {
  const std::size_t m = points.size();
  if (m == 0) throw std::invalid_argument("kmeans_fit: no points");
  if (k < 1 || static_cast<std::size_t>(k) > m)
    throw std::invalid_argument("kmeans_fit: k out of range [1, point count]");
  const std::size_t dim = points[0].size();
  for (const auto& p : points)
    if (p.size() != dim)
      throw std::invalid_argument("kmeans_fit: inconsistent dimensions");

  Rng rng(seed);
  Clustering c;
  c.k = k;
  c.centers = farthest_point_init(points, k, rng);
  c.assignment.assign(m, -1);

  constexpr int kMaxIterations = 100;
  double previous_inertia = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    // Assignment pass.
    bool changed = false;
    std::vector<std::size_t> sizes(static_cast<std::size_t>(k), 0);
    for (std::size_t i = 0; i < m; ++i) {
      const int a = nearest_center(c.centers, points[i]);
      if (a != c.assignment[i]) changed = true;
      c.assignment[i] = a;
      ++sizes[static_cast<std::size_t>(a)];
    }

    // Re-seed empty clusters to the point farthest from its current center.
    for (int j = 0; j < k; ++j) {
      if (sizes[static_cast<std::size_t>(j)] != 0) continue;
      std::size_t worst = m;
      double worst_d = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        const double d = squared_distance(
            points[i], c.centers[static_cast<std::size_t>(c.assignment[i])]);
        if (d > worst_d) {
          worst_d = d;
          worst = i;
        }
      }
      if (worst == m) break;  // all points coincide with their centers
      --sizes[static_cast<std::size_t>(c.assignment[worst])];
      c.assignment[worst] = j;
      ++sizes[static_cast<std::size_t>(j)];
      c.centers[static_cast<std::size_t>(j)] = points[worst];
      changed = true;
    }

    // Update pass: centers become the means of their members.
    std::vector<std::vector<double>> sums(static_cast<std::size_t>(k),
                                          std::vector<double>(dim, 0.0));
    for (std::size_t i = 0; i < m; ++i) {
      auto& s = sums[static_cast<std::size_t>(c.assignment[i])];
      for (std::size_t d = 0; d < dim; ++d) s[d] += points[i][d];
    }
    for (int j = 0; j < k; ++j) {
      const auto n = sizes[static_cast<std::size_t>(j)];
      if (n == 0) continue;
      auto& z = c.centers[static_cast<std::size_t>(j)];
      for (std::size_t d = 0; d < dim; ++d)
        z[d] = sums[static_cast<std::size_t>(j)][d] / static_cast<double>(n);
    }

    double inertia = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      inertia += squared_distance(
          points[i], c.centers[static_cast<std::size_t>(c.assignment[i])]);
    if (inertia > previous_inertia + 1e-9 * (1.0 + previous_inertia))
      throw std::logic_error("kmeans_fit: inertia increased across an iteration");
    previous_inertia = inertia;

    if (!changed) break;
  }

  c.inertia = 0.0;
  c.intra_distance_sum = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& z = c.centers[static_cast<std::size_t>(c.assignment[i])];
    c.inertia += squared_distance(points[i], z);
    c.intra_distance_sum += euclidean_distance(points[i], z);
  }
  return c;
}

double cluster_validity(const Clustering& c) {
  if (c.k < 2)
    throw std::invalid_argument("cluster_validity: needs at least two clusters");
  double min_sep_sq = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < c.centers.size(); ++i)
    for (std::size_t j = i + 1; j < c.centers.size(); ++j)
      min_sep_sq = std::min(min_sep_sq, squared_distance(c.centers[i], c.centers[j]));
  if (min_sep_sq <= 0.0)
    throw DegenerateClusteringError("cluster_validity: coincident cluster centers");
  const double numerator =
      c.intra_distance_sum / static_cast<double>(c.point_count());
  return numerator / min_sep_sq;
}

BestKResult select_best_k(const std::vector<std::vector<double>>& points,
                          std::uint64_t seed) {
  const std::size_t m = points.size();
  if (m < 6) return {2, true};

  const int k_max = std::max(2, static_cast<int>(m / 3));
  BestKResult result;
  result.k = 2;
  double best_validity = std::numeric_limits<double>::infinity();
  bool any_valid = false;
  for (int k = 2; k <= k_max; ++k) {
    const auto c = kmeans_fit(points, k, derive_seed(seed, "kmeans-k", k));
    double v;
    try {
      v = cluster_validity(c);
    } catch (const DegenerateClusteringError&) {
      continue;  // coincident centers: k exceeds the data's structure
    }
    if (v < best_validity) {
      best_validity = v;
      result.k = k;
      any_valid = true;
    }
  }
  result.degenerate_range = !any_valid;
  if (!any_valid) result.k = 2;
  return result;
}

}  // namespace ucpbench

#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

#include "ucpbench/analogy.hpp"
#include "ucpbench/kmeans.hpp"
#include "ucpbench/rng.hpp"

using namespace ucpbench;

TEST_CASE("nearest analogy picks the closer training row") {
  const std::vector<std::vector<double>> features = {
      std::vector<double>(8, 0.0), std::vector<double>(8, 5.0)};
  const std::vector<double> productivity = {20.0, 30.0};
  const auto index = build_analogy_index(features, productivity);

  std::vector<double> query(8, 0.0);
  query[0] = 1.0;
  const auto n = nearest_analogy(index, query);
  CHECK(n.productivity == 20.0);
  CHECK(n.row == 0);
}

TEST_CASE("exact match returns that row; ties go to the earlier row") {
  const std::vector<std::vector<double>> features = {
      {0, 0, 0, 0, 0, 0, 0, 0}, {2, 0, 0, 0, 0, 0, 0, 0}, {4, 0, 0, 0, 0, 0, 0, 0}};
  const std::vector<double> productivity = {10.0, 20.0, 30.0};
  const auto index = build_analogy_index(features, productivity);

  CHECK(nearest_analogy(index, features[1]).productivity == 20.0);

  // Query at distance 1 from rows 0 and 1.
  const std::vector<double> between = {1, 0, 0, 0, 0, 0, 0, 0};
  CHECK(nearest_analogy(index, between).row == 0);
}

TEST_CASE("retrieved neighbor is at least as close as every other row") {
  Rng rng(64);
  std::vector<std::vector<double>> features;
  std::vector<double> productivity;
  for (int i = 0; i < 30; ++i) {
    std::vector<double> row(8);
    for (double& v : row) v = rng.next_int(0, 5);
    features.push_back(row);
    productivity.push_back(10.0 + 30.0 * rng.next_double());
  }
  const auto index = build_analogy_index(features, productivity);
  for (int probe = 0; probe < 100; ++probe) {
    std::vector<double> q(8);
    for (double& v : q) v = rng.next_int(0, 5);
    const auto n = nearest_analogy(index, q);
    const double d = euclidean_distance(features[n.row], q);
    for (const auto& f : features) CHECK(d <= euclidean_distance(f, q) + 1e-12);
  }
}

TEST_CASE("index carries the training mean and a correlation in [-1, 1]") {
  Rng rng(12);
  std::vector<std::vector<double>> features;
  std::vector<double> productivity;
  for (int i = 0; i < 25; ++i) {
    std::vector<double> row(8);
    for (double& v : row) v = rng.next_int(0, 5);
    features.push_back(row);
    productivity.push_back(15.0 + row[0] + 0.5 * rng.next_double());
  }
  const auto index = build_analogy_index(features, productivity);
  double mean = 0.0;
  for (double p : productivity) mean += p;
  mean /= static_cast<double>(productivity.size());
  CHECK(index.mean_productivity == doctest::Approx(mean));
  CHECK(index.historical_correlation >= -1.0);
  CHECK(index.historical_correlation <= 1.0);
}

TEST_CASE("duplicated rows make the historical correlation exactly 1") {
  std::vector<std::vector<double>> features;
  std::vector<double> productivity;
  for (int i = 0; i < 4; ++i) {
    std::vector<double> row(8, 0.0);
    row[0] = static_cast<double>(i);
    features.push_back(row);
    features.push_back(row);  // exact duplicate
    productivity.push_back(15.0 + 3.0 * i);
    productivity.push_back(15.0 + 3.0 * i);
  }
  const auto index = build_analogy_index(features, productivity);
  CHECK(index.historical_correlation == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("constant productivity gives correlation 0 by convention") {
  std::vector<std::vector<double>> features;
  for (int i = 0; i < 5; ++i) {
    std::vector<double> row(8, 0.0);
    row[0] = static_cast<double>(i);
    features.push_back(row);
  }
  const std::vector<double> productivity(5, 22.0);
  const auto index = build_analogy_index(features, productivity);
  CHECK(index.historical_correlation == 0.0);
}

TEST_CASE("regression to mean identities") {
  CHECK(regression_to_mean(30.0, 22.0, 0.75) == doctest::Approx(28.0).epsilon(1e-12));
  CHECK(regression_to_mean(30.0, 22.0, 1.0) == 30.0);
  CHECK(regression_to_mean(30.0, 22.0, 0.0) == 22.0);
}

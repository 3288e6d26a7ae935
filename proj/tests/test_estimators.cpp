#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>
#include <set>

#include "ucpbench/estimators.hpp"
#include "ucpbench/rng.hpp"
#include "test_util.hpp"

using namespace ucpbench;
using namespace ucpbench::testutil;

namespace {

EstimatorConfig config_with_seed(std::uint64_t seed) {
  EstimatorConfig cfg;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("catalog and factory") {
  CHECK(estimator_catalog().size() == 7);
  for (const auto& name : estimator_catalog()) {
    CHECK(is_known_estimator(name));
    CHECK(make_estimator(name, {})->name() == name);
  }
  CHECK_FALSE(is_known_estimator("m9"));
  CHECK_THROWS_AS(make_estimator("m9", {}), std::invalid_argument);
}

TEST_CASE("predict before fit is an error") {
  const auto est = make_estimator("m4", {});
  CHECK_THROWS_AS(est->predict_productivity(env_all(3)), std::logic_error);
}

TEST_CASE("karner and sw wrappers") {
  std::vector<std::pair<EnvironmentalFactors, double>> rows;
  for (int i = 0; i < 5; ++i) rows.emplace_back(env_all(3), 20.0 + i);
  const auto data = dataset_from(rows);

  auto karner = make_estimator("karner", {});
  karner->fit(data);
  CHECK(karner->estimate_effort(env_all(0), 100.0) == 2000.0);
  CHECK(karner->predict_productivity(env_all(5)) == 20.0);

  auto sw = make_estimator("sw", {});
  sw->fit(data);
  CHECK(sw->estimate_effort(env_all(3), 100.0) == 2000.0);
  CHECK(sw->estimate_effort(env_of({2, 2, 2, 3, 3, 3, 4, 4}), 100.0) == 3600.0);
}

TEST_CASE("nassif wrapper fits quartile thresholds and uses its native form") {
  // prod_sums: env all-0 -> 0, all-1 -> 4.5, all-2 -> 9, all-5 -> 22.5.
  std::vector<std::pair<EnvironmentalFactors, double>> rows;
  for (int i = 0; i < 2; ++i) rows.emplace_back(env_all(0), 20.0);
  for (int i = 0; i < 2; ++i) rows.emplace_back(env_all(1), 22.0);
  for (int i = 0; i < 2; ++i) rows.emplace_back(env_all(2), 24.0);
  for (int i = 0; i < 2; ++i) rows.emplace_back(env_all(5), 26.0);
  const auto data = dataset_from(rows);

  auto nassif = make_estimator("nassif", {});
  nassif->fit(data);

  // Worst quartile for a terrible environment, best for a great one.
  CHECK(nassif->predict_productivity(env_of({0, 0, 0, 0, 0, 0, 5, 5})) ==
        doctest::Approx(0.7));
  CHECK(nassif->predict_productivity(env_all(5)) == doctest::Approx(1.3));

  const double effort = nassif->estimate_effort(env_all(5), 100.0);
  CHECK(effort == doctest::Approx(8.16 / 1.3 * std::pow(100.0, 1.17)).epsilon(1e-12));
  // The Eq.-1 identity intentionally fails for the nonlinear model.
  CHECK(effort != doctest::Approx(nassif->predict_productivity(env_all(5)) * 100.0));
}

TEST_CASE("effort equals productivity times ucp for all models except nassif") {
  Rng rng(15);
  std::vector<std::pair<EnvironmentalFactors, double>> rows;
  for (int i = 0; i < 30; ++i) {
    std::array<int, 8> v{};
    for (auto& x : v) x = rng.next_int(0, 5);
    rows.emplace_back(env_of(v), 15.0 + 10.0 * rng.next_double());
  }
  const auto data = dataset_from(rows);

  for (const auto& name : estimator_catalog()) {
    if (name == "nassif") continue;
    auto est = make_estimator(name, config_with_seed(77));
    est->fit(data);
    for (int probe = 0; probe < 20; ++probe) {
      std::array<int, 8> v{};
      for (auto& x : v) x = rng.next_int(0, 5);
      const double ucp = 1.0 + 200.0 * rng.next_double();
      const auto env = env_of(v);
      CHECK(est->estimate_effort(env, ucp) ==
            doctest::Approx(est->predict_productivity(env) * ucp).epsilon(1e-12));
    }
  }
}

TEST_CASE("m1 predicts the group constant when productivity is constant per group") {
  std::vector<std::pair<EnvironmentalFactors, double>> rows;
  Rng rng(33);
  for (int i = 0; i < 10; ++i) {  // fair group
    std::array<int, 8> v{};
    v.fill(3);
    v[0] = rng.next_int(3, 5);
    rows.emplace_back(env_of(v), 21.0);
  }
  for (int i = 0; i < 10; ++i) {  // very_low group: five low factors
    std::array<int, 8> v{};
    v.fill(3);
    for (int j = 0; j < 5; ++j) v[static_cast<std::size_t>(j)] = rng.next_int(0, 2);
    rows.emplace_back(env_of(v), 35.0);
  }
  const auto data = dataset_from(rows);
  auto m1 = make_estimator("m1", config_with_seed(5));
  m1->fit(data);
  CHECK(m1->predict_productivity(env_all(3)) == doctest::Approx(21.0));
  CHECK(m1->predict_productivity(env_of({0, 0, 0, 0, 0, 3, 3, 3})) ==
        doctest::Approx(35.0));
}

TEST_CASE("m1 separates two productivity bands inside the fair group") {
  Rng rng(8);
  std::vector<std::pair<EnvironmentalFactors, double>> rows;
  auto band_env = [&](bool high) {
    std::array<int, 8> v{};
    v.fill(3);
    v[0] = high ? rng.next_int(4, 5) : rng.next_int(0, 1);
    return env_of(v);
  };
  for (int i = 0; i < 20; ++i)
    rows.emplace_back(band_env(false), 20.0 + 0.4 * (rng.next_double() - 0.5));
  for (int i = 0; i < 20; ++i)
    rows.emplace_back(band_env(true), 34.0 + 0.4 * (rng.next_double() - 0.5));
  const auto data = dataset_from(rows);

  auto m1 = make_estimator("m1", config_with_seed(6));
  m1->fit(data);

  int correct = 0;
  std::set<double> distinct;
  for (int i = 0; i < 12; ++i) {
    const bool high = i % 2 == 0;
    const double p = m1->predict_productivity(band_env(high));
    distinct.insert(p);
    const double target = high ? 34.0 : 20.0;
    if (std::fabs(p - target) < 1.0) ++correct;
  }
  CHECK(correct >= 11);  // 12 probes, >= 90 percent
  CHECK(distinct.size() <= 2);
}

TEST_CASE("m1 falls back to the S&W ratio for an empty group") {
  std::vector<std::pair<EnvironmentalFactors, double>> rows;
  Rng rng(3);
  for (int i = 0; i < 12; ++i) {
    std::array<int, 8> v{};
    v.fill(3);
    v[1] = rng.next_int(3, 5);
    rows.emplace_back(env_of(v), 19.0 + rng.next_double());
  }
  const auto data = dataset_from(rows);  // fair rows only
  auto m1 = make_estimator("m1", config_with_seed(4));
  m1->fit(data);

  const auto very_low_env = env_of({0, 0, 0, 0, 0, 0, 5, 5});
  CHECK(m1->predict_productivity(very_low_env) == doctest::Approx(36.0));
  bool flagged = false;
  for (const auto& w : m1->warnings())
    flagged = flagged || w.find("fall back") != std::string::npos;
  CHECK(flagged);
}

TEST_CASE("m1 is deterministic given seed") {
  Rng rng(44);
  std::vector<std::pair<EnvironmentalFactors, double>> rows;
  for (int i = 0; i < 30; ++i) {
    std::array<int, 8> v{};
    for (auto& x : v) x = rng.next_int(0, 5);
    rows.emplace_back(env_of(v), 14.0 + 20.0 * rng.next_double());
  }
  const auto data = dataset_from(rows);
  auto a = make_estimator("m1", config_with_seed(99));
  auto b = make_estimator("m1", config_with_seed(99));
  a->fit(data);
  b->fit(data);
  for (int probe = 0; probe < 30; ++probe) {
    std::array<int, 8> v{};
    for (auto& x : v) x = rng.next_int(0, 5);
    CHECK(a->predict_productivity(env_of(v)) == b->predict_productivity(env_of(v)));
  }
}

TEST_CASE("m2 recovers an exact two-cluster structure") {
  Rng rng(10);
  std::vector<std::pair<EnvironmentalFactors, double>> rows;
  auto side_env = [&](bool high) {
    std::array<int, 8> v{};
    for (auto& x : v) x = rng.next_int(0, 5);
    v[0] = high ? rng.next_int(3, 5) : rng.next_int(0, 2);
    return env_of(v);
  };
  for (int i = 0; i < 25; ++i) rows.emplace_back(side_env(false), 20.0);
  for (int i = 0; i < 25; ++i) rows.emplace_back(side_env(true), 36.0);
  const auto data = dataset_from(rows);

  auto m2 = make_estimator("m2", config_with_seed(21));
  m2->fit(data);
  for (int i = 0; i < 20; ++i) {
    const bool high = i % 2 == 0;
    const double p = m2->predict_productivity(side_env(high));
    CHECK(p == doctest::Approx(high ? 36.0 : 20.0));
    CHECK((p == doctest::Approx(20.0) || p == doctest::Approx(36.0)));
  }
}

TEST_CASE("m2 with constant productivity predicts the constant") {
  Rng rng(2);
  std::vector<std::pair<EnvironmentalFactors, double>> rows;
  for (int i = 0; i < 12; ++i) {
    std::array<int, 8> v{};
    for (auto& x : v) x = rng.next_int(0, 5);
    rows.emplace_back(env_of(v), 23.5);
  }
  auto m2 = make_estimator("m2", config_with_seed(1));
  m2->fit(dataset_from(rows));
  CHECK(m2->predict_productivity(env_all(2)) == doctest::Approx(23.5));
}

TEST_CASE("m3 recovers a noiseless linear relation") {
  const auto env1 = bell_column_0to5(19);
  Rng rng(23);
  std::vector<std::pair<EnvironmentalFactors, double>> rows;
  for (int i = 0; i < 50; ++i) {
    std::array<int, 8> v{};
    for (auto& x : v) x = rng.next_int(0, 5);
    v[0] = env1[static_cast<std::size_t>(i)];
    rows.emplace_back(env_of(v), 30.0 - 2.0 * v[0]);
  }
  auto m3 = make_estimator("m3", {});
  m3->fit(dataset_from(rows));
  for (int probe = 0; probe < 20; ++probe) {
    std::array<int, 8> v{};
    for (auto& x : v) x = rng.next_int(0, 5);
    const double expected = 30.0 - 2.0 * v[0];
    CHECK(std::fabs(m3->predict_productivity(env_of(v)) - expected) < 1e-6);
  }
}

TEST_CASE("m3 clamps implausible extrapolations") {
  // Steep noiseless fit: predictions past the plausible band get clamped.
  const auto env1 = bell_column_0to5(29);
  Rng rng(31);
  std::vector<std::pair<EnvironmentalFactors, double>> upper_rows;
  for (int i = 0; i < 50; ++i) {
    std::array<int, 8> v{};
    for (auto& x : v) x = rng.next_int(0, 5);
    v[0] = env1[static_cast<std::size_t>(i)];
    upper_rows.emplace_back(env_of(v), 5.0 + 25.0 * v[0]);
  }
  auto upper = make_estimator("m3", {});
  upper->fit(dataset_from(upper_rows));
  std::array<int, 8> hi{};
  hi.fill(2);
  hi[0] = 5;  // raw prediction 130
  CHECK(upper->predict_productivity(env_of(hi)) == doctest::Approx(100.0));

  const auto env1lo = bell_column_1to5(37);
  std::vector<std::pair<EnvironmentalFactors, double>> lower_rows;
  for (int i = 0; i < 50; ++i) {
    std::array<int, 8> v{};
    for (auto& x : v) x = rng.next_int(0, 5);
    v[0] = env1lo[static_cast<std::size_t>(i)];
    lower_rows.emplace_back(env_of(v), 20.0 * v[0] - 15.0);
  }
  auto lower = make_estimator("m3", {});
  lower->fit(dataset_from(lower_rows));
  std::array<int, 8> lo{};
  lo.fill(2);
  lo[0] = 0;  // raw prediction -15
  CHECK(lower->predict_productivity(env_of(lo)) == doctest::Approx(1.0));
}

TEST_CASE("m3 with constant productivity predicts the constant") {
  Rng rng(41);
  std::vector<std::pair<EnvironmentalFactors, double>> rows;
  for (int i = 0; i < 30; ++i) {
    std::array<int, 8> v{};
    for (auto& x : v) x = rng.next_int(0, 5);
    rows.emplace_back(env_of(v), 24.0);
  }
  auto m3 = make_estimator("m3", {});
  m3->fit(dataset_from(rows));
  CHECK(m3->predict_productivity(env_all(1)) == doctest::Approx(24.0));
  bool flagged = false;
  for (const auto& w : m3->warnings())
    flagged = flagged || w.find("intercept-only") != std::string::npos;
  CHECK(flagged);
}

TEST_CASE("m4 applies the regression-to-mean adjustment exactly") {
  // Two mirrored pairs: h = 22 and a leave-one-out correlation of exactly
  // 0.6 (per-pair swaps give r = 2uv/(u^2+v^2) with u = 4, v = 12).
  std::vector<std::pair<EnvironmentalFactors, double>> rows;
  rows.emplace_back(env_of({0, 0, 0, 0, 0, 0, 0, 0}), 26.0);  // A
  rows.emplace_back(env_of({1, 0, 0, 0, 0, 0, 0, 0}), 34.0);  // B, A's neighbor
  rows.emplace_back(env_of({5, 5, 5, 5, 5, 5, 5, 5}), 18.0);  // C
  rows.emplace_back(env_of({4, 5, 5, 5, 5, 5, 5, 5}), 10.0);  // D, C's neighbor
  const auto data = dataset_from(rows);

  auto m4 = make_estimator("m4", {});
  m4->fit(data);

  // Query nearest to B: prediction = 34 + (22 - 34) * (1 - 0.6) = 29.2.
  const auto query = env_of({2, 0, 0, 0, 0, 0, 0, 0});
  CHECK(m4->predict_productivity(query) == doctest::Approx(29.2).epsilon(1e-12));
  CHECK(m4->estimate_effort(query, 100.0) == doctest::Approx(2920.0).epsilon(1e-12));
}

TEST_CASE("m4 with duplicated training rows returns the exact neighbor") {
  // Duplicates make the leave-one-out correlation exactly 1, so the
  // adjustment vanishes.
  std::vector<std::pair<EnvironmentalFactors, double>> rows;
  for (int i = 0; i < 4; ++i) {
    std::array<int, 8> v{};
    v[0] = i;
    rows.emplace_back(env_of(v), 15.0 + 3.0 * i);
    rows.emplace_back(env_of(v), 15.0 + 3.0 * i);
  }
  auto m4 = make_estimator("m4", {});
  m4->fit(dataset_from(rows));
  std::array<int, 8> q{};
  q[0] = 2;
  CHECK(m4->predict_productivity(env_of(q)) == doctest::Approx(21.0).epsilon(1e-12));
}

TEST_CASE("m4 with constant productivity regresses fully to the mean") {
  std::vector<std::pair<EnvironmentalFactors, double>> rows;
  for (int i = 0; i < 5; ++i) {
    std::array<int, 8> v{};
    v[0] = i;
    rows.emplace_back(env_of(v), 22.0);
  }
  auto m4 = make_estimator("m4", {});
  m4->fit(dataset_from(rows));
  CHECK(m4->predict_productivity(env_all(5)) == doctest::Approx(22.0));
}

TEST_CASE("m1/m2 protocol plans are reusable and deterministic") {
  Rng rng(70);
  std::vector<std::pair<EnvironmentalFactors, double>> rows;
  for (int i = 0; i < 40; ++i) {
    std::array<int, 8> v{};
    for (auto& x : v) x = rng.next_int(0, 5);
    rows.emplace_back(env_of(v), 14.0 + 20.0 * rng.next_double());
  }
  const auto data = dataset_from(rows);

  for (const std::string name : {"m1", "m2"}) {
    auto est = make_estimator(name, config_with_seed(11));
    const auto plan = est->protocol_plan(data);
    CHECK_FALSE(plan.empty());
    const auto plan2 = make_estimator(name, config_with_seed(11))->protocol_plan(data);
    CHECK(plan.group_k == plan2.group_k);

    auto fitted = make_estimator(name, config_with_seed(11));
    fitted->apply_plan(plan);
    fitted->fit(data);
    CHECK(fitted->predict_productivity(env_all(3)) > 0.0);
  }
}

#include "ucpbench/estimators.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>

#include "ucpbench/analogy.hpp"
#include "ucpbench/kmeans.hpp"
#include "ucpbench/mathstats.hpp"
#include "ucpbench/rng.hpp"

namespace ucpbench {

void Estimator::require_fitted() const {
  if (!fitted_)
    throw std::logic_error(name_ + ": predict called before fit");
}

double Estimator::predict_productivity(const EnvironmentalFactors& env) const {
  require_fitted();
  return std::max(do_predict(env), kProductivityFloor);
}

double Estimator::estimate_effort(const EnvironmentalFactors& env, double ucp) const {
  if (!(ucp > 0.0))
    throw std::invalid_argument(name_ + ": ucp must be positive");
  return predict_productivity(env) * ucp;
}

namespace {

// ---- baselines ----------------------------------------------------------

class KarnerEstimator final : public Estimator {
 public:
  explicit KarnerEstimator(EstimatorConfig cfg) : Estimator("karner", std::move(cfg)) {}
  void fit(const Dataset&) override { mark_fitted(); }

 private:
  double do_predict(const EnvironmentalFactors&) const override { return 20.0; }
};

class SWEstimator final : public Estimator {
 public:
  explicit SWEstimator(EstimatorConfig cfg) : Estimator("sw", std::move(cfg)) {}
  void fit(const Dataset&) override { mark_fitted(); }

 private:
  double do_predict(const EnvironmentalFactors& env) const override {
    return sw_classify(env).pdr;
  }
};

class NassifEstimator final : public Estimator {
 public:
  explicit NassifEstimator(EstimatorConfig cfg)
      : Estimator("nassif", std::move(cfg)), params_(config_.nassif) {}

  void fit(const Dataset& train) override {
    if (!params_.thresholds_set) {
      if (train.empty())
        throw std::invalid_argument("nassif: cannot fit thresholds on empty data");
      std::vector<double> sums;
      sums.reserve(train.size());
      for (const auto& r : train.records()) sums.push_back(nassif_prod_sum(r.env));
      std::sort(sums.begin(), sums.end());
      params_.thresholds = {quantile(sums, 0.25), quantile(sums, 0.50),
                            quantile(sums, 0.75)};
      params_.thresholds_set = true;
    }
    params_.validate();
    mark_fitted();
  }

  // Native nonlinear form; the Eq.-1 identity intentionally does not hold.
  double estimate_effort(const EnvironmentalFactors& env, double ucp) const override {
    require_fitted();
    return nassif_estimate(env, ucp, params_);
  }

  const NassifParams& params() const { return params_; }

 private:
  double do_predict(const EnvironmentalFactors& env) const override {
    return nassif_team_productivity(params_, nassif_prod_sum(env));
  }

  // Linear-interpolation quantile on a sorted vector.
  static double quantile(const std::vector<double>& sorted, double p) {
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
  }

  NassifParams params_;
};

// ---- shared helpers for m1/m2 -------------------------------------------

struct LabeledClusters {
  std::vector<int> labels;                    // per training row
  std::vector<double> centroid_productivity;  // by label
  int k = 0;
};

// Cluster centroid productivities are the raw means of member rows, so that
// predictions come back in original units regardless of any feature scaling
// used for the clustering itself.
LabeledClusters label_by_clustering(const Clustering& c,
                                    const std::vector<double>& productivity) {
  LabeledClusters out;
  out.k = c.k;
  out.labels = c.assignment;
  std::vector<double> sum(static_cast<std::size_t>(c.k), 0.0);
  std::vector<int> count(static_cast<std::size_t>(c.k), 0);
  for (std::size_t i = 0; i < productivity.size(); ++i) {
    sum[static_cast<std::size_t>(c.assignment[i])] += productivity[i];
    ++count[static_cast<std::size_t>(c.assignment[i])];
  }
  const double overall = stats::mean(productivity);
  out.centroid_productivity.resize(static_cast<std::size_t>(c.k));
  for (int j = 0; j < c.k; ++j) {
    const auto ju = static_cast<std::size_t>(j);
    out.centroid_productivity[ju] =
        count[ju] > 0 ? sum[ju] / static_cast<double>(count[ju]) : overall;
  }
  return out;
}

// Per-dimension z-scoring; zero-variance dimensions stay centered at 0.
std::vector<std::vector<double>> standardize_columns(
    const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return {};
  const std::size_t d = rows[0].size();
  std::vector<std::vector<double>> out(rows.size(), std::vector<double>(d, 0.0));
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<double> col(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) col[i] = rows[i][j];
    const double m = stats::mean(col);
    const double s = rows.size() > 1 ? stats::stdev(col) : 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i)
      out[i][j] = s > 0.0 ? (rows[i][j] - m) / s : 0.0;
  }
  return out;
}

// ---- m1: S&W groups, 9-D class decomposition, per-group forest ----------

class M1Estimator final : public Estimator {
 public:
  explicit M1Estimator(EstimatorConfig cfg) : Estimator("m1", std::move(cfg)) {}

  KPlan protocol_plan(const Dataset& full) const override {
    KPlan plan;
    for (int level = 0; level < 3; ++level) {
      std::vector<std::size_t> rows = group_rows(full, level);
      if (rows.size() < 6) continue;
      const auto points = group_points(full, rows);
      plan.group_k[sw_level_name(static_cast<SWLevel>(level))] =
          select_best_k(points, derive_seed(config_.seed, "m1-bestk",
                                            static_cast<std::uint64_t>(level)))
              .k;
    }
    return plan;
  }

  void apply_plan(const KPlan& plan) override { plan_ = plan; }

  void fit(const Dataset& train) override {
    if (train.empty()) throw std::invalid_argument("m1: empty training set");
    for (int level = 0; level < 3; ++level) fit_group(train, level);
    mark_fitted();
  }

 private:
  struct Group {
    bool present = false;
    bool single_cluster = false;
    double fallback = 20.0;  // S&W pdr when absent, group mean when single
    std::vector<double> centroid_productivity;
    std::optional<ForestModel> forest;
  };

  static std::vector<std::size_t> group_rows(const Dataset& data, int level) {
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < data.size(); ++i)
      if (static_cast<int>(sw_classify(data[i].env).level) == level)
        rows.push_back(i);
    return rows;
  }

  // 9-D observations: the eight factors plus productivity, z-scored so that
  // the productivity scale does not drown out the factor dimensions.
  static std::vector<std::vector<double>> group_points(
      const Dataset& data, const std::vector<std::size_t>& rows) {
    std::vector<std::vector<double>> raw;
    raw.reserve(rows.size());
    for (auto i : rows) {
      const auto env = data[i].env.as_doubles();
      std::vector<double> p(env.begin(), env.end());
      p.push_back(data[i].productivity);
      raw.push_back(std::move(p));
    }
    return standardize_columns(raw);
  }

  void fit_group(const Dataset& train, int level) {
    auto& group = groups_[static_cast<std::size_t>(level)];
    group = Group{};
    const auto level_name = sw_level_name(static_cast<SWLevel>(level));
    const std::vector<std::size_t> rows = group_rows(train, level);

    if (rows.empty()) {
      switch (static_cast<SWLevel>(level)) {
        case SWLevel::Fair: group.fallback = 20.0; break;
        case SWLevel::Low: group.fallback = 28.0; break;
        case SWLevel::VeryLow: group.fallback = 36.0; break;
      }
      warn(std::string("m1: group '") + level_name +
           "' empty; queries fall back to the S&W ratio");
      return;
    }
    group.present = true;

    std::vector<double> productivity;
    std::vector<std::vector<double>> env_rows;
    productivity.reserve(rows.size());
    env_rows.reserve(rows.size());
    for (auto i : rows) {
      productivity.push_back(train[i].productivity);
      const auto d = train[i].env.as_doubles();
      env_rows.emplace_back(d.begin(), d.end());
    }

    if (rows.size() < 6) {
      group.single_cluster = true;
      group.fallback = stats::mean(productivity);
      warn(std::string("m1: group '") + level_name +
           "' too small to cluster; using its mean productivity");
      return;
    }

    int k = 0;
    const auto planned = plan_.group_k.find(level_name);
    if (planned != plan_.group_k.end()) {
      k = planned->second;
    } else {
      k = select_best_k(group_points(train, rows),
                        derive_seed(config_.seed, "m1-bestk",
                                    static_cast<std::uint64_t>(level)))
              .k;
    }
    k = std::min<int>(k, static_cast<int>(rows.size()));
    if (k < 2) {
      group.single_cluster = true;
      group.fallback = stats::mean(productivity);
      return;
    }

    const auto clustering =
        kmeans_fit(group_points(train, rows), k,
                   derive_seed(config_.seed, "m1-kmeans",
                               static_cast<std::uint64_t>(level)));
    const auto labeled = label_by_clustering(clustering, productivity);
    group.centroid_productivity = labeled.centroid_productivity;
    group.forest = rf_fit(env_rows, labeled.labels,
                          derive_seed(config_.seed, "m1-rf",
                                      static_cast<std::uint64_t>(level)));
  }

  double do_predict(const EnvironmentalFactors& env) const override {
    const auto level = sw_classify(env).level;
    const auto& group = groups_[static_cast<std::size_t>(level)];
    if (!group.present || group.single_cluster) return group.fallback;
    const auto features = env.as_doubles();
    const int label = group.forest->predict(features);
    return group.centroid_productivity[static_cast<std::size_t>(label)];
  }

  std::array<Group, 3> groups_;
  KPlan plan_;
};

// ---- m2: productivity-only decomposition, single forest -----------------

class M2Estimator final : public Estimator {
 public:
  explicit M2Estimator(EstimatorConfig cfg) : Estimator("m2", std::move(cfg)) {}

  KPlan protocol_plan(const Dataset& full) const override {
    KPlan plan;
    if (full.size() < 6) return plan;
    plan.group_k["all"] =
        select_best_k(productivity_points(full), derive_seed(config_.seed, "m2-bestk"))
            .k;
    return plan;
  }

  void apply_plan(const KPlan& plan) override { plan_ = plan; }

  void fit(const Dataset& train) override {
    if (train.empty()) throw std::invalid_argument("m2: empty training set");
    const auto productivity = train.productivities();

    if (train.size() < 6) {
      single_cluster_ = true;
      fallback_ = stats::mean(productivity);
      warn("m2: too few rows to cluster; using the mean productivity");
      mark_fitted();
      return;
    }

    int k = 0;
    const auto planned = plan_.group_k.find("all");
    if (planned != plan_.group_k.end()) {
      k = planned->second;
    } else {
      k = select_best_k(productivity_points(train),
                        derive_seed(config_.seed, "m2-bestk"))
              .k;
    }
    k = std::min<int>(k, static_cast<int>(train.size()));
    if (k < 2) {
      single_cluster_ = true;
      fallback_ = stats::mean(productivity);
      mark_fitted();
      return;
    }

    const auto clustering = kmeans_fit(productivity_points(train), k,
                                       derive_seed(config_.seed, "m2-kmeans"));
    const auto labeled = label_by_clustering(clustering, productivity);
    centroid_productivity_ = labeled.centroid_productivity;
    forest_ = rf_fit(train.env_matrix(), labeled.labels,
                     derive_seed(config_.seed, "m2-rf"));
    single_cluster_ = false;
    mark_fitted();
  }

  const std::vector<double>& centroids() const { return centroid_productivity_; }

 private:
  static std::vector<std::vector<double>> productivity_points(const Dataset& d) {
    std::vector<std::vector<double>> points;
    points.reserve(d.size());
    for (const auto& r : d.records()) points.push_back({r.productivity});
    return points;
  }

  double do_predict(const EnvironmentalFactors& env) const override {
    if (single_cluster_) return fallback_;
    const auto features = env.as_doubles();
    const int label = forest_->predict(features);
    return centroid_productivity_[static_cast<std::size_t>(label)];
  }

  bool single_cluster_ = false;
  double fallback_ = 0.0;
  std::vector<double> centroid_productivity_;
  std::optional<ForestModel> forest_;
  KPlan plan_;
};

// ---- m3: stepwise regression ---------------------------------------------

class M3Estimator final : public Estimator {
 public:
  explicit M3Estimator(EstimatorConfig cfg) : Estimator("m3", std::move(cfg)) {}

  void fit(const Dataset& train) override {
    StepwiseOptions options;
    options.p_enter = config_.p_enter;
    options.p_remove = config_.p_remove;
    const auto y = train.productivities();
    model_ = stepwise_fit(train.env_matrix(), y, options);
    for (const auto& w : model_.warnings) warn("m3: " + w);
    mark_fitted();
  }

  const RegressionModel& model() const { return model_; }
  std::uint64_t clamp_events() const { return clamp_events_.load(); }

  static constexpr double kMinPdr = 1.0;
  static constexpr double kMaxPdr = 100.0;

 private:
  double do_predict(const EnvironmentalFactors& env) const override {
    const auto features = env.as_doubles();
    const double raw = regress_predict(model_, features);
    const double clamped = std::clamp(raw, kMinPdr, kMaxPdr);
    if (clamped != raw) ++clamp_events_;
    return clamped;
  }

  RegressionModel model_;
  mutable std::atomic<std::uint64_t> clamp_events_{0};
};

// ---- m4: nearest analogy with regression to the mean ---------------------

class M4Estimator final : public Estimator {
 public:
  explicit M4Estimator(EstimatorConfig cfg) : Estimator("m4", std::move(cfg)) {}

  void fit(const Dataset& train) override {
    if (train.size() < 3)
      throw std::invalid_argument("m4: needs at least 3 training rows");
    index_ = build_analogy_index(train.env_matrix(), train.productivities());
    mark_fitted();
  }

  const AnalogyIndex& index() const { return index_; }

 private:
  double do_predict(const EnvironmentalFactors& env) const override {
    const auto features = env.as_doubles();
    const auto neighbor = nearest_analogy(index_, features);
    return regression_to_mean(neighbor.productivity, index_.mean_productivity,
                              index_.historical_correlation);
  }

  AnalogyIndex index_;
};

}  // namespace

const std::vector<std::string>& estimator_catalog() {
  static const std::vector<std::string> catalog = {"karner", "sw", "nassif",
                                                   "m1",     "m2", "m3", "m4"};
  return catalog;
}

bool is_known_estimator(const std::string& name) {
  const auto& catalog = estimator_catalog();
  return std::find(catalog.begin(), catalog.end(), name) != catalog.end();
}

std::unique_ptr<Estimator> make_estimator(const std::string& name,
                                          const EstimatorConfig& config) {
  if (name == "karner") return std::make_unique<KarnerEstimator>(config);
  if (name == "sw") return std::make_unique<SWEstimator>(config);
  if (name == "nassif") return std::make_unique<NassifEstimator>(config);
  if (name == "m1") return std::make_unique<M1Estimator>(config);
  if (name == "m2") return std::make_unique<M2Estimator>(config);
  if (name == "m3") return std::make_unique<M3Estimator>(config);
  if (name == "m4") return std::make_unique<M4Estimator>(config);
  throw std::invalid_argument("unknown model '" + name + "'");
}

}  // namespace ucpbench

#pragma once

// Uniform fit/predict contract over the seven productivity models:
//
//   karner  fixed 20 person-hours/UCP
//   sw      Schneider-Winters three-level classification
//   nassif  nonlinear alpha/Productivity * UCP^beta
//   m1      S&W grouping + per-group k-means class decomposition + forest
//   m2      k-means decomposition of the productivity variable + forest
//   m3      stepwise regression of productivity on the factors
//   m4      nearest analogy with regression-to-mean adjustment
//
// Every model estimates effort as predicted productivity times UCP, except
// nassif whose native form is used (there predict_productivity returns the
// team-productivity level, size/effort sense, not a PDR).
//
// m1/m2 pick their cluster count on the whole dataset before cross
// validation (protocol_plan/apply_plan); the strict_fold_k switch makes each
// fold re-select its own k instead.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ucpbench/baselines.hpp"
#include "ucpbench/dataset.hpp"
#include "ucpbench/random_forest.hpp"
#include "ucpbench/stepwise.hpp"

namespace ucpbench {

struct EstimatorConfig {
  std::uint64_t seed = 42;
  double p_enter = 0.05;
  double p_remove = 0.10;
  NassifParams nassif;
  bool strict_fold_k = false;
};

// Cluster counts fixed ahead of cross validation; keys are "fair", "low",
// "very_low" for m1 and "all" for m2.
struct KPlan {
  std::map<std::string, int> group_k;
  bool empty() const { return group_k.empty(); }
};

class Estimator {
 public:
  virtual ~Estimator() = default;

  const std::string& name() const { return name_; }
  std::uint64_t seed() const { return config_.seed; }
  void set_seed(std::uint64_t seed) { config_.seed = seed; }
  const EstimatorConfig& config() const { return config_; }

  virtual KPlan protocol_plan(const Dataset&) const { return {}; }
  virtual void apply_plan(const KPlan&) {}

  virtual void fit(const Dataset& train) = 0;
  bool fitted() const { return fitted_; }

  // Person-hours per UCP (team productivity for nassif); never below the
  // positivity floor.
  double predict_productivity(const EnvironmentalFactors& env) const;

  virtual double estimate_effort(const EnvironmentalFactors& env, double ucp) const;

  const std::vector<std::string>& warnings() const { return warnings_; }

  static constexpr double kProductivityFloor = 0.01;

 protected:
  Estimator(std::string name, EstimatorConfig config)
      : name_(std::move(name)), config_(std::move(config)) {}

  virtual double do_predict(const EnvironmentalFactors& env) const = 0;
  void require_fitted() const;
  void mark_fitted() { fitted_ = true; }
  void warn(std::string message) { warnings_.push_back(std::move(message)); }

  std::string name_;
  EstimatorConfig config_;
  bool fitted_ = false;
  std::vector<std::string> warnings_;
};

const std::vector<std::string>& estimator_catalog();
bool is_known_estimator(const std::string& name);
std::unique_ptr<Estimator> make_estimator(const std::string& name,
                                          const EstimatorConfig& config);

}  // namespace ucpbench

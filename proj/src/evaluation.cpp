#include "ucpbench/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "ucpbench/mathstats.hpp"
#include "ucpbench/rng.hpp"

namespace ucpbench {

std::vector<FoldResult> loocv(const Dataset& data, const std::string& model,
                              const EstimatorConfig& config,
                              std::vector<std::string>* warnings) {
  if (data.size() < 4)
    throw std::invalid_argument("loocv: needs at least 4 records");

  const std::uint64_t model_seed = derive_seed(config.seed, model);

  KPlan plan;
  if (!config.strict_fold_k) {
    auto planner = make_estimator(model, config);
    planner->set_seed(model_seed);
    plan = planner->protocol_plan(data);
  }

  std::set<std::string> seen_warnings;
  auto add_warning = [&](const std::string& w) {
    if (warnings && seen_warnings.insert(w).second) warnings->push_back(w);
  };

  std::vector<FoldResult> folds;
  folds.reserve(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto& record = data[i];
    FoldResult fold;
    fold.id = record.id;
    fold.actual = record.effort;
    try {
      auto estimator = make_estimator(model, config);
      estimator->set_seed(derive_seed(model_seed, "fold", i));
      estimator->apply_plan(plan);
      estimator->fit(data.without(i));
      fold.estimate = estimator->estimate_effort(record.env, record.ucp);
      fold.abs_error = std::fabs(fold.actual - fold.estimate);
      for (const auto& w : estimator->warnings()) add_warning(w);
    } catch (const std::exception& e) {
      fold.failed = true;
      fold.fail_reason = e.what();
      add_warning("fold '" + record.id + "' failed: " + e.what());
    }
    folds.push_back(std::move(fold));
  }
  return folds;
}

namespace {

template <typename PerFold>
double fold_mean(std::span<const FoldResult> folds, PerFold&& value) {
  double acc = 0.0;
  std::size_t n = 0;
  for (const auto& f : folds) {
    if (f.failed) continue;
    acc += value(f);
    ++n;
  }
  if (n == 0) throw MetricError("no successful folds to aggregate");
  return acc / static_cast<double>(n);
}

void check_positive_pair(const FoldResult& f) {
  if (!(f.actual > 0.0) || !(f.estimate > 0.0))
    throw MetricError("fold '" + f.id +
                      "': non-positive effort or estimate in relative error");
}

}  // namespace

double mae(std::span<const FoldResult> folds) {
  return fold_mean(folds, [](const FoldResult& f) { return f.abs_error; });
}

double mbre(std::span<const FoldResult> folds) {
  return fold_mean(folds, [](const FoldResult& f) {
    check_positive_pair(f);
    return f.abs_error / std::min(f.actual, f.estimate);
  });
}

double mibre(std::span<const FoldResult> folds) {
  return fold_mean(folds, [](const FoldResult& f) {
    check_positive_pair(f);
    return f.abs_error / std::max(f.actual, f.estimate);
  });
}

double exact_random_guess_mae(std::span<const double> efforts) {
  const std::size_t n = efforts.size();
  if (n < 2) throw std::invalid_argument("exact_random_guess_mae: needs >= 2");
  double outer = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    double inner = 0.0;
    for (std::size_t r = 0; r < n; ++r)
      if (r != t) inner += std::fabs(efforts[t] - efforts[r]);
    outer += inner / static_cast<double>(n - 1);
  }
  return outer / static_cast<double>(n);
}

BaselineStats random_guess_baseline(std::span<const double> efforts, int runs,
                                    std::uint64_t seed) {
  const std::size_t n = efforts.size();
  if (n < 3) throw std::invalid_argument("random_guess_baseline: needs >= 3 efforts");
  if (runs < 1) throw std::invalid_argument("random_guess_baseline: runs >= 1");

  Rng rng(seed);
  std::vector<double> run_maes;
  run_maes.reserve(static_cast<std::size_t>(runs));
  std::vector<double> pooled;
  pooled.reserve(static_cast<std::size_t>(runs) * n);

  for (int run = 0; run < runs; ++run) {
    double acc = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      // Uniform draw over the other n-1 indices.
      std::size_t r = rng.next_index(n - 1);
      if (r >= t) ++r;
      const double ae = std::fabs(efforts[t] - efforts[r]);
      acc += ae;
      pooled.push_back(ae);
    }
    run_maes.push_back(acc / static_cast<double>(n));
  }

  BaselineStats b;
  b.mae_p0 = stats::mean(run_maes);
  b.sp0 = stats::stdev(pooled);
  b.run_mae_stdev = runs > 1 ? stats::stdev(run_maes) : 0.0;
  b.exact_mae_p0 = exact_random_guess_mae(efforts);
  b.runs = runs;
  b.seed = seed;
  return b;
}

double standardized_accuracy(double mae_value, double mae_p0) {
  if (!(mae_p0 > 0.0))
    throw std::invalid_argument("standardized_accuracy: undefined baseline (mae_p0 = 0)");
  return 1.0 - mae_value / mae_p0;
}

double effect_size(double mae_value, double mae_p0, double sp0) {
  if (!(sp0 > 0.0))
    throw std::invalid_argument("effect_size: undefined (sp0 = 0)");
  return (mae_p0 - mae_value) / sp0;
}

const char* effect_size_category(double delta) {
  const double a = std::fabs(delta);
  if (a < 0.2) return "negligible";
  if (a < 0.5) return "small";
  if (a < 0.8) return "medium";
  return "large";
}

EvaluationReport evaluate_model(const Dataset& data, const std::string& model,
                                const EstimatorConfig& config, int mc_runs) {
  EvaluationReport report;
  report.model = model;
  report.dataset_name = data.name();
  report.seed = config.seed;
  report.folds = loocv(data, model, config, &report.warnings);

  report.mae = mae(report.folds);
  report.mbre = mbre(report.folds);
  report.mibre = mibre(report.folds);
  report.baseline = random_guess_baseline(data.efforts(), mc_runs,
                                          derive_seed(config.seed, "baseline"));
  report.sa = standardized_accuracy(report.mae, report.baseline.mae_p0);
  report.delta = effect_size(report.mae, report.baseline.mae_p0, report.baseline.sp0);
  return report;
}

}  // namespace ucpbench

#pragma once

// Leave-one-out cross validation and the accuracy measures: MAE, the
// balanced and inverted-balanced relative error means (MBRE/MIBRE), plus
// standardized accuracy (SA) and effect size against a random-guessing
// baseline. The baseline is evaluated both by Monte Carlo (the reported
// value) and by exact enumeration (kept alongside for audit).

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ucpbench/dataset.hpp"
#include "ucpbench/estimators.hpp"

namespace ucpbench {

class MetricError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FoldResult {
  std::string id;
  double actual = 0.0;
  double estimate = 0.0;
  double abs_error = 0.0;
  bool failed = false;
  std::string fail_reason;
};

struct BaselineStats {
  double mae_p0 = 0.0;        // mean of the per-run random-guessing MAEs
  double sp0 = 0.0;           // sample stdev of the pooled per-guess errors
  double run_mae_stdev = 0.0; // sample stdev of the per-run MAEs
  double exact_mae_p0 = 0.0;  // closed-form expectation, for audit
  int runs = 0;
  std::uint64_t seed = 0;
};

struct EvaluationReport {
  std::string model;
  std::string dataset_name;
  std::uint64_t seed = 0;
  std::vector<FoldResult> folds;
  double mae = 0.0;
  double mbre = 0.0;   // stored as a fraction; display multiplies by 100
  double mibre = 0.0;
  double sa = 0.0;
  double delta = 0.0;
  BaselineStats baseline;
  std::vector<std::string> warnings;
};

// One fold per record, in dataset order; each fold fits a fresh estimator
// (fold-derived seed) on the dataset minus that record. Failed folds are
// marked, reported through `warnings`, and excluded from aggregates. For
// m1/m2 the cluster counts are fixed on the full dataset first unless
// config.strict_fold_k is set.
std::vector<FoldResult> loocv(const Dataset& data, const std::string& model,
                              const EstimatorConfig& config,
                              std::vector<std::string>* warnings = nullptr);

double mae(std::span<const FoldResult> folds);
double mbre(std::span<const FoldResult> folds);
double mibre(std::span<const FoldResult> folds);

// Each run guesses every target's effort as a uniformly drawn other effort
// and records its MAE. Also computes the exact expectation
//   E[MAE_p0] = (1/n) sum_t (1/(n-1)) sum_{r != t} |e_t - e_r|.
BaselineStats random_guess_baseline(std::span<const double> efforts, int runs,
                                    std::uint64_t seed);
double exact_random_guess_mae(std::span<const double> efforts);

// SA = 1 - mae/mae_p0; negative means worse than guessing.
double standardized_accuracy(double mae_value, double mae_p0);

// Delta = (mae_p0 - mae) / sp0, positive when the model beats guessing
// (the published tables use this sign convention).
double effect_size(double mae_value, double mae_p0, double sp0);
const char* effect_size_category(double delta);

EvaluationReport evaluate_model(const Dataset& data, const std::string& model,
                                const EstimatorConfig& config, int mc_runs = 1000);

}  // namespace ucpbench

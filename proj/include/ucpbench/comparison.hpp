#pragma once

// Statistical comparison of model error distributions.
//
// wilcoxon_ranksum: two-sided Mann-Whitney/rank-sum with midrank ties.
// Small samples (n1 + n2 <= 12) take an exact enumeration path; larger ones
// use the normal approximation with tie-corrected variance and continuity
// correction.
//
// scott_knott: ranks models into non-overlapping groups by recursively
// splitting the mean-ordered list where the between-group sum of squares is
// maximal, accepting a split when
//   lambda = pi / (2 (pi - 2)) * B0 / sigma0^2
// exceeds the chi-squared critical value at alpha with g / (pi - 2) degrees
// of freedom. Errors are Box-Cox transformed first when the
// D'Agostino-Pearson test rejects normality of the pooled sample.
//
// win_tie_loss: round-robin tally across the accuracy measures. A pair is
// compared only when the Wilcoxon test on the absolute-error samples is
// significant; otherwise both models collect a tie per measure.

#include <map>
#include <span>
#include <string>
#include <vector>

#include "ucpbench/evaluation.hpp"

namespace ucpbench {

struct WilcoxonResult {
  double statistic = 0.0;  // rank sum of the first sample
  double p_value = 1.0;
  bool exact = false;      // enumeration path used
  bool degenerate = false; // all values identical across both samples
};

WilcoxonResult wilcoxon_ranksum(std::span<const double> a, std::span<const double> b);

struct SKSplit {
  int begin = 0;  // half-open index range into the mean-ordered model list
  int end = 0;
  int cut = 0;
  double lambda_stat = 0.0;
  double p_value = 1.0;
  bool accepted = false;
};

struct SKGrouping {
  std::vector<std::vector<std::string>> groups;  // rank 1 (smallest mean) first
  std::map<std::string, double> transformed_means;
  bool transformed = false;  // Box-Cox applied to the pooled errors
  double lambda = 1.0;
  double shift = 0.0;
  std::vector<SKSplit> splits;
  std::vector<std::string> warnings;
};

SKGrouping scott_knott(
    const std::vector<std::pair<std::string, std::vector<double>>>& model_errors,
    double alpha = 0.05);

struct WTLTally {
  int win = 0;
  int tie = 0;
  int loss = 0;
};

struct ModelFolds {
  std::string name;
  std::vector<FoldResult> folds;
};

// Tallies over the three measures {mae, mbre, mibre}. With per_measure_gate
// the significance gate runs on each measure's own per-fold distribution
// instead of the shared absolute-error distribution.
std::map<std::string, WTLTally> win_tie_loss(const std::vector<ModelFolds>& models,
                                             double alpha = 0.05,
                                             bool per_measure_gate = false);

struct ComparisonResult {
  std::vector<std::string> model_names;  // input order
  // p_matrix[i][j] holds the Wilcoxon p-value for models i vs j, j < i.
  std::vector<std::vector<double>> p_matrix;
  SKGrouping sk;
  std::map<std::string, WTLTally> wtl;
};

// Reports must cover the same folds (matching ids, none failed).
ComparisonResult compare_models(const std::vector<EvaluationReport>& reports,
                                double alpha = 0.05);

}  // namespace ucpbench

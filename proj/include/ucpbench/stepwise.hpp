#pragma once

// Bidirectional stepwise linear regression of productivity on factor
// columns. Starting from an empty model, each round adds the candidate
// whose coefficient t-test p-value is smallest and below p_enter, then
// drops any included factor whose p-value exceeds p_remove, until stable.
//
// Before selection, each factor column is screened with the
// D'Agostino-Pearson test (when n >= 20) and Box-Cox transformed where
// normality is rejected; fitted transforms are stored in the model and
// re-applied at prediction time.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace ucpbench {

struct FactorTransform {
  double shift = 0.0;   // applied before the power transform
  double lambda = 1.0;
};

struct RegressionModel {
  double intercept = 0.0;
  std::map<int, double> coefficients;            // factor index -> beta
  std::map<int, double> coefficient_p_values;    // in the final model
  std::map<int, FactorTransform> transforms;     // only transformed factors
  std::vector<std::string> warnings;

  bool intercept_only() const { return coefficients.empty(); }
};

struct StepwiseOptions {
  double p_enter = 0.05;
  double p_remove = 0.10;
  bool normality_gate = true;
};

RegressionModel stepwise_fit(const std::vector<std::vector<double>>& rows,
                             std::span<const double> y,
                             const StepwiseOptions& options = {});

double regress_predict(const RegressionModel& model,
                       std::span<const double> factors);

}  // namespace ucpbench

#pragma once

// D'Agostino-Pearson K^2 omnibus normality test. Combines a transformed
// skewness z-score (D'Agostino 1970) with a transformed kurtosis z-score
// (Anscombe-Glynn 1983); K^2 = z_s^2 + z_k^2 is chi-squared with 2 df under
// normality. Requires n >= 20 (the kurtosis transform is unreliable below).

#include <span>

namespace ucpbench {

struct NormalityTest {
  double statistic = 0.0;  // K^2
  double p_value = 1.0;
  double z_skewness = 0.0;
  double z_kurtosis = 0.0;

  bool rejects(double alpha = 0.05) const { return p_value < alpha; }
};

NormalityTest dagostino_pearson(std::span<const double> values);

}  // namespace ucpbench

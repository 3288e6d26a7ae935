#include "ucpbench/normality.hpp"

#include <cmath>
#include <stdexcept>

#include "ucpbench/mathstats.hpp"

namespace ucpbench {

namespace {

// D'Agostino (1970) transformed skewness z-score.
double skewness_z(double g1, double n) {
  const double y = g1 * std::sqrt((n + 1.0) * (n + 3.0) / (6.0 * (n - 2.0)));
  const double beta2 = 3.0 * (n * n + 27.0 * n - 70.0) * (n + 1.0) * (n + 3.0) /
                       ((n - 2.0) * (n + 5.0) * (n + 7.0) * (n + 9.0));
  const double w2 = -1.0 + std::sqrt(2.0 * (beta2 - 1.0));
  const double delta = 1.0 / std::sqrt(std::log(std::sqrt(w2)));
  const double alpha = std::sqrt(2.0 / (w2 - 1.0));
  const double ya = y / alpha;
  return delta * std::log(ya + std::sqrt(ya * ya + 1.0));
}

// Anscombe-Glynn (1983) transformed kurtosis z-score; b2 is non-excess.
double kurtosis_z(double b2, double n) {
  const double eb2 = 3.0 * (n - 1.0) / (n + 1.0);
  const double vb2 = 24.0 * n * (n - 2.0) * (n - 3.0) /
                     ((n + 1.0) * (n + 1.0) * (n + 3.0) * (n + 5.0));
  const double x = (b2 - eb2) / std::sqrt(vb2);
  const double sqrt_beta1 = 6.0 * (n * n - 5.0 * n + 2.0) / ((n + 7.0) * (n + 9.0)) *
                            std::sqrt(6.0 * (n + 3.0) * (n + 5.0) /
                                      (n * (n - 2.0) * (n - 3.0)));
  const double a = 6.0 + 8.0 / sqrt_beta1 *
                             (2.0 / sqrt_beta1 +
                              std::sqrt(1.0 + 4.0 / (sqrt_beta1 * sqrt_beta1)));
  const double term = (1.0 - 2.0 / a) / (1.0 + x * std::sqrt(2.0 / (a - 4.0)));
  return ((1.0 - 2.0 / (9.0 * a)) - std::cbrt(term)) / std::sqrt(2.0 / (9.0 * a));
}

}  // namespace

NormalityTest dagostino_pearson(std::span<const double> values) {
  const double n = static_cast<double>(values.size());
  if (values.size() < 20)
    throw std::invalid_argument(
        "dagostino_pearson: requires at least 20 observations");

  NormalityTest t;
  if (stats::is_constant(values)) {
    // No shape information; report the degenerate sample as non-normal.
    t.statistic = 0.0;
    t.p_value = 0.0;
    return t;
  }

  t.z_skewness = skewness_z(stats::skewness(values), n);
  t.z_kurtosis = kurtosis_z(stats::kurtosis(values), n);
  t.statistic = t.z_skewness * t.z_skewness + t.z_kurtosis * t.z_kurtosis;
  t.p_value = stats::chi2_sf(t.statistic, 2.0);
  return t;
}

}  // namespace ucpbench

#include "ucpbench/boxcox.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ucpbench/mathstats.hpp"

namespace ucpbench {

double boxcox_apply(double value, double lambda) {
  if (lambda == 0.0) return std::log(value);
  return (std::pow(value, lambda) - 1.0) / lambda;
}

namespace {

// Profile log-likelihood of the Box-Cox model at a given lambda:
//   -(n/2) ln(sigma_hat^2) + (lambda - 1) sum(ln v)
// with sigma_hat^2 the ML (n-denominator) variance of the transformed data.
double log_likelihood(std::span<const double> values, double lambda,
                      double sum_log) {
  const std::size_t n = values.size();
  double m = 0.0;
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) {
    t[i] = boxcox_apply(values[i], lambda);
    m += t[i];
  }
  m /= static_cast<double>(n);
  double ss = 0.0;
  for (double x : t) ss += (x - m) * (x - m);
  const double sigma2 = ss / static_cast<double>(n);
  if (sigma2 <= 0.0) return -std::numeric_limits<double>::infinity();
  return -0.5 * static_cast<double>(n) * std::log(sigma2) + (lambda - 1.0) * sum_log;
}

}  // namespace

BoxCoxResult boxcox_fit(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("boxcox_fit: empty input");
  double sum_log = 0.0;
  for (double v : values) {
    if (v <= 0.0)
      throw std::invalid_argument("boxcox_fit: values must be strictly positive");
    sum_log += std::log(v);
  }

  BoxCoxResult result;
  if (stats::is_constant(values)) {
    result.lambda = 1.0;
  } else {
    double best_ll = -std::numeric_limits<double>::infinity();
    double best_lambda = 1.0;
    for (int i = -300; i <= 300; ++i) {
      const double lambda = static_cast<double>(i) / 100.0;
      const double ll = log_likelihood(values, lambda, sum_log);
      if (ll > best_ll) {
        best_ll = ll;
        best_lambda = lambda;
      }
    }
    result.lambda = best_lambda;
  }

  result.transformed.reserve(values.size());
  for (double v : values) result.transformed.push_back(boxcox_apply(v, result.lambda));
  return result;
}

}  // namespace ucpbench

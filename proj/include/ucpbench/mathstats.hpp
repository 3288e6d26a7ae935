#pragma once

// Descriptive statistics and the distribution functions needed by the
// statistical tests in this project. Self-contained on purpose: the handful
// of special functions (incomplete gamma/beta) use the standard series /
// continued-fraction evaluations and are unit-tested against reference
// values.

#include <span>
#include <vector>

namespace ucpbench::stats {

double sum(std::span<const double> v);
double mean(std::span<const double> v);

// Sample variance / standard deviation (n-1 denominator).
double variance(std::span<const double> v);
double stdev(std::span<const double> v);

double min_value(std::span<const double> v);
double max_value(std::span<const double> v);
double median(std::span<const double> v);

// Moment-based shape statistics using population central moments:
// skewness = m3 / m2^1.5, kurtosis = m4 / m2^2 (non-excess; the normal
// distribution scores 3). Constant data yields m2 = 0; both are reported
// as 0 in that degenerate case.
double skewness(std::span<const double> v);
double kurtosis(std::span<const double> v);
bool is_constant(std::span<const double> v);

// Pearson correlation; returns NaN when either side has zero variance.
double pearson(std::span<const double> a, std::span<const double> b);

// ---- distribution functions -------------------------------------------

double normal_cdf(double z);
double normal_sf(double z);

// Regularized incomplete gamma P(a, x) and Q(a, x) = 1 - P(a, x).
double reg_lower_gamma(double a, double x);
double reg_upper_gamma(double a, double x);

// Regularized incomplete beta I_x(a, b).
double reg_inc_beta(double a, double b, double x);

// Chi-squared survival function and quantile (supports fractional df).
double chi2_sf(double x, double df);
double chi2_quantile(double p, double df);

// Two-sided p-value for a Student-t statistic with df degrees of freedom.
double student_t_two_sided_p(double t, double df);

}  // namespace ucpbench::stats

#include "ucpbench/mathstats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ucpbench::stats {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_nonempty(std::span<const double> v, const char* what) {
  if (v.empty()) throw std::invalid_argument(std::string(what) + ": empty input");
}

// Central moments m2, m3, m4 about the mean (population denominators).
struct CentralMoments {
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
};

CentralMoments central_moments(std::span<const double> v) {
  const double mu = mean(v);
  CentralMoments m;
  for (double x : v) {
    const double d = x - mu;
    const double d2 = d * d;
    m.m2 += d2;
    m.m3 += d2 * d;
    m.m4 += d2 * d2;
  }
  const double n = static_cast<double>(v.size());
  m.m2 /= n;
  m.m3 /= n;
  m.m4 /= n;
  return m;
}

}  // namespace

double sum(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

double mean(std::span<const double> v) {
  require_nonempty(v, "mean");
  return sum(v) / static_cast<double>(v.size());
}

double variance(std::span<const double> v) {
  require_nonempty(v, "variance");
  if (v.size() < 2) return 0.0;
  const double mu = mean(v);
  double acc = 0.0;
  for (double x : v) acc += (x - mu) * (x - mu);
  return acc / static_cast<double>(v.size() - 1);
}

double stdev(std::span<const double> v) { return std::sqrt(variance(v)); }

double min_value(std::span<const double> v) {
  require_nonempty(v, "min");
  return *std::min_element(v.begin(), v.end());
}

double max_value(std::span<const double> v) {
  require_nonempty(v, "max");
  return *std::max_element(v.begin(), v.end());
}

double median(std::span<const double> v) {
  require_nonempty(v, "median");
  std::vector<double> s(v.begin(), v.end());
  std::sort(s.begin(), s.end());
  const std::size_t n = s.size();
  if (n % 2 == 1) return s[n / 2];
  return 0.5 * (s[n / 2 - 1] + s[n / 2]);
}

bool is_constant(std::span<const double> v) {
  require_nonempty(v, "is_constant");
  for (double x : v)
    if (x != v.front()) return false;
  return true;
}

double skewness(std::span<const double> v) {
  const auto m = central_moments(v);
  if (m.m2 <= 0.0) return 0.0;
  return m.m3 / std::pow(m.m2, 1.5);
}

double kurtosis(std::span<const double> v) {
  const auto m = central_moments(v);
  if (m.m2 <= 0.0) return 0.0;
  return m.m4 / (m.m2 * m.m2);
}

double pearson(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2)
    throw std::invalid_argument("pearson: size mismatch or too few points");
  const double ma = mean(a);
  const double mb = mean(b);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa <= 0.0 || sbb <= 0.0) return kNaN;
  return sab / std::sqrt(saa * sbb);
}

// ---- distribution functions -------------------------------------------

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }
double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

namespace {

// Series expansion of P(a, x), valid for x < a + 1.
double lower_gamma_series(double a, double x) {
  const double lg = std::lgamma(a);
  double ap = a;
  double term = 1.0 / a;
  double series = term;
  for (int n = 0; n < 500; ++n) {
    ap += 1.0;
    term *= x / ap;
    series += term;
    if (std::fabs(term) < std::fabs(series) * 1e-16) break;
  }
  return series * std::exp(-x + a * std::log(x) - lg);
}

// Continued fraction for Q(a, x), valid for x >= a + 1 (Lentz's method).
double upper_gamma_cf(double a, double x) {
  const double lg = std::lgamma(a);
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - lg) * h;
}

}  // namespace

double reg_lower_gamma(double a, double x) {
  if (a <= 0.0 || x < 0.0) throw std::invalid_argument("reg_lower_gamma: domain");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return lower_gamma_series(a, x);
  return 1.0 - upper_gamma_cf(a, x);
}

double reg_upper_gamma(double a, double x) {
  if (a <= 0.0 || x < 0.0) throw std::invalid_argument("reg_upper_gamma: domain");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - lower_gamma_series(a, x);
  return upper_gamma_cf(a, x);
}

namespace {

// Continued fraction for the incomplete beta (Lentz's method).
double inc_beta_cf(double a, double b, double x) {
  const double tiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 500; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return h;
}

}  // namespace

double reg_inc_beta(double a, double b, double x) {
  if (a <= 0.0 || b <= 0.0 || x < 0.0 || x > 1.0)
    throw std::invalid_argument("reg_inc_beta: domain");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double front = std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                                a * std::log(x) + b * std::log(1.0 - x));
  if (x < (a + 1.0) / (a + b + 2.0)) return front * inc_beta_cf(a, b, x) / a;
  return 1.0 - front * inc_beta_cf(b, a, 1.0 - x) / b;
}

double chi2_sf(double x, double df) {
  if (df <= 0.0) throw std::invalid_argument("chi2_sf: df must be positive");
  if (x <= 0.0) return 1.0;
  return reg_upper_gamma(df / 2.0, x / 2.0);
}

double chi2_quantile(double p, double df) {
  if (df <= 0.0 || p < 0.0 || p >= 1.0)
    throw std::invalid_argument("chi2_quantile: domain");
  if (p == 0.0) return 0.0;
  // Bisection on the CDF; bracket grows until it contains the quantile.
  double lo = 0.0;
  double hi = df + 10.0;
  while (1.0 - chi2_sf(hi, df) < p) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (1.0 - chi2_sf(mid, df) < p)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-12 * (1.0 + hi)) break;
  }
  return 0.5 * (lo + hi);
}

double student_t_two_sided_p(double t, double df) {
  if (df <= 0.0) throw std::invalid_argument("student_t_two_sided_p: df");
  if (std::isinf(t)) return 0.0;
  const double x = df / (df + t * t);
  // Two-sided p = I_x(df/2, 1/2).
  return reg_inc_beta(df / 2.0, 0.5, x);
}

}  // namespace ucpbench::stats

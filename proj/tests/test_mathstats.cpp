#include <doctest.h>

#include <cmath>
#include <vector>

#include "ucpbench/mathstats.hpp"
#include "ucpbench/rng.hpp"

using namespace ucpbench;

TEST_CASE("descriptive statistics on known samples") {
  const std::vector<double> v = {14.0, 24.0, 34.0};
  CHECK(stats::mean(v) == doctest::Approx(24.0));
  CHECK(stats::median(v) == doctest::Approx(24.0));
  CHECK(stats::skewness(v) == doctest::Approx(0.0));
  CHECK(stats::stdev(v) == doctest::Approx(10.0));

  const std::vector<double> even = {1.0, 2.0, 3.0, 4.0};
  CHECK(stats::median(even) == doctest::Approx(2.5));
  CHECK(stats::min_value(even) == 1.0);
  CHECK(stats::max_value(even) == 4.0);
}

TEST_CASE("constant data: shape statistics degenerate to zero") {
  const std::vector<double> v(10, 20.0);
  CHECK(stats::is_constant(v));
  CHECK(stats::skewness(v) == 0.0);
  CHECK(stats::kurtosis(v) == 0.0);
  CHECK(stats::stdev(v) == 0.0);
}

TEST_CASE("non-excess kurtosis is near 3 for large normal samples") {
  Rng rng(99);
  std::vector<double> v(20000);
  for (double& x : v) x = rng.next_normal();
  CHECK(stats::kurtosis(v) == doctest::Approx(3.0).epsilon(0.05));
  CHECK(std::fabs(stats::skewness(v)) < 0.05);
}

TEST_CASE("pearson correlation") {
  const std::vector<double> x = {1, 2, 3, 4, 5};
  const std::vector<double> y = {2, 4, 6, 8, 10};
  CHECK(stats::pearson(x, y) == doctest::Approx(1.0));
  const std::vector<double> yn = {10, 8, 6, 4, 2};
  CHECK(stats::pearson(x, yn) == doctest::Approx(-1.0));
  const std::vector<double> c(5, 3.0);
  CHECK(std::isnan(stats::pearson(x, c)));
}

TEST_CASE("normal distribution functions") {
  CHECK(stats::normal_cdf(0.0) == doctest::Approx(0.5));
  CHECK(stats::normal_cdf(1.959963984540054) == doctest::Approx(0.975));
  CHECK(stats::normal_sf(1.959963984540054) == doctest::Approx(0.025));
}

// Reference values below were frozen from an independent implementation.
TEST_CASE("incomplete gamma and beta match reference values") {
  CHECK(stats::reg_lower_gamma(2.5, 1.3) ==
        doctest::Approx(0.23863473215498604).epsilon(1e-10));
  CHECK(stats::reg_upper_gamma(4.5, 6.7) ==
        doctest::Approx(0.14532611574989807).epsilon(1e-10));
  CHECK(stats::reg_inc_beta(2.5, 3.5, 0.4) ==
        doctest::Approx(0.4869041915261176).epsilon(1e-10));
}

TEST_CASE("incomplete beta symmetry property") {
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const double a = 0.5 + 5.0 * rng.next_double();
    const double b = 0.5 + 5.0 * rng.next_double();
    const double x = rng.next_double();
    CHECK(stats::reg_inc_beta(a, b, x) ==
          doctest::Approx(1.0 - stats::reg_inc_beta(b, a, 1.0 - x)).epsilon(1e-9));
  }
}

TEST_CASE("chi-squared sf and quantile match reference values") {
  CHECK(stats::chi2_sf(5.99, 2.0) ==
        doctest::Approx(0.05003662708658629).epsilon(1e-10));
  CHECK(stats::chi2_sf(3.3, 1.5) ==
        doctest::Approx(0.12494991908602472).epsilon(1e-10));
  // Fractional degrees of freedom, as used by the Scott-Knott criterion.
  CHECK(stats::chi2_quantile(0.95, 1.7519383938841089) ==
        doctest::Approx(5.501357838893093).epsilon(1e-8));
  CHECK(stats::chi2_quantile(0.95, 2.627907590826163) ==
        doctest::Approx(7.1589779780236364).epsilon(1e-8));
  CHECK(stats::chi2_quantile(0.95, 6.131784378594381) ==
        doctest::Approx(12.788383595088264).epsilon(1e-8));
}

TEST_CASE("chi-squared quantile inverts the CDF") {
  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    const double df = 0.5 + 10.0 * rng.next_double();
    const double p = 0.01 + 0.98 * rng.next_double();
    const double q = stats::chi2_quantile(p, df);
    CHECK(1.0 - stats::chi2_sf(q, df) == doctest::Approx(p).epsilon(1e-8));
  }
}

TEST_CASE("student-t two-sided p-values match reference values") {
  CHECK(stats::student_t_two_sided_p(2.0, 10.0) ==
        doctest::Approx(0.07338803477074039).epsilon(1e-10));
  CHECK(stats::student_t_two_sided_p(1.0, 5.0) ==
        doctest::Approx(0.36321746764912255).epsilon(1e-10));
  CHECK(stats::student_t_two_sided_p(3.5, 47.0) ==
        doctest::Approx(0.0010298582494953597).epsilon(1e-8));
  CHECK(stats::student_t_two_sided_p(0.5, 30.0) ==
        doctest::Approx(0.6207230048851273).epsilon(1e-10));
  CHECK(stats::student_t_two_sided_p(-2.0, 10.0) ==
        doctest::Approx(0.07338803477074039).epsilon(1e-10));
}

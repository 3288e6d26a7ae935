#include "ucpbench/stepwise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ucpbench/boxcox.hpp"
#include "ucpbench/mathstats.hpp"
#include "ucpbench/normality.hpp"

namespace ucpbench {

namespace {

struct OlsFit {
  bool ok = false;
  std::vector<double> beta;      // [intercept, selected factors...]
  std::vector<double> p_values;  // aligned with beta
  double sse = 0.0;
};

// Invert a symmetric positive (semi)definite matrix by Gauss-Jordan with
// partial pivoting. Returns false when effectively singular.
bool invert(std::vector<std::vector<double>>& a) {
  const std::size_t n = a.size();
  std::vector<std::vector<double>> inv(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::fabs(a[i][i]));
  if (scale == 0.0) return false;

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
    if (std::fabs(a[pivot][col]) < 1e-12 * scale) return false;
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    const double d = a[col][col];
    for (std::size_t c = 0; c < n; ++c) {
      a[col][c] /= d;
      inv[col][c] /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a[r][col];
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < n; ++c) {
        a[r][c] -= f * a[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  a = std::move(inv);
  return true;
}

// OLS of y on [1, columns(selected)]; p-values from coefficient t-tests.
// A zero residual variance (exact fit) gives p = 0 for nonzero coefficients
// and p = 1 for vanishing ones.
OlsFit fit_ols(const std::vector<std::vector<double>>& columns,
               const std::vector<int>& selected, std::span<const double> y) {
  const std::size_t n = y.size();
  const std::size_t p = selected.size() + 1;
  OlsFit fit;
  if (n <= p) return fit;

  auto col_value = [&](std::size_t j, std::size_t i) -> double {
    if (j == 0) return 1.0;
    return columns[static_cast<std::size_t>(selected[j - 1])][i];
  };

  std::vector<std::vector<double>> xtx(p, std::vector<double>(p, 0.0));
  std::vector<double> xty(p, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < p; ++a) {
      const double va = col_value(a, i);
      xty[a] += va * y[i];
      for (std::size_t b = a; b < p; ++b) xtx[a][b] += va * col_value(b, i);
    }
  }
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t b = 0; b < a; ++b) xtx[a][b] = xtx[b][a];

  auto inv = xtx;
  if (!invert(inv)) return fit;

  fit.beta.assign(p, 0.0);
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t b = 0; b < p; ++b) fit.beta[a] += inv[a][b] * xty[b];

  fit.sse = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double pred = 0.0;
    for (std::size_t a = 0; a < p; ++a) pred += fit.beta[a] * col_value(a, i);
    const double r = y[i] - pred;
    fit.sse += r * r;
  }

  const double df = static_cast<double>(n - p);
  const double sigma2 = std::max(fit.sse, 0.0) / df;
  fit.p_values.assign(p, 1.0);
  for (std::size_t a = 0; a < p; ++a) {
    const double se = std::sqrt(std::max(sigma2 * inv[a][a], 0.0));
    if (se < 1e-12) {
      fit.p_values[a] = std::fabs(fit.beta[a]) < 1e-8 ? 1.0 : 0.0;
    } else {
      fit.p_values[a] = stats::student_t_two_sided_p(fit.beta[a] / se, df);
    }
  }
  fit.ok = true;
  return fit;
}

}  // namespace

RegressionModel stepwise_fit(const std::vector<std::vector<double>>& rows,
                             std::span<const double> y,
                             const StepwiseOptions& options) {
  const std::size_t n = rows.size();
  if (n < 10) throw std::invalid_argument("stepwise_fit: needs at least 10 rows");
  if (y.size() != n) throw std::invalid_argument("stepwise_fit: row/target mismatch");
  const std::size_t d = rows[0].size();
  for (const auto& r : rows)
    if (r.size() != d) throw std::invalid_argument("stepwise_fit: ragged rows");
  for (double v : y)
    if (v <= 0.0) throw std::invalid_argument("stepwise_fit: targets must be positive");

  RegressionModel model;

  // Column views, transformed where the normality gate fires.
  std::vector<std::vector<double>> columns(d, std::vector<double>(n));
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < n; ++i) columns[j][i] = rows[i][j];

  std::vector<int> candidates;
  for (std::size_t j = 0; j < d; ++j) {
    if (stats::is_constant(columns[j])) {
      model.warnings.push_back("factor " + std::to_string(j + 1) +
                               " has zero variance; skipped");
      continue;
    }
    candidates.push_back(static_cast<int>(j));
  }

  if (options.normality_gate && n >= 20) {
    for (int j : candidates) {
      const auto& col = columns[static_cast<std::size_t>(j)];
      if (!dagostino_pearson(col).rejects()) continue;
      const double lo = stats::min_value(col);
      FactorTransform t;
      t.shift = lo <= 0.0 ? 1.0 - lo : 0.0;
      std::vector<double> shifted(col);
      for (double& v : shifted) v += t.shift;
      const auto bc = boxcox_fit(shifted);
      t.lambda = bc.lambda;
      columns[static_cast<std::size_t>(j)] = bc.transformed;
      model.transforms[j] = t;
    }
  }

  std::vector<int> active;
  auto in_active = [&](int j) {
    return std::find(active.begin(), active.end(), j) != active.end();
  };

  for (int round = 0; round < 200; ++round) {
    bool changed = false;

    // Forward: add the most significant candidate, if significant enough.
    int best_j = -1;
    double best_p = std::numeric_limits<double>::infinity();
    for (int j : candidates) {
      if (in_active(j)) continue;
      auto trial = active;
      trial.push_back(j);
      const auto fit = fit_ols(columns, trial, y);
      if (!fit.ok) continue;
      const double pj = fit.p_values.back();
      if (pj < best_p) {
        best_p = pj;
        best_j = j;
      }
    }
    if (best_j >= 0 && best_p < options.p_enter) {
      active.push_back(best_j);
      changed = true;
    }

    // Backward: drop the least significant included factor, if insignificant.
    if (!active.empty()) {
      const auto fit = fit_ols(columns, active, y);
      if (fit.ok) {
        int worst_pos = -1;
        double worst_p = -1.0;
        for (std::size_t a = 1; a < fit.p_values.size(); ++a) {
          if (fit.p_values[a] > worst_p) {
            worst_p = fit.p_values[a];
            worst_pos = static_cast<int>(a - 1);
          }
        }
        if (worst_pos >= 0 && worst_p > options.p_remove) {
          active.erase(active.begin() + worst_pos);
          changed = true;
        }
      }
    }

    if (!changed) break;
  }

  if (active.empty()) {
    model.intercept = stats::mean(y);
    model.warnings.push_back("no significant factor; intercept-only model");
    // Transforms on unselected factors are irrelevant for prediction.
    model.transforms.clear();
    return model;
  }

  std::sort(active.begin(), active.end());
  const auto fit = fit_ols(columns, active, y);
  if (!fit.ok) throw std::runtime_error("stepwise_fit: final fit is singular");
  model.intercept = fit.beta[0];
  for (std::size_t a = 0; a < active.size(); ++a) {
    model.coefficients[active[a]] = fit.beta[a + 1];
    model.coefficient_p_values[active[a]] = fit.p_values[a + 1];
  }
  // Keep only transforms of factors that made it into the model.
  for (auto it = model.transforms.begin(); it != model.transforms.end();) {
    if (!model.coefficients.count(it->first))
      it = model.transforms.erase(it);
    else
      ++it;
  }
  return model;
}

double regress_predict(const RegressionModel& model,
                       std::span<const double> factors) {
  double result = model.intercept;
  for (const auto& [j, beta] : model.coefficients) {
    double v = factors[static_cast<std::size_t>(j)];
    const auto t = model.transforms.find(j);
    if (t != model.transforms.end()) {
      const double shifted = std::max(v + t->second.shift, 1e-9);
      v = boxcox_apply(shifted, t->second.lambda);
    }
    result += beta * v;
  }
  return result;
}

}  // namespace ucpbench

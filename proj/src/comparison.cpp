#include "ucpbench/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ucpbench/boxcox.hpp"
#include "ucpbench/mathstats.hpp"
#include "ucpbench/normality.hpp"

namespace ucpbench {

namespace {

// Midranks of the pooled sample, returned in pooled order.
std::vector<double> midranks(std::span<const double> pooled) {
  const std::size_t n = pooled.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return pooled[i] < pooled[j]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) ++j;
    const double shared = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
    i = j + 1;
  }
  return ranks;
}

// Counts the C(n, k) k-subsets whose rank sum deviates from the mean at
// least as much as the observed one.
void enumerate_subsets(const std::vector<double>& ranks, std::size_t next,
                       std::size_t remaining, double sum, double mu,
                       double observed_dev, long& extreme, long& total) {
  if (remaining == 0) {
    ++total;
    if (std::fabs(sum - mu) >= observed_dev - 1e-12) ++extreme;
    return;
  }
  if (ranks.size() - next < remaining) return;
  enumerate_subsets(ranks, next + 1, remaining - 1, sum + ranks[next], mu,
                    observed_dev, extreme, total);
  enumerate_subsets(ranks, next + 1, remaining, sum, mu, observed_dev, extreme,
                    total);
}

}  // namespace

WilcoxonResult wilcoxon_ranksum(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 3 || b.size() < 3)
    throw std::invalid_argument("wilcoxon_ranksum: each sample needs >= 3 values");

  const std::size_t n1 = a.size();
  const std::size_t n2 = b.size();
  const std::size_t n = n1 + n2;

  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());

  WilcoxonResult result;
  result.degenerate =
      std::all_of(pooled.begin(), pooled.end(),
                  [&](double v) { return v == pooled.front(); });

  const auto ranks = midranks(pooled);
  double w = 0.0;
  for (std::size_t i = 0; i < n1; ++i) w += ranks[i];
  result.statistic = w;

  const double mu = static_cast<double>(n1) * static_cast<double>(n + 1) / 2.0;

  if (result.degenerate) {
    result.p_value = 1.0;
    return result;
  }

  if (n <= 12) {
    result.exact = true;
    long extreme = 0, total = 0;
    enumerate_subsets(ranks, 0, n1, 0.0, mu, std::fabs(w - mu), extreme, total);
    result.p_value = static_cast<double>(extreme) / static_cast<double>(total);
    return result;
  }

  // Normal approximation with tie correction and continuity correction.
  std::vector<double> sorted(pooled);
  std::sort(sorted.begin(), sorted.end());
  double tie_term = 0.0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
    const double t = static_cast<double>(j - i + 1);
    tie_term += t * t * t - t;
    i = j + 1;
  }
  const double nn = static_cast<double>(n);
  const double variance = static_cast<double>(n1) * static_cast<double>(n2) / 12.0 *
                          ((nn + 1.0) - tie_term / (nn * (nn - 1.0)));
  if (variance <= 0.0) {
    result.degenerate = true;
    result.p_value = 1.0;
    return result;
  }
  const double z = (std::fabs(w - mu) - 0.5) / std::sqrt(variance);
  result.p_value = std::min(1.0, 2.0 * stats::normal_sf(std::max(z, 0.0)));
  return result;
}

namespace {

struct SKEntry {
  std::string name;
  std::vector<double> errors;  // transformed
  double mean = 0.0;
};

// Between-group sum of squares over the model means for a cut of the
// ordered sublist [lo, hi) into [lo, cut) and [cut, hi).
double between_ss(const std::vector<SKEntry>& entries, int lo, int hi, int cut) {
  double total = 0.0, left = 0.0, right = 0.0;
  for (int i = lo; i < hi; ++i) {
    total += entries[static_cast<std::size_t>(i)].mean;
    (i < cut ? left : right) += entries[static_cast<std::size_t>(i)].mean;
  }
  const double g = hi - lo;
  const double k1 = cut - lo;
  const double k2 = hi - cut;
  const double mg = total / g;
  const double m1 = left / k1;
  const double m2 = right / k2;
  return k1 * (m1 - mg) * (m1 - mg) + k2 * (m2 - mg) * (m2 - mg);
}

void split_recursive(std::vector<SKEntry>& entries, int lo, int hi, double alpha,
                     std::vector<int>& group_of, int& next_group,
                     std::vector<SKSplit>& splits) {
  const int g = hi - lo;
  if (g < 2) {
    for (int i = lo; i < hi; ++i) group_of[static_cast<std::size_t>(i)] = next_group;
    ++next_group;
    return;
  }

  int best_cut = -1;
  double best_b0 = -1.0;
  for (int cut = lo + 1; cut < hi; ++cut) {
    const double b0 = between_ss(entries, lo, hi, cut);
    if (b0 > best_b0) {
      best_b0 = b0;
      best_cut = cut;
    }
  }

  // Variance estimate of a model mean within the sublist: ML-style combination
  // of the spread of the means and the pooled within-model variance.
  double grand = 0.0;
  for (int i = lo; i < hi; ++i) grand += entries[static_cast<std::size_t>(i)].mean;
  grand /= static_cast<double>(g);
  double means_ss = 0.0;
  for (int i = lo; i < hi; ++i) {
    const double d = entries[static_cast<std::size_t>(i)].mean - grand;
    means_ss += d * d;
  }
  double within_ss = 0.0;
  double within_df = 0.0;
  double inv_n = 0.0;
  for (int i = lo; i < hi; ++i) {
    const auto& e = entries[static_cast<std::size_t>(i)];
    const double m = stats::mean(e.errors);
    for (double v : e.errors) within_ss += (v - m) * (v - m);
    within_df += static_cast<double>(e.errors.size() - 1);
    inv_n += 1.0 / static_cast<double>(e.errors.size());
  }
  const double s2_mean =
      within_df > 0.0 ? (within_ss / within_df) * (inv_n / static_cast<double>(g))
                      : 0.0;
  const double sigma0_sq =
      (means_ss + within_df * s2_mean) / (static_cast<double>(g) + within_df);

  constexpr double kPi = M_PI;
  const double df = static_cast<double>(g) / (kPi - 2.0);

  SKSplit record;
  record.begin = lo;
  record.end = hi;
  record.cut = best_cut;

  bool accept = false;
  if (best_b0 > 1e-300 && sigma0_sq > 0.0) {
    const double lambda = kPi / (2.0 * (kPi - 2.0)) * best_b0 / sigma0_sq;
    record.lambda_stat = lambda;
    record.p_value = stats::chi2_sf(lambda, df);
    accept = lambda > stats::chi2_quantile(1.0 - alpha, df);
  }
  record.accepted = accept;
  splits.push_back(record);

  if (!accept) {
    for (int i = lo; i < hi; ++i) group_of[static_cast<std::size_t>(i)] = next_group;
    ++next_group;
    return;
  }
  split_recursive(entries, lo, best_cut, alpha, group_of, next_group, splits);
  split_recursive(entries, best_cut, hi, alpha, group_of, next_group, splits);
}

}  // namespace

SKGrouping scott_knott(
    const std::vector<std::pair<std::string, std::vector<double>>>& model_errors,
    double alpha) {
  SKGrouping result;

  std::vector<SKEntry> entries;
  for (const auto& [name, errors] : model_errors) {
    if (errors.size() < 3) {
      result.warnings.push_back("model '" + name +
                                "' excluded: fewer than 3 errors");
      continue;
    }
    entries.push_back({name, errors, 0.0});
  }
  if (entries.empty())
    throw std::invalid_argument("scott_knott: no usable models");

  // Normality gate on the pooled errors; one transform for all models.
  std::vector<double> pooled;
  for (const auto& e : entries)
    pooled.insert(pooled.end(), e.errors.begin(), e.errors.end());
  if (pooled.size() >= 20 && dagostino_pearson(pooled).rejects()) {
    const double lo = stats::min_value(pooled);
    result.shift = lo <= 0.0 ? 1.0 - lo : 0.0;
    std::vector<double> shifted(pooled);
    for (double& v : shifted) v += result.shift;
    result.lambda = boxcox_fit(shifted).lambda;
    result.transformed = true;
    for (auto& e : entries)
      for (double& v : e.errors) v = boxcox_apply(v + result.shift, result.lambda);
  }

  for (auto& e : entries) e.mean = stats::mean(e.errors);
  std::stable_sort(entries.begin(), entries.end(),
                   [](const SKEntry& a, const SKEntry& b) { return a.mean < b.mean; });
  for (const auto& e : entries) result.transformed_means[e.name] = e.mean;

  std::vector<int> group_of(entries.size(), 0);
  int next_group = 0;
  split_recursive(entries, 0, static_cast<int>(entries.size()), alpha, group_of,
                  next_group, result.splits);

  result.groups.assign(static_cast<std::size_t>(next_group), {});
  for (std::size_t i = 0; i < entries.size(); ++i)
    result.groups[static_cast<std::size_t>(group_of[i])].push_back(entries[i].name);
  return result;
}

namespace {

double fold_bre(const FoldResult& f) {
  return f.abs_error / std::min(f.actual, f.estimate);
}
double fold_ibre(const FoldResult& f) {
  return f.abs_error / std::max(f.actual, f.estimate);
}

std::vector<double> ae_samples(const ModelFolds& m) {
  std::vector<double> v;
  v.reserve(m.folds.size());
  for (const auto& f : m.folds)
    if (!f.failed) v.push_back(f.abs_error);
  return v;
}

}  // namespace

std::map<std::string, WTLTally> win_tie_loss(const std::vector<ModelFolds>& models,
                                             double alpha, bool per_measure_gate) {
  if (models.size() < 2)
    throw std::invalid_argument("win_tie_loss: needs at least 2 models");
  const std::size_t folds = models.front().folds.size();
  for (const auto& m : models)
    if (m.folds.size() != folds)
      throw std::invalid_argument("win_tie_loss: misaligned fold counts");

  struct Measure {
    const char* name;
    double (*aggregate)(std::span<const FoldResult>);
    double (*per_fold)(const FoldResult&);
  };
  static const Measure kMeasures[] = {
      {"mae", mae, [](const FoldResult& f) { return f.abs_error; }},
      {"mbre", mbre, fold_bre},
      {"mibre", mibre, fold_ibre},
  };

  std::map<std::string, WTLTally> tally;
  for (const auto& m : models) tally[m.name];

  for (std::size_t i = 0; i < models.size(); ++i) {
    for (std::size_t j = i + 1; j < models.size(); ++j) {
      const auto ae_i = ae_samples(models[i]);
      const auto ae_j = ae_samples(models[j]);
      const bool ae_significant =
          wilcoxon_ranksum(ae_i, ae_j).p_value < alpha;

      for (const auto& measure : kMeasures) {
        bool significant = ae_significant;
        if (per_measure_gate) {
          std::vector<double> vi, vj;
          for (const auto& f : models[i].folds)
            if (!f.failed) vi.push_back(measure.per_fold(f));
          for (const auto& f : models[j].folds)
            if (!f.failed) vj.push_back(measure.per_fold(f));
          significant = wilcoxon_ranksum(vi, vj).p_value < alpha;
        }
        if (!significant) {
          ++tally[models[i].name].tie;
          ++tally[models[j].name].tie;
          continue;
        }
        const double ei = measure.aggregate(models[i].folds);
        const double ej = measure.aggregate(models[j].folds);
        if (ei == ej) {
          ++tally[models[i].name].tie;
          ++tally[models[j].name].tie;
        } else if (ei < ej) {
          ++tally[models[i].name].win;
          ++tally[models[j].name].loss;
        } else {
          ++tally[models[j].name].win;
          ++tally[models[i].name].loss;
        }
      }
    }
  }
  return tally;
}

ComparisonResult compare_models(const std::vector<EvaluationReport>& reports,
                                double alpha) {
  if (reports.size() < 2)
    throw std::invalid_argument("compare_models: needs at least 2 reports");

  // All reports must cover the same folds in the same order.
  const auto& reference = reports.front().folds;
  for (const auto& r : reports) {
    if (r.folds.size() != reference.size())
      throw std::invalid_argument("compare_models: fold counts differ ('" +
                                  r.model + "')");
    for (std::size_t i = 0; i < reference.size(); ++i)
      if (r.folds[i].id != reference[i].id)
        throw std::invalid_argument("compare_models: fold ids differ ('" + r.model +
                                    "', fold '" + r.folds[i].id + "')");
  }

  ComparisonResult result;
  std::vector<ModelFolds> models;
  std::vector<std::pair<std::string, std::vector<double>>> errors;
  for (const auto& r : reports) {
    result.model_names.push_back(r.model);
    models.push_back({r.model, r.folds});
    std::vector<double> ae;
    for (const auto& f : r.folds)
      if (!f.failed) ae.push_back(f.abs_error);
    errors.emplace_back(r.model, std::move(ae));
  }

  result.p_matrix.resize(reports.size());
  for (std::size_t i = 0; i < reports.size(); ++i) {
    result.p_matrix[i].resize(i);
    for (std::size_t j = 0; j < i; ++j)
      result.p_matrix[i][j] =
          wilcoxon_ranksum(errors[i].second, errors[j].second).p_value;
  }

  result.sk = scott_knott(errors, alpha);
  result.wtl = win_tie_loss(models, alpha);
  return result;
}

}  // namespace ucpbench

#include "ucpbench/json_io.hpp"

#include <fstream>

namespace ucpbench {

namespace {

OrderedJson stats_to_json(const VariableStats& s) {
  OrderedJson j;
  j["mean"] = s.mean;
  j["stdev"] = s.stdev;
  j["min"] = s.min;
  j["median"] = s.median;
  j["max"] = s.max;
  j["skewness"] = s.skewness;
  j["kurtosis"] = s.kurtosis;
  if (s.degenerate) j["degenerate"] = true;
  return j;
}

OrderedJson target_to_json(const RangeTarget& t) {
  OrderedJson j;
  j["mean"] = t.mean;
  j["stdev"] = t.stdev;
  j["min"] = t.min;
  j["max"] = t.max;
  return j;
}

RangeTarget target_from_json(const OrderedJson& j) {
  RangeTarget t;
  t.mean = j.at("mean").get<double>();
  t.stdev = j.at("stdev").get<double>();
  t.min = j.at("min").get<double>();
  t.max = j.at("max").get<double>();
  return t;
}

}  // namespace

OrderedJson summary_to_json(const DatasetSummary& summary, const std::string& name) {
  OrderedJson j;
  j["dataset"] = name;
  j["n"] = summary.n;
  j["ucp"] = stats_to_json(summary.ucp);
  j["effort"] = stats_to_json(summary.effort);
  j["productivity"] = stats_to_json(summary.productivity);
  return j;
}

OrderedJson profile_to_json(const DatasetProfile& profile) {
  OrderedJson j;
  j["name"] = profile.name;
  j["n"] = profile.n;
  j["ucp"] = target_to_json(profile.ucp);
  j["effort"] = target_to_json(profile.effort);
  j["productivity"] = target_to_json(profile.productivity);
  j["env_coupling"] = profile.env_coupling;
  return j;
}

DatasetProfile profile_from_json(const OrderedJson& j) {
  DatasetProfile p;
  p.name = j.at("name").get<std::string>();
  p.n = j.at("n").get<int>();
  p.ucp = target_from_json(j.at("ucp"));
  p.effort = target_from_json(j.at("effort"));
  p.productivity = target_from_json(j.at("productivity"));
  if (j.contains("env_coupling")) p.env_coupling = j.at("env_coupling").get<double>();
  return p;
}

DatasetProfile load_profile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DatasetError("cannot open profile file: " + path.string());
  OrderedJson j;
  in >> j;
  return profile_from_json(j);
}

OrderedJson report_to_json(const EvaluationReport& report,
                           const std::string& timestamp) {
  OrderedJson j;
  j["model"] = report.model;
  j["dataset"] = report.dataset_name;
  j["seed"] = report.seed;
  if (!timestamp.empty()) j["generated_at"] = timestamp;
  OrderedJson folds = OrderedJson::array();
  for (const auto& f : report.folds) {
    OrderedJson fj;
    fj["id"] = f.id;
    fj["actual"] = f.actual;
    fj["estimate"] = f.estimate;
    fj["ae"] = f.abs_error;
    if (f.failed) {
      fj["failed"] = true;
      fj["reason"] = f.fail_reason;
    }
    folds.push_back(std::move(fj));
  }
  j["folds"] = std::move(folds);
  OrderedJson agg;
  agg["mae"] = report.mae;
  agg["mbre"] = report.mbre;
  agg["mibre"] = report.mibre;
  agg["sa"] = report.sa;
  agg["delta"] = report.delta;
  j["aggregates"] = std::move(agg);
  OrderedJson base;
  base["mae_p0"] = report.baseline.mae_p0;
  base["sp0"] = report.baseline.sp0;
  base["run_mae_stdev"] = report.baseline.run_mae_stdev;
  base["exact_mae_p0"] = report.baseline.exact_mae_p0;
  base["runs"] = report.baseline.runs;
  base["seed"] = report.baseline.seed;
  j["baseline"] = std::move(base);
  j["warnings"] = report.warnings;
  return j;
}

EvaluationReport report_from_json(const OrderedJson& j) {
  EvaluationReport r;
  r.model = j.at("model").get<std::string>();
  r.dataset_name = j.value("dataset", std::string{});
  r.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& fj : j.at("folds")) {
    FoldResult f;
    f.id = fj.at("id").get<std::string>();
    f.actual = fj.at("actual").get<double>();
    f.estimate = fj.at("estimate").get<double>();
    f.abs_error = fj.at("ae").get<double>();
    f.failed = fj.value("failed", false);
    f.fail_reason = fj.value("reason", std::string{});
    r.folds.push_back(std::move(f));
  }
  const auto& agg = j.at("aggregates");
  r.mae = agg.at("mae").get<double>();
  r.mbre = agg.at("mbre").get<double>();
  r.mibre = agg.at("mibre").get<double>();
  r.sa = agg.at("sa").get<double>();
  r.delta = agg.at("delta").get<double>();
  const auto& base = j.at("baseline");
  r.baseline.mae_p0 = base.at("mae_p0").get<double>();
  r.baseline.sp0 = base.at("sp0").get<double>();
  r.baseline.run_mae_stdev = base.value("run_mae_stdev", 0.0);
  r.baseline.exact_mae_p0 = base.at("exact_mae_p0").get<double>();
  r.baseline.runs = base.at("runs").get<int>();
  r.baseline.seed = base.at("seed").get<std::uint64_t>();
  if (j.contains("warnings"))
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
  return r;
}

EvaluationReport load_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DatasetError("cannot open report file: " + path.string());
  OrderedJson j;
  in >> j;
  return report_from_json(j);
}

OrderedJson comparison_to_json(const ComparisonResult& result,
                               const std::string& timestamp) {
  OrderedJson j;
  j["models"] = result.model_names;
  if (!timestamp.empty()) j["generated_at"] = timestamp;

  // Lower triangle, keyed "row:column" in table layout.
  OrderedJson pv = OrderedJson::array();
  for (std::size_t i = 1; i < result.model_names.size(); ++i) {
    OrderedJson row;
    row["model"] = result.model_names[i];
    OrderedJson cells;
    for (std::size_t k = 0; k < i; ++k)
      cells[result.model_names[k]] = result.p_matrix[i][k];
    row["p_values"] = std::move(cells);
    pv.push_back(std::move(row));
  }
  j["wilcoxon"] = std::move(pv);

  OrderedJson sk;
  sk["transformed"] = result.sk.transformed;
  sk["lambda"] = result.sk.lambda;
  sk["shift"] = result.sk.shift;
  OrderedJson groups = OrderedJson::array();
  for (std::size_t g = 0; g < result.sk.groups.size(); ++g) {
    OrderedJson gj;
    gj["rank"] = g + 1;
    gj["models"] = result.sk.groups[g];
    OrderedJson means;
    for (const auto& name : result.sk.groups[g])
      means[name] = result.sk.transformed_means.at(name);
    gj["transformed_means"] = std::move(means);
    groups.push_back(std::move(gj));
  }
  sk["groups"] = std::move(groups);
  sk["warnings"] = result.sk.warnings;
  j["scott_knott"] = std::move(sk);

  OrderedJson wtl;
  for (const auto& name : result.model_names) {
    const auto& t = result.wtl.at(name);
    OrderedJson tj;
    tj["win"] = t.win;
    tj["tie"] = t.tie;
    tj["loss"] = t.loss;
    wtl[name] = std::move(tj);
  }
  j["win_tie_loss"] = std::move(wtl);
  return j;
}

OrderedJson size_breakdown_to_json(const SizeBreakdown& b) {
  OrderedJson j;
  j["uaw"] = b.uaw;
  j["uucw"] = b.uucw;
  j["uucp"] = b.uucp;
  j["tcf"] = b.tcf;
  if (b.ef.has_value()) j["ef"] = *b.ef;
  j["ucp"] = b.ucp;
  return j;
}

}  // namespace ucpbench

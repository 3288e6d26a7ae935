// ucpbench: use-case-points sizing, productivity prediction, and model
// benchmarking from the command line.
//
// Commands: compute-size, estimate, evaluate, compare, generate.
// Exit codes: 0 success, 1 usage/validation error, 2 data error.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "ucpbench/baselines.hpp"
#include "ucpbench/comparison.hpp"
#include "ucpbench/core_metrics.hpp"
#include "ucpbench/dataset.hpp"
#include "ucpbench/estimators.hpp"
#include "ucpbench/evaluation.hpp"
#include "ucpbench/json_io.hpp"

namespace {

using namespace ucpbench;

// Usage-level problem: wrong arity, unknown name, bad range. Exit code 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string iso_utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<int> parse_int_list(const std::string& text, std::size_t expected,
                                const std::string& what) {
  std::vector<int> values;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    try {
      std::size_t pos = 0;
      const int v = std::stoi(token, &pos);
      if (pos != token.size()) throw std::invalid_argument(token);
      values.push_back(v);
    } catch (const std::exception&) {
      throw UsageError(what + ": '" + token + "' is not an integer");
    }
  }
  if (values.size() != expected)
    throw UsageError(what + ": expected " + std::to_string(expected) +
                     " comma-separated integers, got " + std::to_string(values.size()));
  return values;
}

std::vector<double> parse_double_list(const std::string& text, std::size_t expected,
                                      const std::string& what) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(token, &pos);
      if (pos != token.size()) throw std::invalid_argument(token);
      values.push_back(v);
    } catch (const std::exception&) {
      throw UsageError(what + ": '" + token + "' is not a number");
    }
  }
  if (values.size() != expected)
    throw UsageError(what + ": expected " + std::to_string(expected) + " values");
  return values;
}

EnvironmentalFactors parse_env(const std::string& text) {
  const auto v = parse_int_list(text, 8, "--env");
  std::array<int, 8> a{};
  std::copy(v.begin(), v.end(), a.begin());
  try {
    return EnvironmentalFactors(a);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

// ---- run configuration ---------------------------------------------------

struct RunConfig {
  std::uint64_t seed = 42;
  bool seed_from_cli = false;
  bool seed_from_config = false;
  int mc_runs = 1000;
  std::vector<std::string> models = estimator_catalog();
  double p_enter = 0.05;
  double p_remove = 0.10;
  bool strict_fold_k = false;
  std::string format = "table";
  NassifParams nassif;

  EstimatorConfig estimator_config() const {
    EstimatorConfig cfg;
    cfg.seed = seed;
    cfg.p_enter = p_enter;
    cfg.p_remove = p_remove;
    cfg.strict_fold_k = strict_fold_k;
    cfg.nassif = nassif;
    return cfg;
  }
};

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) out.push_back(token);
  return out;
}

// Key/value config file: one `key = value` per line, '#' comments.
void apply_config_file(RunConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file: " + path.string());
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (eq == std::string::npos)
      throw UsageError("config line " + std::to_string(line_no) + ": expected key = value");
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "seed") {
        cfg.seed = std::stoull(value);
        cfg.seed_from_config = true;
      } else if (key == "mc_runs") {
        cfg.mc_runs = std::stoi(value);
      } else if (key == "models") {
        cfg.models = split_csv(value);
      } else if (key == "p_enter") {
        cfg.p_enter = std::stod(value);
      } else if (key == "p_remove") {
        cfg.p_remove = std::stod(value);
      } else if (key == "strict_fold_k") {
        cfg.strict_fold_k = value == "true" || value == "1";
      } else if (key == "format") {
        cfg.format = value;
      } else if (key == "nassif_alpha") {
        cfg.nassif.alpha = std::stod(value);
      } else if (key == "nassif_beta") {
        cfg.nassif.beta = std::stod(value);
      } else if (key == "nassif_levels") {
        const auto v = parse_double_list(value, 4, "nassif_levels");
        std::copy(v.begin(), v.end(), cfg.nassif.productivity_levels.begin());
      } else if (key == "nassif_thresholds") {
        const auto v = parse_double_list(value, 3, "nassif_thresholds");
        std::copy(v.begin(), v.end(), cfg.nassif.thresholds.begin());
        cfg.nassif.thresholds_set = true;
      } else {
        throw UsageError("config: unknown key '" + key + "'");
      }
    } catch (const UsageError&) {
      throw;
    } catch (const std::exception&) {
      throw UsageError("config line " + std::to_string(line_no) + ": bad value for '" +
                       key + "'");
    }
  }
}

// --seed beats the config file, which beats UCPBENCH_SEED, which beats 42.
void resolve_seed(RunConfig& cfg) {
  if (cfg.seed_from_cli || cfg.seed_from_config) return;
  if (const char* env = std::getenv("UCPBENCH_SEED")) {
    try {
      cfg.seed = std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError("UCPBENCH_SEED is not an integer");
    }
  }
}

void check_models(const std::vector<std::string>& models) {
  for (const auto& m : models) {
    if (!is_known_estimator(m)) {
      std::string catalog;
      for (const auto& name : estimator_catalog()) {
        if (!catalog.empty()) catalog += ", ";
        catalog += name;
      }
      throw UsageError("unknown model '" + m + "'; available: " + catalog);
    }
  }
}

void write_json_atomic(const std::filesystem::path& path, const OrderedJson& j) {
  write_text_atomic(path, j.dump(2) + "\n");
}

// ---- commands --------------------------------------------------------------

struct ComputeSizeArgs {
  std::string actors, usecases, tcf, ef, mode = "full", format = "table";
};

int cmd_compute_size(const ComputeSizeArgs& args) {
  const auto actor_values = parse_int_list(args.actors, 3, "--actors");
  const auto usecase_values = parse_int_list(args.usecases, 3, "--usecases");
  const auto tcf_values = parse_int_list(args.tcf, 13, "--tcf");

  UcpMode mode;
  if (args.mode == "full")
    mode = UcpMode::Full;
  else if (args.mode == "no-ef")
    mode = UcpMode::NoEf;
  else
    throw UsageError("--mode must be 'full' or 'no-ef'");

  SizeBreakdown breakdown;
  try {
    std::array<int, 13> tf{};
    std::copy(tcf_values.begin(), tcf_values.end(), tf.begin());
    std::optional<EnvironmentalFactors> env;
    if (!args.ef.empty()) env = parse_env(args.ef);
    if (mode == UcpMode::Full && !env.has_value())
      throw UsageError("--mode full requires --ef");
    breakdown = compute_ucp(
        ActorCounts{actor_values[0], actor_values[1], actor_values[2]},
        UseCaseCounts{usecase_values[0], usecase_values[1], usecase_values[2]},
        TechnicalFactors(tf), env, mode);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  if (args.format == "json") {
    std::cout << size_breakdown_to_json(breakdown).dump(2) << "\n";
  } else {
    std::cout << "uaw   " << fixed2(breakdown.uaw) << "\n"
              << "uucw  " << fixed2(breakdown.uucw) << "\n"
              << "uucp  " << fixed2(breakdown.uucp) << "\n"
              << "tcf   " << fixed2(breakdown.tcf) << "\n";
    if (breakdown.ef.has_value()) std::cout << "ef    " << fixed2(*breakdown.ef) << "\n";
    std::cout << "ucp   " << fixed2(breakdown.ucp) << "\n";
  }
  return 0;
}

struct EstimateArgs {
  std::string model, train, env;
  double ucp = 0.0;
  RunConfig run;
  std::string config_file;
};

int cmd_estimate(EstimateArgs& args) {
  if (!args.config_file.empty()) apply_config_file(args.run, args.config_file);
  resolve_seed(args.run);
  check_models({args.model});
  if (!(args.ucp > 0.0)) throw UsageError("--ucp must be positive");
  const auto env = parse_env(args.env);

  const auto data = load_dataset(args.train);
  auto estimator = make_estimator(args.model, args.run.estimator_config());
  estimator->set_seed(derive_seed(args.run.seed, args.model));
  estimator->fit(data);

  const double productivity = estimator->predict_productivity(env);
  const double effort = estimator->estimate_effort(env, args.ucp);
  if (args.run.format == "json") {
    OrderedJson j;
    j["model"] = args.model;
    j["productivity"] = productivity;
    j["effort"] = effort;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "model         " << args.model << "\n"
              << "productivity  " << fixed2(productivity) << "\n"
              << "effort        " << fixed2(effort) << "\n";
  }
  return 0;
}

struct EvaluateArgs {
  std::string data;
  std::string models;
  std::string out_dir = ".";
  RunConfig run;
  std::string config_file;
};

int cmd_evaluate(EvaluateArgs& args) {
  if (!args.config_file.empty()) apply_config_file(args.run, args.config_file);
  resolve_seed(args.run);
  if (!args.models.empty()) args.run.models = split_csv(args.models);
  check_models(args.run.models);

  const auto data = load_dataset(args.data);
  const auto timestamp = iso_utc_now();
  std::filesystem::create_directories(args.out_dir);

  std::vector<EvaluationReport> reports;
  for (const auto& model : args.run.models) {
    auto report =
        evaluate_model(data, model, args.run.estimator_config(), args.run.mc_runs);
    const auto path =
        std::filesystem::path(args.out_dir) / ("report_" + model + ".json");
    write_json_atomic(path, report_to_json(report, timestamp));
    reports.push_back(std::move(report));
  }

  if (args.run.format == "json") {
    OrderedJson all = OrderedJson::array();
    for (const auto& r : reports) all.push_back(report_to_json(r, timestamp));
    std::cout << all.dump(2) << "\n";
  } else {
    std::printf("%-8s %12s %9s %9s %8s %7s\n", "model", "MAE", "MBRE", "MIBRE",
                "SA%", "delta");
    for (const auto& r : reports) {
      std::printf("%-8s %12s %9s %9s %8s %7s\n", r.model.c_str(),
                  fixed2(r.mae).c_str(), fixed2(100.0 * r.mbre).c_str(),
                  fixed2(100.0 * r.mibre).c_str(), fixed2(100.0 * r.sa).c_str(),
                  fixed2(r.delta).c_str());
    }
    for (const auto& r : reports)
      for (const auto& w : r.warnings)
        std::cout << "warning [" << r.model << "] " << w << "\n";
  }
  return 0;
}

struct CompareArgs {
  std::vector<std::string> reports;
  std::string out = "comparison.json";
  std::string format = "table";
};

int cmd_compare(const CompareArgs& args) {
  if (args.reports.size() < 2) throw UsageError("compare needs at least 2 reports");
  std::vector<EvaluationReport> reports;
  for (const auto& path : args.reports) reports.push_back(load_report(path));

  const auto result = compare_models(reports);
  write_json_atomic(args.out, comparison_to_json(result, iso_utc_now()));

  if (args.format == "table") {
    std::cout << "wilcoxon p-values (lower triangle)\n";
    std::printf("%-8s", "");
    for (std::size_t k = 0; k + 1 < result.model_names.size(); ++k)
      std::printf(" %8s", result.model_names[k].c_str());
    std::printf("\n");
    for (std::size_t i = 1; i < result.model_names.size(); ++i) {
      std::printf("%-8s", result.model_names[i].c_str());
      for (std::size_t j = 0; j < i; ++j)
        std::printf(" %8s", fixed2(result.p_matrix[i][j]).c_str());
      std::printf("\n");
    }
    std::cout << "\nscott-knott ranks (1 = best)\n";
    for (std::size_t g = 0; g < result.sk.groups.size(); ++g) {
      std::cout << "rank " << g + 1 << ":";
      for (const auto& name : result.sk.groups[g])
        std::cout << " " << name << " (" << fixed2(result.sk.transformed_means.at(name))
                  << ")";
      std::cout << "\n";
    }
    std::cout << "\nwin-tie-loss\n";
    std::printf("%-8s %5s %5s %5s\n", "model", "win", "tie", "loss");
    for (const auto& name : result.model_names) {
      const auto& t = result.wtl.at(name);
      std::printf("%-8s %5d %5d %5d\n", name.c_str(), t.win, t.tie, t.loss);
    }
  }
  std::cout << "wrote " << args.out << "\n";
  return 0;
}

struct GenerateArgs {
  std::string profile;
  int n = 0;
  std::string out;
  RunConfig run;
};

int cmd_generate(GenerateArgs& args) {
  resolve_seed(args.run);
  DatasetProfile profile;
  if (const auto* builtin = builtin_profile(args.profile)) {
    profile = *builtin;
  } else if (std::filesystem::exists(args.profile)) {
    profile = load_profile(args.profile);
  } else {
    throw UsageError("unknown profile '" + args.profile +
                     "' (built-ins: ds1, ds2, ds3; or a profile JSON file)");
  }
  if (args.n > 0) profile.n = args.n;

  const auto data = generate_synthetic(profile, args.run.seed);
  const auto out =
      args.out.empty() ? std::filesystem::path(profile.name + ".csv")
                       : std::filesystem::path(args.out);
  save_dataset(data, out);
  std::cout << summary_to_json(describe(data), data.name()).dump(2) << "\n";
  std::cerr << "wrote " << data.size() << " records to " << out.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Use Case Points productivity prediction and benchmarking"};
  app.require_subcommand(1);

  ComputeSizeArgs size_args;
  auto* size_cmd = app.add_subcommand("compute-size", "Compute the UCP size breakdown");
  size_cmd->add_option("--actors", size_args.actors,
                       "simple,average,complex actor counts")->required();
  size_cmd->add_option("--usecases", size_args.usecases,
                       "simple,average,complex use case counts")->required();
  size_cmd->add_option("--tcf", size_args.tcf, "13 technical ratings 0..5")->required();
  size_cmd->add_option("--ef", size_args.ef, "8 environmental ratings 0..5");
  size_cmd->add_option("--mode", size_args.mode, "full | no-ef");
  size_cmd->add_option("--format", size_args.format, "table | json");

  EstimateArgs est_args;
  auto* est_cmd = app.add_subcommand("estimate", "Estimate one project's effort");
  est_cmd->add_option("--model", est_args.model, "model name")->required();
  est_cmd->add_option("--train", est_args.train, "training dataset CSV")->required();
  est_cmd->add_option("--env", est_args.env, "8 environmental ratings 0..5")->required();
  est_cmd->add_option("--ucp", est_args.ucp, "project size in UCP")->required();
  auto* est_seed = est_cmd->add_option("--seed", est_args.run.seed, "random seed");
  est_cmd->add_option("--config", est_args.config_file, "key=value config file");
  est_cmd->add_option("--format", est_args.run.format, "table | json");

  EvaluateArgs eval_args;
  auto* eval_cmd = app.add_subcommand("evaluate", "LOOCV benchmark of the models");
  eval_cmd->add_option("--data", eval_args.data, "dataset CSV")->required();
  eval_cmd->add_option("--models", eval_args.models,
                       "comma-separated model names (default: all)");
  auto* eval_seed = eval_cmd->add_option("--seed", eval_args.run.seed, "random seed");
  eval_cmd->add_option("--mc-runs", eval_args.run.mc_runs,
                       "random-guessing Monte Carlo runs");
  eval_cmd->add_option("--out", eval_args.out_dir, "output directory for reports");
  eval_cmd->add_option("--format", eval_args.run.format, "table | json");
  eval_cmd->add_flag("--strict-fold-k", eval_args.run.strict_fold_k,
                     "re-select k inside every fold");
  eval_cmd->add_option("--p-enter", eval_args.run.p_enter, "stepwise entry p-value");
  eval_cmd->add_option("--p-remove", eval_args.run.p_remove, "stepwise removal p-value");
  eval_cmd->add_option("--config", eval_args.config_file, "key=value config file");

  CompareArgs cmp_args;
  auto* cmp_cmd = app.add_subcommand("compare", "Statistical comparison of reports");
  cmp_cmd->add_option("reports", cmp_args.reports, "evaluation report JSON files")
      ->required();
  cmp_cmd->add_option("--out", cmp_args.out, "output JSON path");
  cmp_cmd->add_option("--format", cmp_args.format, "table | json");

  GenerateArgs gen_args;
  auto* gen_cmd = app.add_subcommand("generate", "Generate a synthetic dataset");
  gen_cmd->add_option("--profile", gen_args.profile,
                      "ds1 | ds2 | ds3 | profile JSON file")->required();
  gen_cmd->add_option("--n", gen_args.n, "override the profile row count");
  auto* gen_seed = gen_cmd->add_option("--seed", gen_args.run.seed, "random seed");
  gen_cmd->add_option("--out", gen_args.out, "output CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    est_args.run.seed_from_cli = est_seed->count() > 0;
    eval_args.run.seed_from_cli = eval_seed->count() > 0;
    gen_args.run.seed_from_cli = gen_seed->count() > 0;

    if (size_cmd->parsed()) return cmd_compute_size(size_args);
    if (est_cmd->parsed()) return cmd_estimate(est_args);
    if (eval_cmd->parsed()) return cmd_evaluate(eval_args);
    if (cmp_cmd->parsed()) return cmd_compare(cmp_args);
    if (gen_cmd->parsed()) return cmd_generate(gen_args);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

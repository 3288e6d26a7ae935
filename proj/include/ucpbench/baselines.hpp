#pragma once

// The three prior effort models used as benchmarks.
//
// Karner: fixed 20 person-hours/UCP.
//
// Schneider-Winters: count env_1..env_6 ratings strictly below 3 and
// env_7..env_8 ratings strictly above 3; the total picks one of three
// productivity levels (fair 20 / low 28 / very low 36 person-hours/UCP).
//
// Nassif: Effort = (alpha / Productivity) * UCP^beta with alpha = 8.16,
// beta = 1.17, where Productivity is a team-productivity level (size/effort
// sense) looked up from the weighted factor sum prod_sum. The published
// model derives the level with a fuzzy system that is not reproduced here;
// this implementation approximates it with a four-level threshold table
// (thresholds default to training prod_sum quartiles, values configurable).

#include <array>

#include "ucpbench/core_metrics.hpp"

namespace ucpbench {

enum class SWLevel { Fair, Low, VeryLow };

struct SWClassification {
  int count_low_env16 = 0;   // env_1..env_6 with rating < 3
  int count_high_env78 = 0;  // env_7..env_8 with rating > 3
  int total = 0;
  SWLevel level = SWLevel::Fair;
  double pdr = 20.0;  // person-hours per UCP
};

const char* sw_level_name(SWLevel level);

double karner_estimate(double ucp);

SWClassification sw_classify(const EnvironmentalFactors& e);
double sw_estimate(const EnvironmentalFactors& e, double ucp);

// Weighted factor sum using the environmental weight table.
double nassif_prod_sum(const EnvironmentalFactors& e);

struct NassifParams {
  double alpha = 8.16;
  double beta = 1.17;
  // Level i applies when prod_sum <= thresholds[i] (first match); the last
  // level catches everything above thresholds[2].
  std::array<double, 3> thresholds = {0.0, 0.0, 0.0};
  std::array<double, 4> productivity_levels = {0.7, 0.9, 1.1, 1.3};
  bool thresholds_set = false;  // unset: fit from training quartiles

  void validate() const;
};

double nassif_team_productivity(const NassifParams& params, double prod_sum);
double nassif_estimate(const EnvironmentalFactors& e, double ucp,
                       const NassifParams& params);

}  // namespace ucpbench

#include "ucpbench/baselines.hpp"

#include <cmath>
#include <stdexcept>

namespace ucpbench {

const char* sw_level_name(SWLevel level) {
  switch (level) {
    case SWLevel::Fair: return "fair";
    case SWLevel::Low: return "low";
    case SWLevel::VeryLow: return "very_low";
  }
  return "?";
}

double karner_estimate(double ucp) {
  if (!(ucp > 0.0)) throw std::invalid_argument("karner_estimate: ucp must be positive");
  return 20.0 * ucp;
}

SWClassification sw_classify(const EnvironmentalFactors& e) {
  SWClassification c;
  for (int i = 0; i < 6; ++i)
    if (e.value(i) < 3) ++c.count_low_env16;
  for (int i = 6; i < 8; ++i)
    if (e.value(i) > 3) ++c.count_high_env78;
  c.total = c.count_low_env16 + c.count_high_env78;
  if (c.total <= 2) {
    c.level = SWLevel::Fair;
    c.pdr = 20.0;
  } else if (c.total <= 4) {
    c.level = SWLevel::Low;
    c.pdr = 28.0;
  } else {
    c.level = SWLevel::VeryLow;
    c.pdr = 36.0;
  }
  return c;
}

double sw_estimate(const EnvironmentalFactors& e, double ucp) {
  if (!(ucp > 0.0)) throw std::invalid_argument("sw_estimate: ucp must be positive");
  return sw_classify(e).pdr * ucp;
}

double nassif_prod_sum(const EnvironmentalFactors& e) {
  double sum = 0.0;
  for (int i = 0; i < EnvironmentalFactors::kCount; ++i)
    sum += e.value(i) * EnvironmentalFactors::kWeights[static_cast<std::size_t>(i)];
  return sum;
}

void NassifParams::validate() const {
  for (double v : productivity_levels)
    if (!(v > 0.0))
      throw std::invalid_argument("nassif: productivity levels must be positive");
  if (thresholds_set) {
    if (!(thresholds[0] <= thresholds[1] && thresholds[1] <= thresholds[2]))
      throw std::invalid_argument("nassif: thresholds must be increasing");
  }
}

double nassif_team_productivity(const NassifParams& params, double prod_sum) {
  params.validate();
  if (!params.thresholds_set)
    throw std::invalid_argument("nassif: thresholds not set (fit required)");
  for (int i = 0; i < 3; ++i)
    if (prod_sum <= params.thresholds[static_cast<std::size_t>(i)])
      return params.productivity_levels[static_cast<std::size_t>(i)];
  return params.productivity_levels[3];
}

double nassif_estimate(const EnvironmentalFactors& e, double ucp,
                       const NassifParams& params) {
  if (!(ucp > 0.0)) throw std::invalid_argument("nassif_estimate: ucp must be positive");
  const double productivity = nassif_team_productivity(params, nassif_prod_sum(e));
  return params.alpha / productivity * std::pow(ucp, params.beta);
}

}  // namespace ucpbench

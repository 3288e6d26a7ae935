#pragma once

// Box-Cox power transform with maximum-likelihood lambda selected on a grid
// over [-3, 3] in steps of 0.01. Inputs must be strictly positive; callers
// dealing with zero-valued data (0..5 factor ratings, absolute errors) shift
// by +1 first.

#include <span>
#include <vector>

namespace ucpbench {

struct BoxCoxResult {
  double lambda = 1.0;
  std::vector<double> transformed;
};

// (v^lambda - 1) / lambda, or ln(v) at lambda = 0.
double boxcox_apply(double value, double lambda);

// Grid-search MLE fit. All-equal input is degenerate; lambda = 1 by
// convention (any lambda fits equally well).
BoxCoxResult boxcox_fit(std::span<const double> values);

}  // namespace ucpbench

#pragma once

#include <vector>

#include "hgraph/field.hpp"

namespace hgraph {

/// Finite-difference probe of the area functional along a direction.
/// Per-step estimates carry a noise-floor flag; the extrapolated value
/// Richardson-combines the two largest clean steps (central differences have
/// an even error expansion, so one combination removes the leading s^2 term).
struct FDReport {
  std::vector<double> steps;
  std::vector<double> estimates;
  std::vector<bool> noise_flag;   // numerator under the roundoff floor
  double extrapolated = 0.0;
  double best_single = 0.0;       // estimate at the smallest clean step
  bool monotone = true;           // successive estimate gaps shrink
  double noise_floor = 0.0;       // threshold used for the flags
  double direction_scale = 1.0;   // applied |v|_inf normalization

  double discrepancy(double analytic) const;
};

struct FDOptions {
  std::vector<double> steps = {1e-3, 1e-4, 1e-5};
};

/// Central first difference of s -> area(u + s v); v = 0 on the boundary.
FDReport fd_first_variation(const ScalarField& u, const ScalarField& v, const FDOptions& opts = {});

/// Central second difference of s -> area(u + s v); v = 0 on the boundary.
FDReport fd_second_variation(const ScalarField& u, const ScalarField& v, const FDOptions& opts = {});

}  // namespace hgraph

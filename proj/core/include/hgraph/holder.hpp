#pragma once

#include <cstdint>

#include "hgraph/metric.hpp"

namespace hgraph {

struct HolderOptions {
  /// All interior pairs are scanned when the interior is at most this big;
  /// beyond it a stratified random sample of pair sources is used.
  NodeIndex all_pairs_threshold = 2500;
  int sampled_sources = 96;
  std::uint64_t seed = 11;
  int sigma_mult = 1;
};

struct HolderNorm {
  double value = 0.0;      // sup |f| + seminorm
  double sup = 0.0;        // sup |f|
  double seminorm = 0.0;   // weighted Holder quotient supremum
  int sources_used = 0;
  bool sampled = false;    // true when the pair set was subsampled
};

/// Weighted Holder norm in the control metric:
///   sup |f| + sup_{x != y} min(d(x,bd), d(y,bd))^alpha |f(x)-f(y)| / d(x,y)^alpha.
/// alpha must lie in (0,1).  The supremum runs over a pair set: all interior
/// pairs on coarse grids, a seeded stratified sample otherwise.
HolderNorm holder_norm(const ScalarField& f, double alpha, const ScalarField& u,
                       const HolderOptions& opts = {});

struct C2AlphaNorm {
  double value = 0.0;
  double sup = 0.0;                 // sup |f|
  double weighted_gradient = 0.0;   // sum_i sup d |X_i^u f|
  double weighted_hessian = 0.0;    // sum_ij holder norm of d^2 X_i^u X_j^u f
};

/// Weighted second-order Holder norm:
///   sup |f| + sum_i sup_Omega d |X_i^u f| + sum_ij || d^2 X_i^u X_j^u f ||_{alpha,d}.
C2AlphaNorm c2alpha_norm(const ScalarField& f, double alpha, const ScalarField& u,
                         const HolderOptions& opts = {});

}  // namespace hgraph

#pragma once

#include <string>

#include "hgraph/stability.hpp"

namespace hgraph {

/// First-eigenvalue result for -L_u with Dirichlet conditions; strict
/// stability reads as lambda1 > 0.
struct SpectralResult {
  double lambda1 = 0.0;
  ScalarField eigenfunction;  // normalized in the discrete L2 norm
  std::string method;         // "dense" | "shift-invert" | "rayleigh"
  double residual = 0.0;      // |(-L)v - lambda v|_Q / |v|_Q
  bool converged = false;
};

struct EigenOptions {
  /// Dense brute-force path below this many interior unknowns (symmetric
  /// form route).
  int dense_threshold = 20000;
  /// Dense path of the symmetry-blind operator route; the general QR
  /// eigensolver is much more expensive, so its cutoff sits lower.
  int general_dense_threshold = 1200;
  double tol = 1e-10;
  int lanczos_iters = 160;
  int max_refine_iters = 40;
  unsigned seed = 2024;
};

/// Smallest eigenvalue of -L_u through the symmetric quadratic form
/// (Rayleigh quotient of the index form).  This is the strict-stability
/// certificate.
SpectralResult smallest_eigenvalue_sym(const StabilityOperator& op, const EigenOptions& opts = {});

/// Smallest-real-part eigenvalue of the operator matrix -L_u, computed by a
/// general (symmetry-blind) shift-invert iteration.  Kept separate from the
/// form route so the two exposures can be compared rather than conflated.
SpectralResult smallest_eigenvalue_operator(const StabilityOperator& op, const EigenOptions& opts = {});

struct FirstEigenvalue {
  SpectralResult sym;
  SpectralResult op;
  double scale = 0.0;          // max |diag(-L_u)|
  bool strictly_stable = false;  // sym.lambda1 > stability_tol * scale
  double stability_tol = 1e-8;
};

/// Both exposures plus the strict-stability verdict at threshold
/// lambda1_sym > 1e-8 * scale.
FirstEigenvalue first_eigenvalue(const ScalarField& u, const EigenOptions& opts = {});

}  // namespace hgraph

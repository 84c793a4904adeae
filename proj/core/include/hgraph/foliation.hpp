#pragma once

#include <string>
#include <vector>

#include "hgraph/solver.hpp"

namespace hgraph {

struct FoliationConfig {
  SolverConfig solver;
  /// Halve eps_max and retry this many times when leaf ordering fails.
  int max_shrink = 3;
  EigenOptions eigen = [] { EigenOptions e; e.dense_threshold = 0; return e; }();
};

/// Family of minimal leaves with vertically shifted boundary data around a
/// strictly stable base, together with the boundary-derivative field
/// v = d u_eps / d eps at eps = 0 (the solution of L_u v = 0, v = 1 on the
/// boundary).
struct Foliation {
  ScalarField base;
  std::vector<double> epsilons;    // ascending, symmetric around 0
  std::vector<ScalarField> leaves;
  std::vector<SolveReport> leaf_reports;
  ScalarField derivative;          // v > 0 on a valid foliation
  double requested_eps_max = 0.0;
  double used_eps_max = 0.0;
  bool ordered = false;
  bool valid = false;              // ordered, leaves converged, inf v > 0
  double min_leaf_gap = 0.0;       // over adjacent leaves and interior nodes
  double min_derivative = 0.0;     // inf of v over interior
  ScalarField lower_envelope, upper_envelope;
  double base_lambda1 = 0.0;
  std::string note;
};

/// Builds k leaves for boundary shifts in a symmetric grid over
/// [-eps_max, eps_max].  Requires a strictly stable base with small residual;
/// shrinks eps_max automatically (recorded in note) when ordering fails at
/// the requested amplitude.  Throws std::invalid_argument when the base is
/// not strictly stable.
Foliation build_foliation(const ScalarField& u, double eps_max, int k, const FoliationConfig& cfg);

}  // namespace hgraph

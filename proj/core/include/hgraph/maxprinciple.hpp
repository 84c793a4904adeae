#pragma once

#include <string>

#include "hgraph/eigensolve.hpp"

namespace hgraph {

enum class MaxPrincipleVerdict { Holds, Violated, Inapplicable };

struct MaxPrincipleResult {
  MaxPrincipleVerdict verdict = MaxPrincipleVerdict::Inapplicable;
  ScalarField solution;   // v with L_u v = g, v = b on the boundary
  double inf_v = 0.0;     // over all nodes
  double lambda1 = 0.0;   // first eigenvalue of -L_u used for the hypothesis
  std::string note;
};

/// Solves L_u v = g with boundary data b and checks inf v > 0.
/// Hypotheses: g <= 0 everywhere, inf b > 0, and lambda1(-L_u) > 0.  A
/// violated eigenvalue hypothesis yields Inapplicable (the statement does not
/// apply), never Violated.
MaxPrincipleResult check_maximum_principle(const ScalarField& u, const ScalarField& g,
                                           const ScalarField& b, const EigenOptions& opts = {});

}  // namespace hgraph

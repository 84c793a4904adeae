#include "hgraph/maxprinciple.hpp"

#include <stdexcept>

namespace hgraph {

MaxPrincipleResult check_maximum_principle(const ScalarField& u, const ScalarField& g,
                                           const ScalarField& b, const EigenOptions& opts) {
  u.require_same_domain(g, "check_maximum_principle");
  u.require_same_domain(b, "check_maximum_principle");
  g.require_finite("check_maximum_principle (g)");
  b.require_finite("check_maximum_principle (b)");
  if (g.values().maxCoeff() > 0.0) {
    throw std::invalid_argument("check_maximum_principle: requires g <= 0 everywhere");
  }
  double inf_b = std::numeric_limits<double>::infinity();
  for (NodeIndex x : u.domain()->boundary()) inf_b = std::min(inf_b, b[x]);
  if (!(inf_b > 0.0)) {
    throw std::invalid_argument("check_maximum_principle: requires inf of boundary data > 0");
  }

  const StabilityOperator op = StabilityOperator::assemble(u);
  const SpectralResult sp = smallest_eigenvalue_sym(op, opts);

  MaxPrincipleResult out;
  out.lambda1 = sp.lambda1;
  if (!(sp.lambda1 > 0.0)) {
    out.verdict = MaxPrincipleVerdict::Inapplicable;
    out.note = "first eigenvalue is not positive; the comparison hypothesis fails";
    return out;
  }

  out.solution = op.solve(g, b);
  out.inf_v = out.solution.min_value();
  out.verdict = out.inf_v > 0.0 ? MaxPrincipleVerdict::Holds : MaxPrincipleVerdict::Violated;
  return out;
}

}  // namespace hgraph

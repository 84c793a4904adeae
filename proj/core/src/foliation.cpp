#include "hgraph/foliation.hpp"

#include <cmath>
#include <stdexcept>

namespace hgraph {

namespace {

struct LeafSet {
  std::vector<double> eps;
  std::vector<ScalarField> leaves;
  std::vector<SolveReport> reports;
  bool all_converged = true;
  bool ordered = true;
  double min_gap = 0.0;
};

LeafSet build_leaves(const ScalarField& u, double eps_max, int k, const FoliationConfig& cfg) {
  LeafSet out;
  out.eps.resize(static_cast<size_t>(k));
  for (int j = 0; j < k; ++j) {
    out.eps[static_cast<size_t>(j)] = k == 1 ? 0.0 : -eps_max + 2.0 * eps_max * j / (k - 1);
  }
  for (double e : out.eps) {
    if (e == 0.0) {
      out.leaves.push_back(u);
      out.reports.emplace_back();
      out.reports.back().converged = true;
      continue;
    }
    ScalarField phi(u.domain());
    phi.set_boundary(u);
    for (NodeIndex x : u.domain()->boundary()) phi[x] += e;
    auto [leaf, rep] = solve_perturbed(u, phi, nullptr, cfg.solver);
    out.all_converged = out.all_converged && rep.converged;
    out.leaves.push_back(std::move(leaf));
    out.reports.push_back(std::move(rep));
  }

  out.min_gap = std::numeric_limits<double>::infinity();
  for (size_t j = 0; j + 1 < out.leaves.size(); ++j) {
    for (NodeIndex x : u.domain()->interior()) {
      const double gap = out.leaves[j + 1][x] - out.leaves[j][x];
      out.min_gap = std::min(out.min_gap, gap);
      if (!(gap > 0.0)) out.ordered = false;
    }
  }
  return out;
}

}  // namespace

Foliation build_foliation(const ScalarField& u, double eps_max, int k, const FoliationConfig& cfg) {
  if (k < 2) throw std::invalid_argument("build_foliation: need at least two leaves");
  if (!(eps_max > 0.0)) throw std::invalid_argument("build_foliation: eps_max must be positive");
  u.require_finite("build_foliation base");

  Foliation fol;
  fol.base = u;
  fol.requested_eps_max = eps_max;

  const StabilityOperator op = StabilityOperator::assemble(u);
  const SpectralResult sp = smallest_eigenvalue_sym(op, cfg.eigen);
  fol.base_lambda1 = sp.lambda1;
  if (!(sp.lambda1 > 1e-8 * std::max(op.scale(), 1.0))) {
    throw std::invalid_argument("build_foliation: base graph is not strictly stable");
  }

  // boundary-derivative field: L_u v = 0, v = 1 on the boundary
  fol.derivative = op.solve(ScalarField(u.domain()), ScalarField::constant(u.domain(), 1.0));
  fol.min_derivative = fol.derivative.interior_min();

  double eps = eps_max;
  LeafSet set;
  for (int attempt = 0; attempt <= cfg.max_shrink; ++attempt) {
    set = build_leaves(u, eps, k, cfg);
    if (set.all_converged && set.ordered) break;
    eps *= 0.5;
    fol.note += "amplitude shrunk after an ordering or convergence failure; ";
  }
  fol.used_eps_max = eps;
  fol.epsilons = std::move(set.eps);
  fol.leaves = std::move(set.leaves);
  fol.leaf_reports = std::move(set.reports);
  fol.ordered = set.ordered;
  fol.min_leaf_gap = set.min_gap;

  fol.lower_envelope = fol.leaves.front();
  fol.upper_envelope = fol.leaves.back();
  for (const auto& leaf : fol.leaves) {
    for (NodeIndex x = 0; x < u.domain()->num_nodes(); ++x) {
      fol.lower_envelope[x] = std::min(fol.lower_envelope[x], leaf[x]);
      fol.upper_envelope[x] = std::max(fol.upper_envelope[x], leaf[x]);
    }
  }

  bool leaves_ok = true;
  for (const auto& rep : fol.leaf_reports) leaves_ok = leaves_ok && rep.converged;
  fol.valid = fol.ordered && leaves_ok && fol.min_derivative > 0.0;
  if (!fol.valid && fol.note.empty()) fol.note = "foliation invariants failed at the final amplitude";
  return fol;
}

}  // namespace hgraph

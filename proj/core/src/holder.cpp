#include "hgraph/holder.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "hgraph/stencil.hpp"

namespace hgraph {

namespace {

std::vector<NodeIndex> pick_sources(const GridDomain& dom, const HolderOptions& opts, bool& sampled) {
  const auto& interior = dom.interior();
  if (static_cast<NodeIndex>(interior.size()) <= opts.all_pairs_threshold) {
    sampled = false;
    return interior;
  }
  sampled = true;
  // stratified: one draw from each of `sampled_sources` contiguous index
  // blocks, deterministic in the seed
  std::mt19937_64 rng(opts.seed);
  std::vector<NodeIndex> out;
  const size_t S = static_cast<size_t>(std::min<NodeIndex>(opts.sampled_sources,
                                                           static_cast<NodeIndex>(interior.size())));
  const size_t block = interior.size() / S;
  out.reserve(S);
  for (size_t b = 0; b < S; ++b) {
    const size_t off = static_cast<size_t>(rng() % static_cast<std::uint64_t>(block));
    out.push_back(interior[b * block + off]);
  }
  return out;
}

double boundary_weight(const Eigen::VectorXd& dbd, NodeIndex x, NodeIndex y) {
  return std::min(dbd[x], dbd[y]);
}

}  // namespace

HolderNorm holder_norm(const ScalarField& f, double alpha, const ScalarField& u,
                       const HolderOptions& opts) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("holder_norm: alpha must lie in (0,1)");
  }
  f.require_same_domain(u, "holder_norm");
  f.require_finite("holder_norm");
  const GridDomain& dom = *f.domain();

  HolderNorm out;
  out.sup = f.max_abs();

  const DistanceField dbd = cc_distance_to_boundary(u, opts.sigma_mult);
  bool sampled = false;
  const std::vector<NodeIndex> sources = pick_sources(dom, opts, sampled);
  out.sampled = sampled;
  out.sources_used = static_cast<int>(sources.size());

  double semi = 0.0;
  for (NodeIndex s : sources) {
    const DistanceField ds = cc_distance(u, s, opts.sigma_mult);
    for (NodeIndex y : dom.interior()) {
      if (y == s) continue;
      const double d = ds.dist[y];
      if (!std::isfinite(d) || d <= 0.0) continue;
      const double w = boundary_weight(dbd.dist, s, y);
      if (!(w > 0.0) || !std::isfinite(w)) continue;
      const double quot = std::pow(w, alpha) * std::abs(f[y] - f[s]) / std::pow(d, alpha);
      semi = std::max(semi, quot);
    }
  }
  out.seminorm = semi;
  out.value = out.sup + out.seminorm;
  return out;
}

C2AlphaNorm c2alpha_norm(const ScalarField& f, double alpha, const ScalarField& u,
                         const HolderOptions& opts) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("c2alpha_norm: alpha must lie in (0,1)");
  }
  f.require_same_domain(u, "c2alpha_norm");
  const GridDomain& dom = *f.domain();
  const int nf = dom.num_fields();

  C2AlphaNorm out;
  out.sup = f.max_abs();

  const DistanceField dbd = cc_distance_to_boundary(u, opts.sigma_mult);

  std::vector<ScalarField> first;
  first.reserve(static_cast<size_t>(nf));
  for (int i = 1; i <= nf; ++i) {
    first.push_back(apply_field(i, f, &u));
    double s = 0.0;
    for (NodeIndex x : dom.interior()) {
      if (!std::isfinite(dbd.dist[x])) continue;
      s = std::max(s, dbd.dist[x] * std::abs(first.back()[x]));
    }
    out.weighted_gradient += s;
  }

  for (int i = 0; i < nf; ++i) {
    for (int j = 1; j <= nf; ++j) {
      ScalarField second = apply_field(j, first[static_cast<size_t>(i)], &u);
      for (NodeIndex x = 0; x < dom.num_nodes(); ++x) {
        const double w = dbd.dist[x];
        second[x] = std::isfinite(w) ? second[x] * w * w : 0.0;
      }
      out.weighted_hessian += holder_norm(second, alpha, u, opts).value;
    }
  }
  out.value = out.sup + out.weighted_gradient + out.weighted_hessian;
  return out;
}

}  // namespace hgraph

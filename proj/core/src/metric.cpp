#include "hgraph/metric.hpp"

#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace hgraph {

namespace {

// round-half-away-from-zero; sign-symmetric so every flow edge has an exact
// reverse edge and the snapped metric stays symmetric
std::int64_t snap_cells(double t) {
  return static_cast<std::int64_t>(t < 0 ? -std::floor(-t + 0.5) : std::floor(t + 0.5));
}

void check_bracket_precondition(const ScalarField& u) {
  const GridDomain& dom = *u.domain();
  if (dom.heisenberg_n() >= 2) return;
  const double spread = u.values().maxCoeff() - u.values().minCoeff();
  if (spread == 0.0) {
    throw std::invalid_argument(
        "cc_distance: n = 1 with constant u has a degenerate field system (no bracket generation)");
  }
}

// The lattice graph is kept undirected: the continuum control system admits
// both +X_i and -X_i, so every snapped flow edge is traversable both ways and
// the approximate metric is symmetric by construction.  The rotational-field
// edges are exactly reversible already (their drift coefficient does not vary
// along the flow); for the graph-coefficient field the reverse edges are
// recovered by a column scan.
DistanceField run_dijkstra(const ScalarField& u, const std::vector<NodeIndex>& sources, int sigma_mult) {
  check_bracket_precondition(u);
  if (sigma_mult < 1) throw std::invalid_argument("cc_distance: sigma multiplier must be >= 1");
  u.require_finite("cc_distance");

  const GridDomain& dom = *u.domain();
  const int n = dom.heisenberg_n();
  const int d = dom.dim();
  const int nf = dom.num_fields();
  const NodeIndex N = dom.num_nodes();
  const double hz = dom.spacing(d - 1);
  const NodeIndex sz = dom.stride(d - 1);
  const int mz = dom.shape()[d - 1];
  const bool drift_active = u.max_abs() > 0.0;

  DistanceField out;
  out.domain = u.domain();
  out.source = sources.size() == 1 ? sources.front() : -1;
  out.sigma_mult = sigma_mult;
  out.dist.setConstant(N, std::numeric_limits<double>::infinity());
  out.snap_error.setConstant(N, 0.0);

  using Item = std::pair<double, NodeIndex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  for (NodeIndex s : sources) {
    if (s < 0 || s >= N) throw std::out_of_range("cc_distance: source node out of range");
    out.dist[s] = 0.0;
    pq.emplace(0.0, s);
  }

  auto relax = [&pq, &out](NodeIndex from, NodeIndex to, double dist_from, double sigma, double snap_res) {
    const double nd = dist_from + sigma;
    if (nd < out.dist[to] - 1e-15) {
      out.dist[to] = nd;
      out.snap_error[to] = out.snap_error[from] + snap_res;
      pq.emplace(nd, to);
    }
  };

  while (!pq.empty()) {
    const auto [dcur, x] = pq.top();
    pq.pop();
    if (dcur > out.dist[x]) continue;
    const std::int64_t zx = dom.axis_index(x, d - 1);
    for (int i = 1; i <= nf; ++i) {
      const int axis = i - 1;
      const double sigma = sigma_mult * dom.spacing(axis);
      for (int sgn = -1; sgn <= 1; sgn += 2) {
        const int ai = dom.axis_index(x, axis) + sgn * sigma_mult;
        if (ai < 0 || ai >= dom.shape()[axis]) continue;
        const NodeIndex base = x + static_cast<NodeIndex>(sgn) * sigma_mult * dom.stride(axis);
        if (i >= n && i <= 2 * n - 2) {
          const double dz = -sgn * sigma * dom.coordinates(i - n)[x];
          const std::int64_t cells = snap_cells(dz / hz);
          const std::int64_t zi = zx + cells;
          if (zi < 0 || zi >= mz) continue;
          relax(x, base + cells * sz, dcur, sigma, std::abs(dz - static_cast<double>(cells) * hz));
        } else if (i == 2 * n - 1) {
          // forward flow with the coefficient frozen at x
          const double dz = sgn * sigma * u[x];
          const std::int64_t cells = snap_cells(dz / hz);
          const std::int64_t zi = zx + cells;
          if (zi >= 0 && zi < mz) {
            relax(x, base + cells * sz, dcur, sigma, std::abs(dz - static_cast<double>(cells) * hz));
          }
          // reverse edges: nodes y in the target column whose forward flow
          // (coefficient frozen at y) lands on x
          if (drift_active) {
            const NodeIndex column = base - zx * sz;  // axis-2n index zero
            for (std::int64_t zy = 0; zy < mz; ++zy) {
              const NodeIndex y = column + zy * sz;
              const double dzy = -sgn * sigma * u[y];  // y's forward flow toward x
              if (zy + snap_cells(dzy / hz) == zx) {
                relax(x, y, dcur, sigma, std::abs(dzy - static_cast<double>(snap_cells(dzy / hz)) * hz));
              }
            }
          }
        } else {
          relax(x, base, dcur, sigma, 0.0);
        }
      }
    }
  }

  for (NodeIndex x = 0; x < N; ++x) {
    if (std::isfinite(out.dist[x])) out.max_snap_error = std::max(out.max_snap_error, out.snap_error[x]);
  }
  return out;
}

}  // namespace

DistanceField cc_distance(const ScalarField& u, NodeIndex source, int sigma_mult) {
  return run_dijkstra(u, {source}, sigma_mult);
}

DistanceField cc_distance_to_boundary(const ScalarField& u, int sigma_mult) {
  return run_dijkstra(u, u.domain()->boundary(), sigma_mult);
}

BallVolumeReport ball_volume_exponent(const ScalarField& u, NodeIndex source,
                                      const std::vector<double>& radii, int sigma_mult) {
  if (radii.size() < 4) throw std::invalid_argument("ball_volume_exponent: need at least 4 radii");
  for (double r : radii) {
    if (!(r > 0.0)) throw std::invalid_argument("ball_volume_exponent: radii must be positive");
  }
  const DistanceField df = cc_distance(u, source, sigma_mult);
  const double cell = u.domain()->cell_volume();

  BallVolumeReport rep;
  rep.radii = radii;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (double r : radii) {
    std::int64_t count = 0;
    for (NodeIndex x = 0; x < df.dist.size(); ++x) {
      if (df.dist[x] <= r) ++count;
    }
    if (count == 0) throw std::runtime_error("ball_volume_exponent: empty ball at radius " + std::to_string(r));
    rep.counts.push_back(count);
    rep.volumes.push_back(static_cast<double>(count) * cell);
    const double lx = std::log(r), ly = std::log(rep.volumes.back());
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double m = static_cast<double>(radii.size());
  rep.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return rep;
}

GridPtr metric_adapted_box(int n, int m, double vertical_half_extent) {
  const int d = 2 * n;
  std::vector<double> lo(static_cast<size_t>(d), -0.5), hi(static_cast<size_t>(d), 0.5);
  lo[static_cast<size_t>(d - 1)] = -vertical_half_extent;
  hi[static_cast<size_t>(d - 1)] = vertical_half_extent;
  return GridDomain::create(n, lo, hi, std::vector<int>(static_cast<size_t>(d), m));
}

}  // namespace hgraph

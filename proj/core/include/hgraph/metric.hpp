#pragma once

#include <vector>

#include "hgraph/field.hpp"

namespace hgraph {

/// Approximate control distance induced by the projected horizontal fields.
/// Unreached nodes hold +infinity.  snap_error accumulates the per-edge
/// vertical snapping residual along the shortest-path tree (in x_{2n} units).
struct DistanceField {
  GridPtr domain;
  NodeIndex source = -1;
  Eigen::VectorXd dist;
  Eigen::VectorXd snap_error;
  int sigma_mult = 1;          // flow step = sigma_mult * h per axis
  double max_snap_error = 0.0;
};

/// Dijkstra over the lattice graph whose edges are short flows of the
/// projected fields: along field i the walker moves sigma = mult*h_i in
/// coordinate i, with the induced vertical displacement (-sigma x_{i-n+1}
/// for the rotational fields, +sigma u(x) for the last field) snapped to the
/// nearest lattice plane.  Edge weight sigma.
///
/// Precondition (bracket generation of the snapped system): n >= 2, or n = 1
/// with non-constant u; otherwise throws std::invalid_argument.
DistanceField cc_distance(const ScalarField& u, NodeIndex source, int sigma_mult = 1);

/// Multi-source variant: distance to the nearest boundary node.
DistanceField cc_distance_to_boundary(const ScalarField& u, int sigma_mult = 1);

struct BallVolumeReport {
  std::vector<double> radii;
  std::vector<double> volumes;   // node count * cell volume
  std::vector<std::int64_t> counts;
  double slope = 0.0;            // least-squares slope of log V against log r
};

/// Counts metric-ball nodes at the given radii and fits the volume-growth
/// exponent; the homogeneous dimension of the continuum metric is 2n+1.
/// Needs at least 4 radii, all within the domain.
BallVolumeReport ball_volume_exponent(const ScalarField& u, NodeIndex source,
                                      const std::vector<double>& radii, int sigma_mult = 1);

/// A box adapted to the anisotropy of the control metric at scale ~1:
/// unit horizontal extent and vertical half-extent vertical_ratio (vertical
/// displacements grow quadratically in the distance, so resolving the ball
/// geometry on an m^2n lattice needs a much finer vertical pitch).
GridPtr metric_adapted_box(int n, int m, double vertical_half_extent = 0.01);

}  // namespace hgraph

#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include <Eigen/Core>

namespace hgraph {

using NodeIndex = std::int64_t;

/// Axis-aligned box in R^{2n} with a uniform tensor lattice.
///
/// The lattice parameterizes intrinsic graphs over the vertical hyperplane of
/// the Heisenberg group H^n, so the domain dimension is always 2n.  Nodes are
/// stored flat, row-major with axis 1 fastest:
///   flat = i_1 + m_1 * (i_2 + m_2 * (i_3 + ...)).
/// Every node is classified as exactly one of interior / boundary (boundary =
/// extreme index on at least one axis).
class GridDomain {
 public:
  /// `m[k]` is the node count per axis, at least 3 so each axis has an
  /// interior.  Throws std::invalid_argument on malformed input.
  static std::shared_ptr<const GridDomain> create(int n,
                                                  std::vector<double> lo,
                                                  std::vector<double> hi,
                                                  std::vector<int> m);

  /// Unit box [0,1]^{2n} with `m` nodes on every axis.
  static std::shared_ptr<const GridDomain> unit_box(int n, int m);

  int heisenberg_n() const { return n_; }
  int dim() const { return 2 * n_; }          // ambient dimension 2n
  int num_fields() const { return 2 * n_ - 1; }
  NodeIndex num_nodes() const { return num_nodes_; }

  /// The theory behind the lab assumes n > 1; n = 1 stays usable for cheap
  /// tests but callers can surface a warning through this flag.
  bool below_stability_dimension() const { return n_ == 1; }

  const std::vector<int>& shape() const { return m_; }
  const std::vector<double>& low() const { return lo_; }
  const std::vector<double>& high() const { return hi_; }
  const std::vector<double>& spacing() const { return h_; }
  double spacing(int axis) const { return h_[axis]; }

  NodeIndex stride(int axis) const { return strides_[axis]; }
  NodeIndex flat_index(const std::vector<int>& multi) const;
  void unravel(NodeIndex flat, std::vector<int>& multi) const;
  int axis_index(NodeIndex flat, int axis) const {
    return static_cast<int>((flat / strides_[axis]) % m_[axis]);
  }

  double coordinate(NodeIndex flat, int axis) const {
    return lo_[axis] + h_[axis] * axis_index(flat, axis);
  }
  std::vector<double> node(NodeIndex flat) const;

  bool is_boundary(NodeIndex flat) const { return boundary_mask_[static_cast<size_t>(flat)]; }
  const std::vector<NodeIndex>& interior() const { return interior_; }
  const std::vector<NodeIndex>& boundary() const { return boundary_; }

  /// Composite trapezoidal quadrature weight of a node (boundary factors
  /// halved axis by axis).  Interior nodes all share cell_volume().
  double quad_weight(NodeIndex flat) const { return quad_[static_cast<size_t>(flat)]; }
  const Eigen::VectorXd& quad_weights() const { return quad_; }
  double cell_volume() const { return cell_volume_; }
  double box_volume() const { return box_volume_; }
  double max_spacing() const;

  /// Precomputed per-node coordinates of one axis (size num_nodes()).
  const Eigen::VectorXd& coordinates(int axis) const { return coords_[static_cast<size_t>(axis)]; }

  /// Maps node index -> position in interior()/boundary(), -1 when absent.
  const std::vector<NodeIndex>& interior_rank() const { return interior_rank_; }

  bool same_layout(const GridDomain& other) const;

 private:
  GridDomain() = default;

  int n_ = 0;
  std::vector<double> lo_, hi_, h_;
  std::vector<int> m_;
  std::vector<NodeIndex> strides_;
  NodeIndex num_nodes_ = 0;
  std::vector<bool> boundary_mask_;
  std::vector<NodeIndex> interior_, boundary_, interior_rank_;
  Eigen::VectorXd quad_;
  std::vector<Eigen::VectorXd> coords_;
  double cell_volume_ = 0.0, box_volume_ = 0.0;
};

using GridPtr = std::shared_ptr<const GridDomain>;

}  // namespace hgraph

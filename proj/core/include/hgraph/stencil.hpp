#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "hgraph/field.hpp"

namespace hgraph {

/// Second-order centered differences at nodes interior along the axis,
/// first-order one-sided at the two ends.  `Upwind` switches the vertical
/// (axis 2n) part of the drift terms to the one-sided difference selected by
/// the sign of the drift coefficient; it exists for robustness experiments
/// and defaults off.
enum class Upwind { Off, On };

/// Discrete partial derivative along a 0-based axis.
Eigen::VectorXd partial_derivative(const GridDomain& dom, int axis, const Eigen::VectorXd& w);

/// The projected horizontal fields of the intrinsic-graph calculus, 1-based:
///   i in [1, n-1]     : d/dx_i
///   i in [n, 2n-2]    : d/dx_i - x_{i-n+1} d/dx_{2n}
///   i = 2n-1          : d/dx_{2n-1} + u(x) d/dx_{2n}   (u required)
///   i = 2n            : d/dx_{2n}
/// The coefficient u(x) is collocated at the evaluation node.
/// Throws std::out_of_range for invalid i, std::invalid_argument on a missing
/// u or a domain mismatch.
ScalarField apply_field(int i, const ScalarField& w, const ScalarField* u = nullptr,
                        Upwind upwind = Upwind::Off);

/// Intrinsic gradient: component i equals apply_field(i, u, u).
HorizontalGradient horizontal_gradient(const ScalarField& u, Upwind upwind = Upwind::Off);

/// Frozen-coefficient matrix a(p) = I - p p^T / (1 + |p|^2); symmetric with
/// spectrum inside [1/(1+|p|^2), 1].
Eigen::MatrixXd coefficients(const Eigen::VectorXd& p);

/// One stencil row (columns and weights) of a discrete field at a node.
struct StencilRow {
  std::vector<NodeIndex> col;
  std::vector<double> w;
  void clear() { col.clear(); w.clear(); }
  void add(NodeIndex c, double v) { col.push_back(c); w.push_back(v); }
};

/// Row of the partial-derivative stencil at node x.
void partial_row(const GridDomain& dom, int axis, NodeIndex x, StencilRow& out);

/// Row of the field stencil at node x (same conventions as apply_field,
/// always centered/one-sided; the drift coefficient is read from `u` when
/// i = 2n-1).
void field_row(const GridDomain& dom, int i, NodeIndex x, const ScalarField* u, StencilRow& out);

/// Sparse matrix of a discrete field over all nodes.
Eigen::SparseMatrix<double> field_matrix(const GridDomain& dom, int i, const ScalarField* u = nullptr);

/// Deterministic fixed-order pairwise summation.
double pairwise_sum(std::span<const double> x);

/// Quadrature inner product sum q_x a_x b_x with pairwise accumulation.
double quad_dot(const GridDomain& dom, const Eigen::VectorXd& a, const Eigen::VectorXd& b);

/// Quadrature integral sum q_x a_x.
double quad_integral(const GridDomain& dom, const Eigen::VectorXd& a);

}  // namespace hgraph

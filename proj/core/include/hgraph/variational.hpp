#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "hgraph/field.hpp"
#include "hgraph/stencil.hpp"

namespace hgraph {

struct FunctionalValue {
  double value = 0.0;
  std::string quadrature = "trapezoid";
  GridPtr domain;
};

/// Normalized flux A_i = p_i / sqrt(1 + |p|^2); every component has modulus
/// strictly below 1.
struct FluxVector {
  GridPtr domain;
  std::vector<Eigen::VectorXd> component;
};

/// Shared nodewise state of the graph functional: intrinsic gradient p,
/// area integrand W = sqrt(1+|p|^2) and flux F = p/W.
struct GradientState {
  GridPtr domain;
  std::vector<Eigen::VectorXd> p;
  Eigen::VectorXd W;
  std::vector<Eigen::VectorXd> F;
  Eigen::VectorXd vertical_derivative;  // discrete d u / d x_{2n}

  static GradientState compute(const ScalarField& u);
};

/// Intrinsic area of the graph of u: trapezoidal integral of sqrt(1+|p|^2).
FunctionalValue area(const ScalarField& u);

/// area(u) minus the subgraph volume term integral(f*u) for height-independent
/// prescription f (reference level z = 0; a shared reference only shifts the
/// functional by a constant).
FunctionalValue prescribed_functional(const ScalarField& u, const ScalarField& f);

FluxVector flux(const ScalarField& u);

/// Divergence-form mean curvature: sum_i X_i^u(A_i) at interior nodes;
/// boundary entries are a 0 sentinel and never enter residual norms.
ScalarField mean_curvature(const ScalarField& u);

/// Non-divergence form: sum_ij a_ij(p) X_i^u X_j^u u at interior nodes.
ScalarField mean_curvature_nondiv(const ScalarField& u);

/// Exact derivative of the discrete area with respect to the nodal values,
/// as a full-grid vector.  Differentiating through the quadrature makes the
/// FD oracle agree with weak_residual to the oracle's own accuracy.
Eigen::VectorXd area_gradient(const ScalarField& u);

/// Divergence-form curvature realized through the area gradient:
/// -(area_gradient / quad weight) on interior nodes, 0 sentinel on the
/// boundary.  Same continuum operator as mean_curvature; this version is the
/// exact Euler-Lagrange residual of the discrete area, so its linearization
/// is exactly the assembled stability operator.
ScalarField variational_curvature(const ScalarField& u);

/// First variation of the prescribed functional in direction phi:
///   d/ds area(u + s phi) - integral(f phi)
/// realized with the linearized projected fields (the vertical-drift adjoint
/// term enters as A_{2n-1} * phi * d_{2n}u).  phi must vanish on the boundary.
double weak_residual(const ScalarField& u, const ScalarField& phi, const ScalarField& f);

/// d/ds area(u + s phi) without a prescription term; phi unrestricted.
double area_directional_derivative(const ScalarField& u, const ScalarField& phi);

}  // namespace hgraph

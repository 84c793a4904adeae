#pragma once

#include <cstdint>
#include <memory>

#include <Eigen/SparseCore>

#include "hgraph/field.hpp"
#include "hgraph/variational.hpp"

namespace hgraph {

struct AssemblyOptions {
  /// Feeds the triplets to the sparse sum in reversed order; the assembled
  /// operator must be identical, which the solver reproducibility test pins.
  bool reverse_triplet_order = false;
};

/// The three groups of terms of the stability operator, assembled separately:
/// pure second-order block with coefficients a_ij/W, first-order vertical
/// drift couplings proportional to d_{2n}u, and the zero-order multiplier
/// (including the weakly realized d_{2n}(A_{2n-1}) term).  At u = 0 the drift
/// and zero-order parts vanish identically.
struct StabilityParts {
  Eigen::SparseMatrix<double> second_order;
  Eigen::SparseMatrix<double> drift;
  Eigen::SparseMatrix<double> zero_order;
};

/// Sparse Dirichlet-eliminated stability operator L_u.
///
/// Assembled as minus the exact Hessian of the discrete area functional, so
///   <v, L_u v>_Q = -d^2/ds^2 area(u + s v)   exactly (up to roundoff)
/// for v vanishing on the boundary, and L_u is simultaneously the exact
/// Jacobian of the variational curvature residual used by the Newton solver.
/// The operator acts on interior unknowns; boundary contributions fold into
/// the right-hand side through the companion boundary block.
class StabilityOperator {
 public:
  static StabilityOperator assemble(const ScalarField& u, const AssemblyOptions& opts = {});
  static StabilityParts assemble_parts(const ScalarField& u);

  const GridPtr& domain() const { return dom_; }
  std::uint64_t frozen_state_hash() const { return hash_; }

  /// Interior-interior block of the area Hessian (symmetric).
  const Eigen::SparseMatrix<double>& hessian_interior() const { return K_; }
  /// Interior-boundary block (columns indexed by boundary rank).
  const Eigen::SparseMatrix<double>& hessian_boundary() const { return B_; }
  /// Uniform interior quadrature weight (cell volume).
  double interior_weight() const { return q0_; }

  Eigen::Index interior_size() const { return K_.rows(); }

  /// L_u v on interior nodes (uses boundary values of v); boundary output 0.
  ScalarField apply(const ScalarField& v) const;

  /// Index form I(v,v) = -<v, L_u v>_Q; v must vanish on the boundary.
  double index_form(const ScalarField& v) const;
  /// <v, L_u v>_Q = -index_form(v).
  double quadratic_form(const ScalarField& v) const { return -index_form(v); }

  /// Solves L_u v = g in the interior with v = b on the boundary.
  /// Throws std::runtime_error on factorization breakdown.
  ScalarField solve(const ScalarField& g, const ScalarField& b) const;

  /// Reusable factorization of the interior block for repeated solves.
  class Factorization {
   public:
    virtual ~Factorization() = default;
    virtual Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const = 0;
    virtual const char* method() const = 0;
  };
  std::unique_ptr<Factorization> factorize() const;
  ScalarField solve_with(const Factorization& fac, const ScalarField& g, const ScalarField& b) const;

  /// Magnitude scale of the operator: max |diag(-L_u)|.
  double scale() const;

  /// Interior right-hand side vector for L_u v = g, v|boundary = b.
  Eigen::VectorXd interior_rhs(const ScalarField& g, const ScalarField& b) const;
  ScalarField expand_interior(const Eigen::VectorXd& vI, const ScalarField* boundary_data = nullptr) const;
  Eigen::VectorXd restrict_interior(const ScalarField& v) const;

 private:
  GridPtr dom_;
  Eigen::SparseMatrix<double> K_;  // Hessian, interior x interior
  Eigen::SparseMatrix<double> B_;  // Hessian, interior x boundary
  double q0_ = 0.0;
  std::uint64_t hash_ = 0;
};

/// Assembles L_u and evaluates the index form I(v,v) = -<v, L_u v>_Q.
double index_form(const ScalarField& u, const ScalarField& v);

}  // namespace hgraph

#pragma once

#include <map>
#include <vector>

#include <Eigen/Core>

#include "hgraph/field.hpp"

namespace hgraph {

/// Multivariate polynomial in the 2n box coordinates, stored as a sparse
/// monomial map.  Backs the exact-differentiation oracle: all derived fields
/// of polynomial inputs are evaluated in closed form, so the only error in
/// an oracle value is final rounding.
class Polynomial {
 public:
  explicit Polynomial(int nvars) : nvars_(nvars) {}

  static Polynomial zero(int nvars) { return Polynomial(nvars); }
  static Polynomial constant(int nvars, double c);
  static Polynomial variable(int nvars, int axis);  // x_axis, 0-based
  static Polynomial monomial(int nvars, std::vector<int> exps, double c);

  int nvars() const { return nvars_; }
  int total_degree() const;
  bool is_zero() const { return terms_.empty(); }

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(double s) const;

  Polynomial partial(int axis) const;

  double eval(const std::vector<double>& x) const;
  Eigen::VectorXd eval_on(const GridDomain& dom) const;
  ScalarField sample(GridPtr dom) const;

  const std::map<std::vector<int>, double>& terms() const { return terms_; }

 private:
  void add_term(const std::vector<int>& e, double c);

  int nvars_;
  std::map<std::vector<int>, double> terms_;
};

/// Exact projected-field derivative X_i^u w for polynomial w (and u when
/// i = 2n-1); the result is again a polynomial.
Polynomial sym_apply_field(int i, const Polynomial& w, const Polynomial* u, int heisenberg_n);

/// Exact intrinsic gradient of a polynomial graph function.
std::vector<Polynomial> sym_horizontal_gradient(const Polynomial& u, int heisenberg_n);

/// Closed-form pointwise values of the derived curvature fields of a
/// polynomial graph function:
///   nondivergence  M(x) = sum_ij a_ij(p) (X_i^u X_j^u u)(x)
///   divergence     H(x) = M(x) / sqrt(1 + |p|^2)
/// where p = intrinsic gradient at x.  Input degree is capped at 4; higher
/// degrees throw std::domain_error.
struct SymbolicCurvature {
  double mean_curvature;
  double nondivergence;
  double area_integrand;  // sqrt(1 + |p|^2)
  Eigen::VectorXd gradient;
};
SymbolicCurvature sym_curvature_at(const Polynomial& u, int heisenberg_n, const std::vector<double>& x);

/// Grid sampling of the exact mean curvature of a polynomial graph.
ScalarField sym_mean_curvature(const Polynomial& u, GridPtr dom);

}  // namespace hgraph

#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "hgraph/grid.hpp"

namespace hgraph {

/// Grid-sampled real function.  Two fields combine arithmetically only when
/// they live on the same lattice.
class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(GridPtr dom);
  ScalarField(GridPtr dom, Eigen::VectorXd values);

  static ScalarField constant(GridPtr dom, double c);
  /// The coordinate function x -> x_axis (axis is 0-based).
  static ScalarField coordinate(GridPtr dom, int axis);
  static ScalarField from(GridPtr dom, const std::function<double(const std::vector<double>&)>& f);

  const GridPtr& domain() const { return dom_; }
  const Eigen::VectorXd& values() const { return v_; }
  Eigen::VectorXd& values() { return v_; }
  double operator[](NodeIndex x) const { return v_[x]; }
  double& operator[](NodeIndex x) { return v_[x]; }

  bool all_finite() const;
  /// Throws std::invalid_argument when a value is non-finite.
  void require_finite(const char* what) const;

  double max_abs() const;
  double interior_max_abs() const;
  double boundary_max_abs() const;
  /// sup over boundary nodes of |this - other|.
  double boundary_distance(const ScalarField& other) const;
  double min_value() const;
  double interior_min() const;

  void set_boundary(double c);
  void set_boundary(const ScalarField& src);
  bool boundary_is_zero(double tol = 0.0) const;

  ScalarField& operator+=(const ScalarField& o);
  ScalarField& operator-=(const ScalarField& o);
  ScalarField& operator*=(double s);
  friend ScalarField operator+(ScalarField a, const ScalarField& b) { a += b; return a; }
  friend ScalarField operator-(ScalarField a, const ScalarField& b) { a -= b; return a; }
  friend ScalarField operator*(double s, ScalarField a) { a *= s; return a; }

  /// Throws when `other` is not defined on the same lattice.
  void require_same_domain(const ScalarField& other, const char* what) const;

 private:
  GridPtr dom_;
  Eigen::VectorXd v_;
};

/// The (2n-1)-component intrinsic gradient sampled on the lattice.
struct HorizontalGradient {
  GridPtr domain;
  std::vector<Eigen::VectorXd> component;  // ordered i = 1..2n-1

  int num_components() const { return static_cast<int>(component.size()); }
  /// Pointwise Euclidean norm squared of the component vector.
  Eigen::VectorXd squared_norm() const;
};

/// FNV-1a over the raw value bits; identifies the frozen state of a field.
std::uint64_t state_hash(const ScalarField& u);

}  // namespace hgraph

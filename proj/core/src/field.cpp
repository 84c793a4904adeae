#include "hgraph/field.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>

namespace hgraph {

ScalarField::ScalarField(GridPtr dom) : dom_(std::move(dom)) {
  if (!dom_) throw std::invalid_argument("ScalarField: null domain");
  v_ = Eigen::VectorXd::Zero(dom_->num_nodes());
}

ScalarField::ScalarField(GridPtr dom, Eigen::VectorXd values) : dom_(std::move(dom)), v_(std::move(values)) {
  if (!dom_) throw std::invalid_argument("ScalarField: null domain");
  if (v_.size() != dom_->num_nodes()) throw std::invalid_argument("ScalarField: value vector size mismatch");
}

ScalarField ScalarField::constant(GridPtr dom, double c) {
  ScalarField f(std::move(dom));
  f.v_.setConstant(c);
  return f;
}

ScalarField ScalarField::coordinate(GridPtr dom, int axis) {
  if (axis < 0 || axis >= dom->dim()) throw std::invalid_argument("ScalarField::coordinate: axis out of range");
  ScalarField f(dom);
  f.v_ = dom->coordinates(axis);
  return f;
}

ScalarField ScalarField::from(GridPtr dom, const std::function<double(const std::vector<double>&)>& f) {
  ScalarField out(dom);
  for (NodeIndex x = 0; x < dom->num_nodes(); ++x) out.v_[x] = f(dom->node(x));
  return out;
}

bool ScalarField::all_finite() const {
  for (Eigen::Index i = 0; i < v_.size(); ++i) {
    if (!std::isfinite(v_[i])) return false;
  }
  return true;
}

void ScalarField::require_finite(const char* what) const {
  if (!all_finite()) throw std::invalid_argument(std::string(what) + ": field has non-finite values");
}

double ScalarField::max_abs() const { return v_.size() ? v_.cwiseAbs().maxCoeff() : 0.0; }

double ScalarField::interior_max_abs() const {
  double m = 0.0;
  for (NodeIndex x : dom_->interior()) m = std::max(m, std::abs(v_[x]));
  return m;
}

double ScalarField::boundary_max_abs() const {
  double m = 0.0;
  for (NodeIndex x : dom_->boundary()) m = std::max(m, std::abs(v_[x]));
  return m;
}

double ScalarField::boundary_distance(const ScalarField& other) const {
  require_same_domain(other, "boundary_distance");
  double m = 0.0;
  for (NodeIndex x : dom_->boundary()) m = std::max(m, std::abs(v_[x] - other.v_[x]));
  return m;
}

double ScalarField::min_value() const { return v_.minCoeff(); }

double ScalarField::interior_min() const {
  double m = std::numeric_limits<double>::infinity();
  for (NodeIndex x : dom_->interior()) m = std::min(m, v_[x]);
  return m;
}

void ScalarField::set_boundary(double c) {
  for (NodeIndex x : dom_->boundary()) v_[x] = c;
}

void ScalarField::set_boundary(const ScalarField& src) {
  require_same_domain(src, "set_boundary");
  for (NodeIndex x : dom_->boundary()) v_[x] = src.v_[x];
}

bool ScalarField::boundary_is_zero(double tol) const {
  for (NodeIndex x : dom_->boundary()) {
    if (std::abs(v_[x]) > tol) return false;
  }
  return true;
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
  require_same_domain(o, "operator+");
  v_ += o.v_;
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
  require_same_domain(o, "operator-");
  v_ -= o.v_;
  return *this;
}

ScalarField& ScalarField::operator*=(double s) {
  v_ *= s;
  return *this;
}

void ScalarField::require_same_domain(const ScalarField& other, const char* what) const {
  if (dom_ == other.dom_) return;
  if (dom_ && other.dom_ && dom_->same_layout(*other.dom_)) return;
  throw std::invalid_argument(std::string(what) + ": fields live on different domains");
}

Eigen::VectorXd HorizontalGradient::squared_norm() const {
  Eigen::VectorXd s = Eigen::VectorXd::Zero(domain->num_nodes());
  for (const auto& c : component) s.array() += c.array().square();
  return s;
}

std::uint64_t state_hash(const ScalarField& u) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t bits) {
    for (int b = 0; b < 8; ++b) {
      h ^= (bits >> (8 * b)) & 0xffull;
      h *= 1099511628211ull;
    }
  };
  const auto& v = u.values();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    std::uint64_t bits;
    static_assert(sizeof(double) == sizeof(std::uint64_t));
    std::memcpy(&bits, &v[i], sizeof(bits));
    mix(bits);
  }
  return h;
}

}  // namespace hgraph

#include "hgraph/variational.hpp"

#include <cmath>
#include <stdexcept>

namespace hgraph {

GradientState GradientState::compute(const ScalarField& u) {
  u.require_finite("GradientState");
  GradientState s;
  s.domain = u.domain();
  const GridDomain& dom = *s.domain;
  const int nf = dom.num_fields();
  s.p.reserve(static_cast<size_t>(nf));
  for (int i = 1; i <= nf; ++i) s.p.push_back(apply_field(i, u, &u).values());
  s.vertical_derivative = partial_derivative(dom, dom.dim() - 1, u.values());

  Eigen::VectorXd norm2 = Eigen::VectorXd::Zero(dom.num_nodes());
  for (const auto& pi : s.p) norm2.array() += pi.array().square();
  s.W = (norm2.array() + 1.0).sqrt();
  s.F.reserve(static_cast<size_t>(nf));
  for (const auto& pi : s.p) s.F.push_back(pi.cwiseQuotient(s.W));
  return s;
}

FunctionalValue area(const ScalarField& u) {
  const GradientState s = GradientState::compute(u);
  FunctionalValue out;
  out.domain = u.domain();
  out.value = quad_integral(*u.domain(), s.W);
  return out;
}

FunctionalValue prescribed_functional(const ScalarField& u, const ScalarField& f) {
  u.require_same_domain(f, "prescribed_functional");
  f.require_finite("prescribed_functional");
  FunctionalValue out = area(u);
  out.value -= quad_dot(*u.domain(), f.values(), u.values());
  return out;
}

FluxVector flux(const ScalarField& u) {
  const GradientState s = GradientState::compute(u);
  return FluxVector{u.domain(), s.F};
}

ScalarField mean_curvature(const ScalarField& u) {
  const GridDomain& dom = *u.domain();
  const GradientState s = GradientState::compute(u);
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(dom.num_nodes());
  for (int i = 1; i <= dom.num_fields(); ++i) {
    ScalarField Fi(u.domain(), s.F[static_cast<size_t>(i - 1)]);
    sum += apply_field(i, Fi, &u).values();
  }
  ScalarField out(u.domain());
  for (NodeIndex x : dom.interior()) out[x] = sum[x];
  return out;
}

ScalarField mean_curvature_nondiv(const ScalarField& u) {
  const GridDomain& dom = *u.domain();
  const GradientState s = GradientState::compute(u);
  const int nf = dom.num_fields();

  Eigen::VectorXd denom = s.W.array().square();  // 1 + |p|^2
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(dom.num_nodes());
  for (int i = 1; i <= nf; ++i) {
    for (int j = 1; j <= nf; ++j) {
      ScalarField pj(u.domain(), s.p[static_cast<size_t>(j - 1)]);
      const Eigen::VectorXd xij = apply_field(i, pj, &u).values();
      Eigen::VectorXd aij =
          -(s.p[static_cast<size_t>(i - 1)].cwiseProduct(s.p[static_cast<size_t>(j - 1)])).cwiseQuotient(denom);
      if (i == j) aij.array() += 1.0;
      sum += aij.cwiseProduct(xij);
    }
  }
  ScalarField out(u.domain());
  for (NodeIndex x : dom.interior()) out[x] = sum[x];
  return out;
}

Eigen::VectorXd area_gradient(const ScalarField& u) {
  const GridDomain& dom = *u.domain();
  const GradientState s = GradientState::compute(u);
  const int nf = dom.num_fields();
  const Eigen::VectorXd& q = dom.quad_weights();

  Eigen::VectorXd grad = Eigen::VectorXd::Zero(dom.num_nodes());
  StencilRow row;
  for (NodeIndex x = 0; x < dom.num_nodes(); ++x) {
    for (int i = 1; i <= nf; ++i) {
      const double c = q[x] * s.F[static_cast<size_t>(i - 1)][x];
      if (c == 0.0) continue;
      row.clear();
      field_row(dom, i, x, &u, row);
      for (size_t k = 0; k < row.col.size(); ++k) grad[row.col[k]] += c * row.w[k];
    }
    // dependence of the last projected field on its own drift coefficient
    grad[x] += q[x] * s.F[static_cast<size_t>(nf - 1)][x] * s.vertical_derivative[x];
  }
  return grad;
}

ScalarField variational_curvature(const ScalarField& u) {
  const GridDomain& dom = *u.domain();
  const Eigen::VectorXd grad = area_gradient(u);
  ScalarField out(u.domain());
  const double q0 = dom.cell_volume();
  for (NodeIndex x : dom.interior()) out[x] = -grad[x] / q0;
  return out;
}

double area_directional_derivative(const ScalarField& u, const ScalarField& phi) {
  u.require_same_domain(phi, "area_directional_derivative");
  phi.require_finite("area_directional_derivative");
  const GridDomain& dom = *u.domain();
  const GradientState s = GradientState::compute(u);
  const int nf = dom.num_fields();

  Eigen::VectorXd integrand = Eigen::VectorXd::Zero(dom.num_nodes());
  for (int i = 1; i <= nf; ++i) {
    const Eigen::VectorXd dpi = apply_field(i, phi, &u).values();
    integrand += s.F[static_cast<size_t>(i - 1)].cwiseProduct(dpi);
  }
  integrand += s.F[static_cast<size_t>(nf - 1)].cwiseProduct(phi.values()).cwiseProduct(s.vertical_derivative);
  return quad_integral(dom, integrand);
}

double weak_residual(const ScalarField& u, const ScalarField& phi, const ScalarField& f) {
  if (!phi.boundary_is_zero()) {
    throw std::invalid_argument("weak_residual: test function must vanish on the boundary");
  }
  u.require_same_domain(f, "weak_residual");
  return area_directional_derivative(u, phi) - quad_dot(*u.domain(), f.values(), phi.values());
}

}  // namespace hgraph

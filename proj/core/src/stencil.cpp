#include "hgraph/stencil.hpp"

#include <stdexcept>
#include <string>

namespace hgraph {

namespace {

// Applies d/dx_axis to w, optionally scaled nodewise by coeff, accumulating
// into out.  Upwind chooses the one-sided difference by sign(coeff).
void accumulate_partial(const GridDomain& dom, int axis, const Eigen::VectorXd& w,
                        const Eigen::VectorXd* coeff, Upwind upwind, Eigen::VectorXd& out) {
  const NodeIndex s = dom.stride(axis);
  const int m = dom.shape()[axis];
  const double h = dom.spacing(axis);
  const NodeIndex N = dom.num_nodes();
  for (NodeIndex x = 0; x < N; ++x) {
    const int i = dom.axis_index(x, axis);
    double d;
    if (i == 0) {
      d = (w[x + s] - w[x]) / h;
    } else if (i == m - 1) {
      d = (w[x] - w[x - s]) / h;
    } else if (coeff && upwind == Upwind::On) {
      const double c = (*coeff)[x];
      d = c >= 0.0 ? (w[x] - w[x - s]) / h : (w[x + s] - w[x]) / h;
    } else {
      d = (w[x + s] - w[x - s]) / (2.0 * h);
    }
    out[x] += coeff ? (*coeff)[x] * d : d;
  }
}

void check_field_index(const GridDomain& dom, int i) {
  if (i < 1 || i > dom.dim()) {
    throw std::out_of_range("apply_field: field index " + std::to_string(i) + " outside 1.." +
                            std::to_string(dom.dim()));
  }
}

}  // namespace

Eigen::VectorXd partial_derivative(const GridDomain& dom, int axis, const Eigen::VectorXd& w) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dom.num_nodes());
  accumulate_partial(dom, axis, w, nullptr, Upwind::Off, out);
  return out;
}

ScalarField apply_field(int i, const ScalarField& w, const ScalarField* u, Upwind upwind) {
  const GridDomain& dom = *w.domain();
  check_field_index(dom, i);
  const int n = dom.heisenberg_n();
  const int d = dom.dim();
  if (i == 2 * n - 1) {
    if (!u) throw std::invalid_argument("apply_field: the last projected field needs the graph function u");
    w.require_same_domain(*u, "apply_field");
  }

  Eigen::VectorXd out = Eigen::VectorXd::Zero(dom.num_nodes());
  if (i <= n - 1) {
    accumulate_partial(dom, i - 1, w.values(), nullptr, Upwind::Off, out);
  } else if (i <= 2 * n - 2) {
    accumulate_partial(dom, i - 1, w.values(), nullptr, Upwind::Off, out);
    const Eigen::VectorXd c = -dom.coordinates(i - n);
    accumulate_partial(dom, d - 1, w.values(), &c, upwind, out);
  } else if (i == 2 * n - 1) {
    accumulate_partial(dom, d - 2, w.values(), nullptr, Upwind::Off, out);
    accumulate_partial(dom, d - 1, w.values(), &u->values(), upwind, out);
  } else {  // i == 2n
    accumulate_partial(dom, d - 1, w.values(), nullptr, Upwind::Off, out);
  }
  return ScalarField(w.domain(), std::move(out));
}

HorizontalGradient horizontal_gradient(const ScalarField& u, Upwind upwind) {
  u.require_finite("horizontal_gradient");
  HorizontalGradient g;
  g.domain = u.domain();
  const int nf = u.domain()->num_fields();
  g.component.reserve(static_cast<size_t>(nf));
  for (int i = 1; i <= nf; ++i) {
    g.component.push_back(apply_field(i, u, &u, upwind).values());
  }
  return g;
}

Eigen::MatrixXd coefficients(const Eigen::VectorXd& p) {
  if (!p.allFinite()) throw std::invalid_argument("coefficients: p has non-finite entries");
  const double denom = 1.0 + p.squaredNorm();
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(p.size(), p.size());
  a.noalias() -= (p * p.transpose()) / denom;
  return a;
}

void partial_row(const GridDomain& dom, int axis, NodeIndex x, StencilRow& out) {
  const NodeIndex s = dom.stride(axis);
  const int m = dom.shape()[axis];
  const double h = dom.spacing(axis);
  const int i = dom.axis_index(x, axis);
  if (i == 0) {
    out.add(x + s, 1.0 / h);
    out.add(x, -1.0 / h);
  } else if (i == m - 1) {
    out.add(x, 1.0 / h);
    out.add(x - s, -1.0 / h);
  } else {
    out.add(x + s, 0.5 / h);
    out.add(x - s, -0.5 / h);
  }
}

void field_row(const GridDomain& dom, int i, NodeIndex x, const ScalarField* u, StencilRow& out) {
  check_field_index(dom, i);
  const int n = dom.heisenberg_n();
  const int d = dom.dim();
  out.clear();
  StencilRow tmp;
  if (i <= n - 1) {
    partial_row(dom, i - 1, x, out);
    return;
  }
  if (i <= 2 * n - 2) {
    partial_row(dom, i - 1, x, out);
    const double c = -dom.coordinates(i - n)[x];
    partial_row(dom, d - 1, x, tmp);
    for (size_t k = 0; k < tmp.col.size(); ++k) out.add(tmp.col[k], c * tmp.w[k]);
    return;
  }
  if (i == 2 * n - 1) {
    if (!u) throw std::invalid_argument("field_row: the last projected field needs u");
    partial_row(dom, d - 2, x, out);
    const double c = (*u)[x];
    partial_row(dom, d - 1, x, tmp);
    for (size_t k = 0; k < tmp.col.size(); ++k) out.add(tmp.col[k], c * tmp.w[k]);
    return;
  }
  partial_row(dom, d - 1, x, out);
}

Eigen::SparseMatrix<double> field_matrix(const GridDomain& dom, int i, const ScalarField* u) {
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<size_t>(dom.num_nodes()) * 4);
  StencilRow row;
  for (NodeIndex x = 0; x < dom.num_nodes(); ++x) {
    row.clear();
    field_row(dom, i, x, u, row);
    for (size_t k = 0; k < row.col.size(); ++k) {
      trips.emplace_back(static_cast<int>(x), static_cast<int>(row.col[k]), row.w[k]);
    }
  }
  Eigen::SparseMatrix<double> M(static_cast<int>(dom.num_nodes()), static_cast<int>(dom.num_nodes()));
  M.setFromTriplets(trips.begin(), trips.end());
  return M;
}

double pairwise_sum(std::span<const double> x) {
  if (x.size() <= 32) {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
  }
  const size_t half = x.size() / 2;
  return pairwise_sum(x.subspan(0, half)) + pairwise_sum(x.subspan(half));
}

double quad_dot(const GridDomain& dom, const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  Eigen::VectorXd prod = dom.quad_weights().cwiseProduct(a).cwiseProduct(b);
  return pairwise_sum(std::span<const double>(prod.data(), static_cast<size_t>(prod.size())));
}

double quad_integral(const GridDomain& dom, const Eigen::VectorXd& a) {
  Eigen::VectorXd prod = dom.quad_weights().cwiseProduct(a);
  return pairwise_sum(std::span<const double>(prod.data(), static_cast<size_t>(prod.size())));
}

}  // namespace hgraph

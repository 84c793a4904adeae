#include "hgraph/polynomial.hpp"

#include <cmath>
#include <stdexcept>

namespace hgraph {

namespace {
constexpr int kMaxOracleDegree = 4;
}

Polynomial Polynomial::constant(int nvars, double c) {
  Polynomial p(nvars);
  if (c != 0.0) p.terms_[std::vector<int>(static_cast<size_t>(nvars), 0)] = c;
  return p;
}

Polynomial Polynomial::variable(int nvars, int axis) {
  if (axis < 0 || axis >= nvars) throw std::invalid_argument("Polynomial::variable: axis out of range");
  std::vector<int> e(static_cast<size_t>(nvars), 0);
  e[static_cast<size_t>(axis)] = 1;
  Polynomial p(nvars);
  p.terms_[e] = 1.0;
  return p;
}

Polynomial Polynomial::monomial(int nvars, std::vector<int> exps, double c) {
  if (exps.size() != static_cast<size_t>(nvars)) throw std::invalid_argument("Polynomial::monomial: exponent length");
  for (int e : exps) {
    if (e < 0) throw std::invalid_argument("Polynomial::monomial: negative exponent");
  }
  Polynomial p(nvars);
  if (c != 0.0) p.terms_[std::move(exps)] = c;
  return p;
}

int Polynomial::total_degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int k : e) s += k;
    d = std::max(d, s);
  }
  return d;
}

void Polynomial::add_term(const std::vector<int>& e, double c) {
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    if (c != 0.0) terms_[e] = c;
  } else {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  Polynomial r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial r(nvars_);
  std::vector<int> e(static_cast<size_t>(nvars_));
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      for (size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

Polynomial Polynomial::operator*(double s) const {
  Polynomial r(nvars_);
  if (s == 0.0) return r;
  for (const auto& [e, c] : terms_) r.terms_[e] = c * s;
  return r;
}

Polynomial Polynomial::partial(int axis) const {
  if (axis < 0 || axis >= nvars_) throw std::invalid_argument("Polynomial::partial: axis out of range");
  Polynomial r(nvars_);
  for (const auto& [e, c] : terms_) {
    const int k = e[static_cast<size_t>(axis)];
    if (k == 0) continue;
    std::vector<int> e2 = e;
    e2[static_cast<size_t>(axis)] = k - 1;
    r.add_term(e2, c * k);
  }
  return r;
}

double Polynomial::eval(const std::vector<double>& x) const {
  if (x.size() != static_cast<size_t>(nvars_)) throw std::invalid_argument("Polynomial::eval: point dimension");
  double s = 0.0;
  for (const auto& [e, c] : terms_) {
    double t = c;
    for (size_t k = 0; k < e.size(); ++k) {
      for (int j = 0; j < e[k]; ++j) t *= x[k];
    }
    s += t;
  }
  return s;
}

Eigen::VectorXd Polynomial::eval_on(const GridDomain& dom) const {
  if (dom.dim() != nvars_) throw std::invalid_argument("Polynomial::eval_on: dimension mismatch");
  Eigen::VectorXd out(dom.num_nodes());
  std::vector<double> x(static_cast<size_t>(nvars_));
  for (NodeIndex i = 0; i < dom.num_nodes(); ++i) {
    for (int k = 0; k < nvars_; ++k) x[static_cast<size_t>(k)] = dom.coordinate(i, k);
    out[i] = eval(x);
  }
  return out;
}

ScalarField Polynomial::sample(GridPtr dom) const { return ScalarField(dom, eval_on(*dom)); }

Polynomial sym_apply_field(int i, const Polynomial& w, const Polynomial* u, int heisenberg_n) {
  const int n = heisenberg_n;
  const int d = 2 * n;
  if (w.nvars() != d) throw std::invalid_argument("sym_apply_field: polynomial dimension mismatch");
  if (i < 1 || i > d) throw std::out_of_range("sym_apply_field: field index out of range");
  if (i <= n - 1) return w.partial(i - 1);
  if (i <= 2 * n - 2) {
    return w.partial(i - 1) - Polynomial::variable(d, i - n) * w.partial(d - 1);
  }
  if (i == 2 * n - 1) {
    if (!u) throw std::invalid_argument("sym_apply_field: last projected field needs u");
    return w.partial(d - 2) + (*u) * w.partial(d - 1);
  }
  return w.partial(d - 1);
}

std::vector<Polynomial> sym_horizontal_gradient(const Polynomial& u, int heisenberg_n) {
  std::vector<Polynomial> g;
  const int nf = 2 * heisenberg_n - 1;
  g.reserve(static_cast<size_t>(nf));
  for (int i = 1; i <= nf; ++i) g.push_back(sym_apply_field(i, u, &u, heisenberg_n));
  return g;
}

SymbolicCurvature sym_curvature_at(const Polynomial& u, int heisenberg_n, const std::vector<double>& x) {
  if (u.total_degree() > kMaxOracleDegree) {
    throw std::domain_error("symbolic oracle: polynomial degree above the supported cap of 4");
  }
  const int nf = 2 * heisenberg_n - 1;
  const auto p = sym_horizontal_gradient(u, heisenberg_n);

  SymbolicCurvature out;
  out.gradient.resize(nf);
  double norm2 = 0.0;
  for (int i = 0; i < nf; ++i) {
    out.gradient[i] = p[static_cast<size_t>(i)].eval(x);
    norm2 += out.gradient[i] * out.gradient[i];
  }
  const double W = std::sqrt(1.0 + norm2);
  out.area_integrand = W;

  // M = sum_ij a_ij(p) X_i^u(p_j); each X_i^u(p_j) is again polynomial.
  double M = 0.0;
  for (int i = 1; i <= nf; ++i) {
    for (int j = 1; j <= nf; ++j) {
      const Polynomial xij = sym_apply_field(i, p[static_cast<size_t>(j - 1)], &u, heisenberg_n);
      const double aij = (i == j ? 1.0 : 0.0) - out.gradient[i - 1] * out.gradient[j - 1] / (1.0 + norm2);
      M += aij * xij.eval(x);
    }
  }
  out.nondivergence = M;
  out.mean_curvature = M / W;
  return out;
}

ScalarField sym_mean_curvature(const Polynomial& u, GridPtr dom) {
  ScalarField out(dom);
  std::vector<double> x(static_cast<size_t>(dom->dim()));
  for (NodeIndex i = 0; i < dom->num_nodes(); ++i) {
    for (int k = 0; k < dom->dim(); ++k) x[static_cast<size_t>(k)] = dom->coordinate(i, k);
    out[i] = sym_curvature_at(u, dom->heisenberg_n(), x).mean_curvature;
  }
  return out;
}

}  // namespace hgraph

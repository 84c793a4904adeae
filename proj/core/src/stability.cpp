#include "hgraph/stability.hpp"

#include <algorithm>
#include <stdexcept>

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include "hgraph/stencil.hpp"

namespace hgraph {

namespace {

using Trip = Eigen::Triplet<double>;

struct NodeRows {
  std::vector<StencilRow> rows;  // field stencil rows, i = 1..2n-1
  StencilRow vertical;           // d/dx_{2n} stencil row
};

void gather_rows(const GridDomain& dom, const ScalarField& u, NodeIndex x, NodeRows& nr) {
  const int nf = dom.num_fields();
  nr.rows.resize(static_cast<size_t>(nf));
  for (int i = 1; i <= nf; ++i) {
    nr.rows[static_cast<size_t>(i - 1)].clear();
    field_row(dom, i, x, &u, nr.rows[static_cast<size_t>(i - 1)]);
  }
  nr.vertical.clear();
  partial_row(dom, dom.dim() - 1, x, nr.vertical);
}

// Assembles the three Hessian parts as triplet lists over full-grid indices.
void build_triplets(const ScalarField& u, std::vector<Trip>& second, std::vector<Trip>& drift,
                    std::vector<Trip>& zero) {
  const GridDomain& dom = *u.domain();
  const GradientState st = GradientState::compute(u);
  const int nf = dom.num_fields();
  const Eigen::VectorXd& q = dom.quad_weights();

  NodeRows nr;
  std::vector<double> aW(static_cast<size_t>(nf * nf));
  for (NodeIndex x = 0; x < dom.num_nodes(); ++x) {
    gather_rows(dom, u, x, nr);
    const double W = st.W[x];
    const double denom = W * W;
    for (int i = 0; i < nf; ++i) {
      for (int j = 0; j < nf; ++j) {
        const double a = (i == j ? 1.0 : 0.0) - st.p[static_cast<size_t>(i)][x] * st.p[static_cast<size_t>(j)][x] / denom;
        aW[static_cast<size_t>(i * nf + j)] = a / W;
      }
    }
    const double m = st.vertical_derivative[x];
    const double qx = q[x];

    // second-order divergence-form block
    for (int i = 0; i < nf; ++i) {
      const auto& Ri = nr.rows[static_cast<size_t>(i)];
      for (int j = 0; j < nf; ++j) {
        const double c = qx * aW[static_cast<size_t>(i * nf + j)];
        const auto& Rj = nr.rows[static_cast<size_t>(j)];
        for (size_t a = 0; a < Ri.col.size(); ++a) {
          for (size_t b = 0; b < Rj.col.size(); ++b) {
            second.emplace_back(static_cast<int>(Ri.col[a]), static_cast<int>(Rj.col[b]),
                                c * Ri.w[a] * Rj.w[b]);
          }
        }
      }
    }

    // first-order drift couplings: the linearized last field picks up the
    // multiplier (d_{2n}u) v at the node itself
    if (m != 0.0) {
      for (int i = 0; i < nf; ++i) {
        const double c = qx * aW[static_cast<size_t>(i * nf + (nf - 1))] * m;
        const auto& Ri = nr.rows[static_cast<size_t>(i)];
        for (size_t a = 0; a < Ri.col.size(); ++a) {
          drift.emplace_back(static_cast<int>(Ri.col[a]), static_cast<int>(x), c * Ri.w[a]);
          drift.emplace_back(static_cast<int>(x), static_cast<int>(Ri.col[a]), c * Ri.w[a]);
        }
      }
      // quadratic drift-drift coupling (zero order)
      zero.emplace_back(static_cast<int>(x), static_cast<int>(x),
                        qx * aW[static_cast<size_t>(nf * nf - 1)] * m * m);
    }

    // weakly realized vertical derivative of the last flux component
    const double cF = qx * st.F[static_cast<size_t>(nf - 1)][x];
    if (cF != 0.0) {
      for (size_t a = 0; a < nr.vertical.col.size(); ++a) {
        zero.emplace_back(static_cast<int>(x), static_cast<int>(nr.vertical.col[a]), cF * nr.vertical.w[a]);
        zero.emplace_back(static_cast<int>(nr.vertical.col[a]), static_cast<int>(x), cF * nr.vertical.w[a]);
      }
    }
  }
}

Eigen::SparseMatrix<double> from_triplets(const GridDomain& dom, std::vector<Trip>& trips, bool reversed) {
  if (reversed) std::reverse(trips.begin(), trips.end());
  Eigen::SparseMatrix<double> M(static_cast<int>(dom.num_nodes()), static_cast<int>(dom.num_nodes()));
  M.setFromTriplets(trips.begin(), trips.end());
  return M;
}

// Splits a full-grid symmetric matrix into interior x interior and
// interior x boundary blocks using the domain's rank maps.
void split_blocks(const GridDomain& dom, const Eigen::SparseMatrix<double>& H,
                  Eigen::SparseMatrix<double>& K, Eigen::SparseMatrix<double>& B) {
  const auto& rank = dom.interior_rank();
  const int nI = static_cast<int>(dom.interior().size());
  const int nB = static_cast<int>(dom.boundary().size());
  std::vector<Trip> tk, tb;
  tk.reserve(static_cast<size_t>(H.nonZeros()));
  for (int outer = 0; outer < H.outerSize(); ++outer) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(H, outer); it; ++it) {
      const NodeIndex r = it.row(), c = it.col();
      const NodeIndex rr = rank[static_cast<size_t>(r)];
      if (rr < 0) continue;  // boundary row: Dirichlet-eliminated
      const NodeIndex cc = rank[static_cast<size_t>(c)];
      if (cc >= 0) {
        tk.emplace_back(static_cast<int>(rr), static_cast<int>(cc), it.value());
      } else {
        tb.emplace_back(static_cast<int>(rr), static_cast<int>(-1 - cc), it.value());
      }
    }
  }
  K.resize(nI, nI);
  K.setFromTriplets(tk.begin(), tk.end());
  B.resize(nI, nB);
  B.setFromTriplets(tb.begin(), tb.end());
}

class LDLTFac final : public StabilityOperator::Factorization {
 public:
  explicit LDLTFac(const Eigen::SparseMatrix<double>& K) { solver_.compute(K); ok_ = solver_.info() == Eigen::Success; }
  bool ok() const { return ok_; }
  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const override {
    Eigen::VectorXd x = solver_.solve(rhs);
    if (solver_.info() != Eigen::Success) throw std::runtime_error("stability solve: LDLT back-substitution failed");
    return x;
  }
  const char* method() const override { return "ldlt"; }

 private:
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver_;
  bool ok_ = false;
};

class LUFac final : public StabilityOperator::Factorization {
 public:
  explicit LUFac(const Eigen::SparseMatrix<double>& K) {
    solver_.compute(K);
    ok_ = solver_.info() == Eigen::Success;
  }
  bool ok() const { return ok_; }
  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const override {
    Eigen::VectorXd x = solver_.solve(rhs);
    if (solver_.info() != Eigen::Success) throw std::runtime_error("stability solve: LU back-substitution failed");
    return x;
  }
  const char* method() const override { return "sparselu"; }

 private:
  Eigen::SparseLU<Eigen::SparseMatrix<double>> solver_;
  bool ok_ = false;
};

}  // namespace

StabilityOperator StabilityOperator::assemble(const ScalarField& u, const AssemblyOptions& opts) {
  const GridDomain& dom = *u.domain();
  std::vector<Trip> t2, t1, t0;
  build_triplets(u, t2, t1, t0);
  t2.insert(t2.end(), t1.begin(), t1.end());
  t2.insert(t2.end(), t0.begin(), t0.end());
  const Eigen::SparseMatrix<double> H = from_triplets(dom, t2, opts.reverse_triplet_order);

  StabilityOperator op;
  op.dom_ = u.domain();
  op.q0_ = dom.cell_volume();
  op.hash_ = state_hash(u);
  split_blocks(dom, H, op.K_, op.B_);
  return op;
}

StabilityParts StabilityOperator::assemble_parts(const ScalarField& u) {
  const GridDomain& dom = *u.domain();
  std::vector<Trip> t2, t1, t0;
  build_triplets(u, t2, t1, t0);
  StabilityParts parts;
  parts.second_order = from_triplets(dom, t2, false);
  parts.drift = from_triplets(dom, t1, false);
  parts.zero_order = from_triplets(dom, t0, false);
  return parts;
}

ScalarField StabilityOperator::apply(const ScalarField& v) const {
  v.require_same_domain(ScalarField(dom_), "StabilityOperator::apply");
  const Eigen::VectorXd vI = restrict_interior(v);
  Eigen::VectorXd vB(dom_->boundary().size());
  for (size_t k = 0; k < dom_->boundary().size(); ++k) vB[static_cast<Eigen::Index>(k)] = v[dom_->boundary()[k]];
  const Eigen::VectorXd out = -(K_ * vI + B_ * vB) / q0_;
  ScalarField res(dom_);
  const auto& interior = dom_->interior();
  for (size_t k = 0; k < interior.size(); ++k) res[interior[k]] = out[static_cast<Eigen::Index>(k)];
  return res;
}

double StabilityOperator::index_form(const ScalarField& v) const {
  if (!v.boundary_is_zero()) {
    throw std::invalid_argument("index_form: test function must vanish on the boundary");
  }
  const Eigen::VectorXd vI = restrict_interior(v);
  return vI.dot(K_ * vI);
}

Eigen::VectorXd StabilityOperator::interior_rhs(const ScalarField& g, const ScalarField& b) const {
  const auto& interior = dom_->interior();
  Eigen::VectorXd gI(interior.size());
  for (size_t k = 0; k < interior.size(); ++k) gI[static_cast<Eigen::Index>(k)] = g[interior[k]];
  Eigen::VectorXd bB(dom_->boundary().size());
  for (size_t k = 0; k < dom_->boundary().size(); ++k) bB[static_cast<Eigen::Index>(k)] = b[dom_->boundary()[k]];
  return -q0_ * gI - B_ * bB;
}

ScalarField StabilityOperator::expand_interior(const Eigen::VectorXd& vI, const ScalarField* boundary_data) const {
  ScalarField out(dom_);
  const auto& interior = dom_->interior();
  for (size_t k = 0; k < interior.size(); ++k) out[interior[k]] = vI[static_cast<Eigen::Index>(k)];
  if (boundary_data) {
    for (NodeIndex x : dom_->boundary()) out[x] = (*boundary_data)[x];
  }
  return out;
}

Eigen::VectorXd StabilityOperator::restrict_interior(const ScalarField& v) const {
  const auto& interior = dom_->interior();
  Eigen::VectorXd vI(interior.size());
  for (size_t k = 0; k < interior.size(); ++k) vI[static_cast<Eigen::Index>(k)] = v[interior[k]];
  return vI;
}

std::unique_ptr<StabilityOperator::Factorization> StabilityOperator::factorize() const {
  auto ldlt = std::make_unique<LDLTFac>(K_);
  if (ldlt->ok()) return ldlt;
  auto lu = std::make_unique<LUFac>(K_);
  if (lu->ok()) return lu;
  throw std::runtime_error("stability operator: sparse factorization breakdown");
}

ScalarField StabilityOperator::solve(const ScalarField& g, const ScalarField& b) const {
  auto fac = factorize();
  return solve_with(*fac, g, b);
}

ScalarField StabilityOperator::solve_with(const Factorization& fac, const ScalarField& g,
                                          const ScalarField& b) const {
  const Eigen::VectorXd vI = fac.solve(interior_rhs(g, b));
  return expand_interior(vI, &b);
}

double StabilityOperator::scale() const {
  double s = 0.0;
  for (int k = 0; k < K_.outerSize(); ++k) {
    const double d = K_.coeff(k, k);
    s = std::max(s, std::abs(d));
  }
  return s / q0_;
}

double index_form(const ScalarField& u, const ScalarField& v) {
  return StabilityOperator::assemble(u).index_form(v);
}

}  // namespace hgraph

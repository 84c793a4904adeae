#include "hgraph/eigensolve.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/SparseLU>

namespace hgraph {

namespace {

Eigen::VectorXd deterministic_unit_vector(Eigen::Index n, unsigned seed) {
  std::mt19937_64 rng(seed);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    // uniform in [-1, 1) from the top 53 bits; avoids distribution
    // implementation differences across standard libraries
    const double t = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    v[i] = 2.0 * t - 1.0;
  }
  v.normalize();
  return v;
}

SpectralResult pack_result(const StabilityOperator& op, const Eigen::SparseMatrix<double>& A,
                           double lambda, Eigen::VectorXd vI, const std::string& method, double tol) {
  vI.normalize();
  SpectralResult r;
  r.lambda1 = lambda;
  r.residual = (A * vI - lambda * vI).norm();
  r.method = method;
  const double scale = std::max(op.scale(), 1.0);
  r.converged = r.residual <= tol * scale * 1e2;
  // discrete L2 normalization: sum q v^2 = 1
  const double l2 = std::sqrt(op.interior_weight());
  r.eigenfunction = op.expand_interior(vI / l2, nullptr);
  return r;
}

// Lanczos with full reorthogonalization; returns (estimate, ritz vector).
std::pair<double, Eigen::VectorXd> lanczos_smallest(const Eigen::SparseMatrix<double>& A, int iters,
                                                    unsigned seed) {
  const Eigen::Index n = A.rows();
  const int m = static_cast<int>(std::min<Eigen::Index>(iters, n));
  std::vector<Eigen::VectorXd> V;
  V.reserve(static_cast<size_t>(m));
  Eigen::VectorXd alpha(m), beta(m);
  Eigen::VectorXd v = deterministic_unit_vector(n, seed);
  Eigen::VectorXd w;
  int k = 0;
  for (; k < m; ++k) {
    V.push_back(v);
    w = A * v;
    alpha[k] = v.dot(w);
    w -= alpha[k] * v;
    if (k > 0) w -= beta[k - 1] * V[static_cast<size_t>(k - 1)];
    for (const auto& q : V) w -= q.dot(w) * q;  // full reorthogonalization
    const double b = w.norm();
    if (b < 1e-14) {
      ++k;
      break;
    }
    beta[k] = b;
    v = w / b;
  }
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(k, k);
  for (int i = 0; i < k; ++i) {
    T(i, i) = alpha[i];
    if (i + 1 < k) T(i, i + 1) = T(i + 1, i) = beta[i];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
  const Eigen::VectorXd& y = es.eigenvectors().col(0);
  Eigen::VectorXd ritz = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < k; ++i) ritz += y[i] * V[static_cast<size_t>(i)];
  ritz.normalize();
  return {es.eigenvalues()[0], ritz};
}

}  // namespace

SpectralResult smallest_eigenvalue_sym(const StabilityOperator& op, const EigenOptions& opts) {
  const Eigen::SparseMatrix<double> A = op.hessian_interior() / op.interior_weight();
  const Eigen::Index n = A.rows();
  if (n == 0) throw std::invalid_argument("smallest_eigenvalue_sym: empty interior");

  if (n <= opts.dense_threshold) {
    Eigen::MatrixXd Ad(A);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Ad);
    if (es.info() != Eigen::Success) throw std::runtime_error("dense eigensolver failed");
    return pack_result(op, A, es.eigenvalues()[0], es.eigenvectors().col(0), "dense", opts.tol);
  }

  auto [est, v] = lanczos_smallest(A, opts.lanczos_iters, opts.seed);
  // polish by inverse iteration at a shift strictly below the estimate
  const double scale = std::max(op.scale(), 1.0);
  const double shift = est - std::max(1e-8 * scale, 1e-3 * std::abs(est));
  Eigen::SparseMatrix<double> S = A;
  for (Eigen::Index i = 0; i < n; ++i) S.coeffRef(static_cast<int>(i), static_cast<int>(i)) -= shift;
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(S);
  if (lu.info() != Eigen::Success) {
    // shift landed on an eigenvalue: report the Lanczos estimate
    return pack_result(op, A, est, v, "shift-invert", opts.tol);
  }
  double lambda = est;
  for (int it = 0; it < opts.max_refine_iters; ++it) {
    Eigen::VectorXd w = lu.solve(v);
    w.normalize();
    const double rho = w.dot(A * w);
    v = w;
    if (std::abs(rho - lambda) <= 1e-3 * opts.tol * scale) {
      lambda = rho;
      break;
    }
    lambda = rho;
  }
  return pack_result(op, A, lambda, v, "shift-invert", opts.tol);
}

namespace {

// Inverse power iteration on (A - sigma I)^{-1}; converges to the eigenvalue
// nearest sigma for a real spectrum.  No symmetry is assumed.
bool inverse_iterate(const Eigen::SparseMatrix<double>& A, double sigma, int iters, double stop,
                     Eigen::VectorXd& v, double& lambda) {
  const Eigen::Index n = A.rows();
  Eigen::SparseMatrix<double> S = A;
  for (Eigen::Index i = 0; i < n; ++i) S.coeffRef(static_cast<int>(i), static_cast<int>(i)) -= sigma;
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(S);
  if (lu.info() != Eigen::Success) return false;
  for (int it = 0; it < iters; ++it) {
    Eigen::VectorXd w = lu.solve(v);
    const double nw = w.norm();
    if (!(nw > 0.0) || !std::isfinite(nw)) return false;
    v = w / nw;
    lambda = v.dot(A * v);
    if ((A * v - lambda * v).norm() <= stop) return true;
  }
  return true;
}

}  // namespace

SpectralResult smallest_eigenvalue_operator(const StabilityOperator& op, const EigenOptions& opts) {
  const Eigen::SparseMatrix<double> A = op.hessian_interior() / op.interior_weight();
  const Eigen::Index n = A.rows();
  if (n == 0) throw std::invalid_argument("smallest_eigenvalue_operator: empty interior");
  const double scale = std::max(op.scale(), 1.0);

  if (n <= opts.general_dense_threshold) {
    Eigen::MatrixXd Ad(A);
    Eigen::EigenSolver<Eigen::MatrixXd> es(Ad);
    if (es.info() != Eigen::Success) throw std::runtime_error("general dense eigensolver failed");
    Eigen::Index best = 0;
    for (Eigen::Index k = 1; k < n; ++k) {
      if (es.eigenvalues()[k].real() < es.eigenvalues()[best].real()) best = k;
    }
    Eigen::VectorXd v = es.eigenvectors().col(best).real();
    if (v.norm() == 0.0) v = deterministic_unit_vector(n, opts.seed + 1);
    return pack_result(op, A, es.eigenvalues()[best].real(), v, "dense", opts.tol);
  }

  // Iterative route for a real spectrum: find the eigenvalue of smallest
  // modulus first, then probe below it once; the nearest-to-shift property
  // of inverse iteration does the rest.
  Eigen::VectorXd v = deterministic_unit_vector(n, opts.seed + 1);
  double lambda = 0.0;
  const double stop = 0.1 * opts.tol * scale;
  double sigma = -1e-8 * scale;  // tiny offset keeps the factorization regular
  if (!inverse_iterate(A, sigma, opts.max_refine_iters, stop, v, lambda)) {
    inverse_iterate(A, sigma - 1e-6 * scale, opts.max_refine_iters, stop, v, lambda);
  }
  // polish at the current estimate, then probe for anything further down
  inverse_iterate(A, lambda - 1e-6 * std::max(std::abs(lambda), 1e-3 * scale), opts.max_refine_iters,
                  stop, v, lambda);
  Eigen::VectorXd v2 = deterministic_unit_vector(n, opts.seed + 7);
  double lambda2 = lambda;
  const double span = std::max(0.75 * std::abs(lambda), 1e-2 * scale);
  if (inverse_iterate(A, lambda - span, opts.max_refine_iters, stop, v2, lambda2) &&
      lambda2 < lambda - 1e-12 * scale) {
    lambda = lambda2;
    v = v2;
    inverse_iterate(A, lambda - 1e-6 * std::max(std::abs(lambda), 1e-3 * scale), opts.max_refine_iters,
                    stop, v, lambda);
  }
  return pack_result(op, A, lambda, v, "shift-invert", opts.tol);
}

FirstEigenvalue first_eigenvalue(const ScalarField& u, const EigenOptions& opts) {
  const StabilityOperator op = StabilityOperator::assemble(u);
  FirstEigenvalue out;
  out.sym = smallest_eigenvalue_sym(op, opts);
  out.op = smallest_eigenvalue_operator(op, opts);
  out.scale = op.scale();
  out.strictly_stable = out.sym.lambda1 > out.stability_tol * out.scale;
  return out;
}

}  // namespace hgraph

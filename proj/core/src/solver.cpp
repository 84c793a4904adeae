#include "hgraph/solver.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include <Eigen/IterativeLinearSolvers>

#include "hgraph/stencil.hpp"

namespace hgraph {

namespace {

double interior_residual_inf(const ScalarField& u, const ScalarField* f, ScalarField* out = nullptr) {
  ScalarField r = variational_curvature(u);
  if (f) {
    for (NodeIndex x : u.domain()->interior()) r[x] -= (*f)[x];
  }
  if (out) *out = r;
  return r.interior_max_abs();
}

Eigen::VectorXd solve_linear(const StabilityOperator& op, const Eigen::VectorXd& rhs,
                             const SolverConfig& cfg, std::string& diagnosis) {
  const bool direct = cfg.linear_solver == SolverConfig::LinearSolver::Direct ||
                      (cfg.linear_solver == SolverConfig::LinearSolver::Auto &&
                       op.interior_size() <= cfg.direct_threshold);
  if (!direct) {
    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper,
                             Eigen::IncompleteCholesky<double>>
        cg;
    cg.setTolerance(cfg.linear_tol);
    cg.compute(op.hessian_interior());
    if (cg.info() == Eigen::Success) {
      Eigen::VectorXd x = cg.solve(rhs);
      if (cg.info() == Eigen::Success && (op.hessian_interior() * x - rhs).norm() <=
                                             std::max(cfg.linear_tol * rhs.norm() * 10.0, 1e-300)) {
        return x;
      }
    }
    // fall through to the direct path
  }
  try {
    auto fac = op.factorize();
    return fac->solve(rhs);
  } catch (const std::runtime_error& e) {
    diagnosis = std::string("linear solve breakdown: ") + e.what();
    return Eigen::VectorXd();
  }
}

// One Newton run at fixed boundary data (already written into u).
bool newton_at_fixed_boundary(ScalarField& u, const ScalarField* f, const SolverConfig& cfg,
                              SolveReport& rep) {
  double res = interior_residual_inf(u, f);
  rep.residual_history.push_back(res);
  for (int it = 0; it < cfg.max_newton_iters; ++it) {
    if (res <= cfg.residual_tol) {
      rep.converged = true;
      return true;
    }
    const StabilityOperator op = StabilityOperator::assemble(u);

    // L delta = -(H_u - f), delta = 0 on the boundary
    ScalarField rfield(u.domain());
    interior_residual_inf(u, f, &rfield);
    Eigen::VectorXd rhs = op.interior_weight() * op.restrict_interior(rfield);
    Eigen::VectorXd delta = solve_linear(op, rhs, cfg, rep.diagnosis);
    if (delta.size() == 0) return false;

    double alpha = 1.0;
    bool accepted = false;
    while (alpha >= cfg.min_step) {
      ScalarField trial = u;
      const auto& interior = u.domain()->interior();
      for (size_t k = 0; k < interior.size(); ++k) {
        trial[interior[k]] += alpha * delta[static_cast<Eigen::Index>(k)];
      }
      const double tres = interior_residual_inf(trial, f);
      if (tres <= (1.0 - 1e-4 * alpha) * res) {
        u = trial;
        res = tres;
        accepted = true;
        break;
      }
      alpha *= cfg.backtrack_factor;
    }
    if (!accepted) {
      rep.diagnosis = "damping underflow: no step fraction above the floor reduced the residual";
      return false;
    }
    rep.damping_history.push_back(alpha);
    rep.residual_history.push_back(res);
    ++rep.newton_iterations;
  }
  if (res <= cfg.residual_tol) {
    rep.converged = true;
    return true;
  }
  rep.diagnosis = "maximum Newton iterations reached";
  return false;
}

std::pair<ScalarField, SolveReport> run_solver(ScalarField u, const ScalarField& start_trace,
                                               const ScalarField& phi, const ScalarField* f,
                                               const SolverConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  SolveReport rep;
  const int steps = std::max(1, cfg.continuation_steps);
  rep.continuation_total = steps;

  for (int k = 1; k <= steps; ++k) {
    const double t = static_cast<double>(k) / steps;
    for (NodeIndex x : u.domain()->boundary()) {
      u[x] = (1.0 - t) * start_trace[x] + t * phi[x];
    }
    rep.converged = false;
    if (!newton_at_fixed_boundary(u, f, cfg, rep)) break;
    rep.continuation_completed = k;
  }

  rep.final_residual = rep.residual_history.empty() ? 0.0 : rep.residual_history.back();
  {
    ScalarField hd = mean_curvature(u);
    if (f) {
      for (NodeIndex x : u.domain()->interior()) hd[x] -= (*f)[x];
    }
    rep.direct_residual = hd.interior_max_abs();
  }
  if (rep.converged && cfg.certify_stability) {
    const StabilityOperator opf = StabilityOperator::assemble(u);
    const SpectralResult sp = smallest_eigenvalue_sym(opf, cfg.eigen);
    rep.lambda1_sym = sp.lambda1;
    rep.strictly_stable = sp.lambda1 > 1e-8 * opf.scale();
  }
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {std::move(u), std::move(rep)};
}

}  // namespace

std::pair<ScalarField, SolveReport> solve_dirichlet(GridPtr dom, const ScalarField& phi,
                                                    const ScalarField* f, const SolverConfig& cfg) {
  phi.require_finite("solve_dirichlet boundary data");
  if (f) f->require_finite("solve_dirichlet prescription");
  ScalarField u(dom);

  if (cfg.initial_guess == SolverConfig::InitialGuess::HarmonicExtension) {
    // extension through the flat-graph operator: L_0 w = 0, w = phi on the
    // boundary; cheap and exact for flat and vertical-independent linear data
    const StabilityOperator op0 = StabilityOperator::assemble(ScalarField(dom));
    u = op0.solve(ScalarField(dom), phi);
  } else {
    u.set_boundary(phi);
  }
  ScalarField start_trace(dom);
  if (cfg.continuation_steps > 1) {
    // ramp from zero boundary data
    u.set_boundary(0.0);
  } else {
    start_trace.set_boundary(phi);
  }
  return run_solver(std::move(u), start_trace, phi, f, cfg);
}

std::pair<ScalarField, SolveReport> solve_perturbed(const ScalarField& u0, const ScalarField& phi,
                                                    const ScalarField* f, const SolverConfig& cfg) {
  u0.require_finite("solve_perturbed base");
  phi.require_finite("solve_perturbed boundary data");
  ScalarField start_trace(u0.domain());
  start_trace.set_boundary(u0);
  return run_solver(u0, start_trace, phi, f, cfg);
}

BasinProbe probe_amplitude_basin(GridPtr dom, const ScalarField& profile, const SolverConfig& cfg,
                                 double initial_amplitude, int doublings, int bisections) {
  profile.require_finite("probe_amplitude_basin profile");
  const double pscale = profile.boundary_max_abs();
  if (!(pscale > 0.0)) throw std::invalid_argument("probe_amplitude_basin: profile vanishes on the boundary");

  BasinProbe probe;
  auto attempt = [&](double amp) {
    SolverConfig c = cfg;
    c.certify_stability = false;
    ScalarField phi = (amp / pscale) * profile;
    auto [u, rep] = solve_dirichlet(dom, phi, nullptr, c);
    probe.trace.emplace_back(amp, rep.converged);
    return rep.converged;
  };

  double lo = 0.0, hi = initial_amplitude;
  for (int k = 0; k <= doublings; ++k) {
    if (attempt(hi)) {
      lo = hi;
      hi *= 2.0;
    } else {
      break;
    }
  }
  if (lo == 0.0) {
    probe.eps0 = 0.0;
    return probe;
  }
  if (probe.trace.back().second) {
    // never failed within the doubling budget
    probe.eps0 = lo;
    return probe;
  }
  for (int k = 0; k < bisections; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (attempt(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  probe.eps0 = lo;
  return probe;
}

}  // namespace hgraph

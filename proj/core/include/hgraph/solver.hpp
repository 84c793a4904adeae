#pragma once

#include <string>
#include <vector>

#include "hgraph/eigensolve.hpp"
#include "hgraph/variational.hpp"

namespace hgraph {

struct SolverConfig {
  /// Convergence threshold on the interior L-inf norm of the variational
  /// curvature residual H_u - f.
  double residual_tol = 1e-10;
  int max_newton_iters = 30;
  double backtrack_factor = 0.5;
  double min_step = 1e-8;
  /// Boundary data is ramped from the initial trace in this many increments.
  int continuation_steps = 1;
  double linear_tol = 1e-12;

  enum class LinearSolver { Auto, Direct, ConjugateGradient };
  LinearSolver linear_solver = LinearSolver::Auto;
  int direct_threshold = 20000;

  enum class InitialGuess { HarmonicExtension, Zero };
  InitialGuess initial_guess = InitialGuess::HarmonicExtension;

  /// Compute lambda1_sym of the final solution for the report.  The report
  /// path uses the iterative eigensolver; the dense cross-check lives in the
  /// stability tests.
  bool certify_stability = true;
  EigenOptions eigen = [] { EigenOptions e; e.dense_threshold = 0; return e; }();
};

struct SolveReport {
  bool converged = false;
  int newton_iterations = 0;
  std::vector<double> residual_history;  // recorded every iteration, initial included
  std::vector<double> damping_history;   // accepted step fractions
  double final_residual = 0.0;
  /// Diagnostic: interior L-inf of the stencil-composed divergence-form
  /// curvature minus f at the solution (differs from the variational
  /// residual by discretization terms).
  double direct_residual = 0.0;
  double lambda1_sym = 0.0;
  bool strictly_stable = false;
  double wall_seconds = 0.0;
  int continuation_completed = 0;
  int continuation_total = 0;
  std::string diagnosis;  // empty on success
};

/// Solves the Dirichlet problem  H_v = f in the interior, v = phi on the
/// boundary, by damped Newton iteration with the assembled stability operator
/// as the (exact) linearization.  Non-convergence is reported, never silently
/// returned as a field.
std::pair<ScalarField, SolveReport> solve_dirichlet(GridPtr dom, const ScalarField& phi,
                                                    const ScalarField* f, const SolverConfig& cfg);

/// Newton continuation from a previously solved base u0 toward new boundary
/// data phi (used leaf by leaf when foliating).
std::pair<ScalarField, SolveReport> solve_perturbed(const ScalarField& u0, const ScalarField& phi,
                                                    const ScalarField* f, const SolverConfig& cfg);

struct BasinProbe {
  double eps0 = 0.0;  // largest boundary amplitude that still solved
  std::vector<std::pair<double, bool>> trace;  // (amplitude, converged)
};

/// Bisection over the boundary amplitude |phi|_inf for a fixed boundary
/// profile; measures the practical solvable neighborhood of u = 0.
BasinProbe probe_amplitude_basin(GridPtr dom, const ScalarField& profile, const SolverConfig& cfg,
                                 double initial_amplitude = 0.05, int doublings = 6, int bisections = 8);

}  // namespace hgraph

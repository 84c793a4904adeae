#include "doctest.h"
#include "helpers.hpp"

using namespace hgraph;
using namespace hgraph::testing;

TEST_CASE("flat operator, zero load, unit boundary: the constant solution") {
  auto dom = unit_grid(2, 6);
  MaxPrincipleResult r = check_maximum_principle(ScalarField(dom), ScalarField(dom),
                                                 ScalarField::constant(dom, 1.0));
  CHECK(r.verdict == MaxPrincipleVerdict::Holds);
  CHECK(r.inf_v == doctest::Approx(1.0).epsilon(1e-10));
  CHECK((r.solution - ScalarField::constant(dom, 1.0)).max_abs() <= 1e-10);
}

TEST_CASE("nonpositive load pushes the solution above the boundary floor") {
  auto dom = unit_grid(2, 6);
  MaxPrincipleResult r = check_maximum_principle(ScalarField(dom), ScalarField::constant(dom, -1.0),
                                                 ScalarField::constant(dom, 1.0));
  CHECK(r.verdict == MaxPrincipleVerdict::Holds);
  CHECK(r.inf_v >= 1.0 - 1e-10);
}

TEST_CASE("hypothesis validation") {
  auto dom = unit_grid(1, 7);
  ScalarField zero(dom);
  CHECK_THROWS_AS(check_maximum_principle(zero, ScalarField::constant(dom, 0.5), ScalarField::constant(dom, 1.0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(check_maximum_principle(zero, zero, zero), std::invalid_argument);
}

TEST_CASE("randomized instances over a stable base all stay positive") {
  auto dom = unit_grid(2, 6);
  SolverConfig cfg;
  auto [base, rep] = solve_dirichlet(dom, smooth_random_field(dom, 17, 0.05), nullptr, cfg);
  REQUIRE(rep.converged);

  const StabilityOperator op = StabilityOperator::assemble(base);
  auto fac = op.factorize();
  for (unsigned seed = 0; seed < 12; ++seed) {
    ScalarField g = smooth_random_field(dom, 900 + seed, 1.0);
    for (NodeIndex x = 0; x < dom->num_nodes(); ++x) g[x] = -std::abs(g[x]);
    ScalarField b = smooth_random_field(dom, 950 + seed, 1.0);
    for (NodeIndex x = 0; x < dom->num_nodes(); ++x) b[x] = 0.1 + std::abs(b[x]);
    ScalarField v = op.solve_with(*fac, g, b);
    CHECK(v.min_value() > 0.0);
  }
}

#include "doctest.h"
#include "helpers.hpp"

using namespace hgraph;
using namespace hgraph::testing;

namespace {

Foliation flat_foliation(GridPtr dom) {
  FoliationConfig cfg;
  return build_foliation(ScalarField(dom), 0.05, 5, cfg);
}

}  // namespace

TEST_CASE("competitor generation: determinism, trace, containment flags") {
  auto dom = unit_grid(2, 6);
  ScalarField base(dom);
  Foliation fol = flat_foliation(dom);

  Competitor a = generate_competitor(base, fol, 123, 0.01, BumpProfile::RandomLowFrequency);
  Competitor b = generate_competitor(base, fol, 123, 0.01, BumpProfile::RandomLowFrequency);
  CHECK(state_hash(a.field) == state_hash(b.field));  // bit-stable per seed
  Competitor c = generate_competitor(base, fol, 124, 0.01, BumpProfile::RandomLowFrequency);
  CHECK(state_hash(a.field) != state_hash(c.field));

  CHECK(a.field.boundary_distance(base) == 0.0);
  CHECK(a.contained);

  // amplitude 0 reproduces the base and is trivially contained
  Competitor zero = generate_competitor(base, fol, 5, 0.0, BumpProfile::Cosine);
  CHECK((zero.field - base).max_abs() == 0.0);
  CHECK(zero.contained);

  // a bump taller than the outer leaf is flagged, not rejected
  Competitor wild = generate_competitor(base, fol, 7, 0.2, BumpProfile::Cosine);
  CHECK_FALSE(wild.contained);
}

TEST_CASE("area comparison around the flat minimizer") {
  auto dom = unit_grid(2, 6);
  ScalarField base(dom);
  Foliation fol = flat_foliation(dom);

  Competitor same = generate_competitor(base, fol, 1, 0.0, BumpProfile::Cosine);
  CalibrationOutcome eq = calibration_compare(base, fol, same);
  CHECK(eq.verdict == CalibrationVerdict::Pass);
  CHECK(eq.delta_area == doctest::Approx(0.0).scale(1));

  Competitor bump = generate_competitor(base, fol, 2, 0.02, BumpProfile::Cosine);
  REQUIRE(bump.contained);
  CalibrationOutcome out = calibration_compare(base, fol, bump);
  CHECK(out.verdict == CalibrationVerdict::Pass);
  CHECK(out.delta_area > 0.0);

  // quadratic growth: halving the amplitude divides the excess area by ~4
  Competitor half = generate_competitor(base, fol, 2, 0.01, BumpProfile::Cosine);
  CalibrationOutcome outh = calibration_compare(base, fol, half);
  const double ratio = out.delta_area / outh.delta_area;
  CHECK(ratio >= 3.5);
  CHECK(ratio <= 4.5);
}

TEST_CASE("non-contained competitors yield an inapplicable verdict") {
  auto dom = unit_grid(2, 6);
  ScalarField base(dom);
  Foliation fol = flat_foliation(dom);
  Competitor wild = generate_competitor(base, fol, 7, 0.5, BumpProfile::Cosine);
  REQUIRE_FALSE(wild.contained);
  CHECK(calibration_compare(base, fol, wild).verdict == CalibrationVerdict::Inapplicable);
}

TEST_CASE("competitor sweep over a curved stable base passes area comparison") {
  auto dom = unit_grid(2, 7);
  SolverConfig scfg;
  auto [base, rep] = solve_dirichlet(dom, smooth_random_field(dom, 61, 0.04), nullptr, scfg);
  REQUIRE(rep.converged);
  FoliationConfig fcfg;
  Foliation fol = build_foliation(base, 0.04, 5, fcfg);
  REQUIRE(fol.valid);

  int contained = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Competitor comp = generate_competitor(base, fol, seed, 0.008, BumpProfile::RandomLowFrequency);
    if (!comp.contained) continue;
    ++contained;
    CalibrationOutcome out = calibration_compare(base, fol, comp);
    CHECK(out.verdict == CalibrationVerdict::Pass);
  }
  CHECK(contained >= 15);
}

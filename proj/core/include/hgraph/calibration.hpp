#pragma once

#include <cstdint>

#include "hgraph/foliation.hpp"

namespace hgraph {

enum class BumpProfile { Cosine, RandomLowFrequency };

/// A graph with the same boundary trace as the base, w = u + amplitude*bump,
/// tagged with whether it stays inside the foliated neighborhood.
struct Competitor {
  ScalarField field;
  std::uint64_t seed = 0;
  double amplitude = 0.0;
  BumpProfile profile = BumpProfile::Cosine;
  bool contained = false;
  double margin = 0.0;  // one foliation-cell safety margin used by the test
};

/// Builds a competitor from a smooth bump vanishing on the boundary and
/// evaluates containment against the foliation envelopes with a one-leaf-gap
/// safety margin.  Non-contained competitors are flagged, not rejected.
Competitor generate_competitor(const ScalarField& u, const Foliation& fol, std::uint64_t seed,
                               double amplitude, BumpProfile profile);

enum class CalibrationVerdict { Pass, Fail, Inapplicable };

struct CalibrationOutcome {
  double delta_area = 0.0;       // area(w) - area(u)
  double tol_quadrature = 0.0;   // 10 h^2 |Omega|
  double strict_threshold = 0.0; // 10 h^2; strict positivity applies above it
  double sup_deviation = 0.0;    // |w - u|_inf
  bool strict_clause_applied = false;
  CalibrationVerdict verdict = CalibrationVerdict::Inapplicable;
};

/// Area comparison against a contained competitor: PASS iff
///   delta_area >= -tol_quadrature, and delta_area > 0 whenever
///   |w - u|_inf exceeds the grid threshold.
/// A non-contained competitor or an invalid foliation yields Inapplicable
/// (the comparison hypothesis fails), never Fail.
CalibrationOutcome calibration_compare(const ScalarField& u, const Foliation& fol,
                                       const Competitor& comp);

}  // namespace hgraph

#include "hgraph/calibration.hpp"

#include <cmath>

#include "hgraph/random_field.hpp"
#include "hgraph/variational.hpp"

namespace hgraph {

Competitor generate_competitor(const ScalarField& u, const Foliation& fol, std::uint64_t seed,
                               double amplitude, BumpProfile profile) {
  Competitor c;
  c.seed = seed;
  c.amplitude = amplitude;
  c.profile = profile;

  const ScalarField bump =
      profile == BumpProfile::Cosine ? cosine_bump(u.domain()) : random_bump(u.domain(), seed);
  c.field = u + amplitude * bump;
  c.field.set_boundary(u);  // exact shared trace

  // containment with a one-foliation-cell margin: the competitor must stay a
  // full adjacent-leaf gap inside the extreme leaves
  const int k = static_cast<int>(fol.leaves.size());
  c.contained = true;
  double worst_margin = std::numeric_limits<double>::infinity();
  for (NodeIndex x : u.domain()->interior()) {
    const double lo = fol.lower_envelope[x];
    const double hi = fol.upper_envelope[x];
    const double cell = (hi - lo) / std::max(1, k - 1);
    const double lo_room = c.field[x] - (lo + cell);
    const double hi_room = (hi - cell) - c.field[x];
    worst_margin = std::min(worst_margin, std::min(lo_room, hi_room));
    if (lo_room < 0.0 || hi_room < 0.0) c.contained = false;
  }
  c.margin = worst_margin;
  return c;
}

CalibrationOutcome calibration_compare(const ScalarField& u, const Foliation& fol,
                                       const Competitor& comp) {
  CalibrationOutcome out;
  const GridDomain& dom = *u.domain();
  const double h = dom.max_spacing();
  out.tol_quadrature = 10.0 * h * h * dom.box_volume();
  out.strict_threshold = 10.0 * h * h;
  out.sup_deviation = (comp.field - u).max_abs();

  if (!fol.valid || !comp.contained) {
    out.verdict = CalibrationVerdict::Inapplicable;
    return out;
  }
  out.delta_area = area(comp.field).value - area(u).value;
  out.strict_clause_applied = out.sup_deviation > out.strict_threshold;

  const bool weak_ok = out.delta_area >= -out.tol_quadrature;
  const bool strict_ok = !out.strict_clause_applied || out.delta_area > 0.0;
  out.verdict = (weak_ok && strict_ok) ? CalibrationVerdict::Pass : CalibrationVerdict::Fail;
  return out;
}

}  // namespace hgraph

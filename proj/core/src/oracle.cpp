#include "hgraph/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "hgraph/variational.hpp"

namespace hgraph {

namespace {

// Richardson combination for an even error expansion E(s) = c2 s^2 + O(s^4).
double richardson2(double sa, double ea, double sb, double eb) {
  const double sa2 = sa * sa, sb2 = sb * sb;
  return (sa2 * eb - sb2 * ea) / (sa2 - sb2);
}

FDReport run_sweep(const ScalarField& u, const ScalarField& v, const FDOptions& opts, bool second) {
  if (!v.boundary_is_zero()) {
    throw std::invalid_argument("fd variation oracle: direction must vanish on the boundary");
  }
  u.require_same_domain(v, "fd variation oracle");
  FDReport rep;
  rep.steps = opts.steps;
  if (rep.steps.size() < 2) throw std::invalid_argument("fd variation oracle: need at least two steps");
  std::sort(rep.steps.begin(), rep.steps.end(), std::greater<double>());

  const double vs = v.max_abs();
  rep.direction_scale = vs;
  if (vs == 0.0) {
    rep.estimates.assign(rep.steps.size(), 0.0);
    rep.noise_flag.assign(rep.steps.size(), false);
    return rep;
  }
  ScalarField vhat = (1.0 / vs) * v;

  const double a0 = area(u).value;
  // 1e3 * machine epsilon * area(u): numerators below this are roundoff.
  rep.noise_floor = 1e3 * std::numeric_limits<double>::epsilon() * a0;

  std::vector<double> noise_est;  // absolute roundoff level of each estimate
  for (double s : rep.steps) {
    const double ap = area(u + s * vhat).value;
    const double am = area(u + (-s) * vhat).value;
    const double cancel = std::numeric_limits<double>::epsilon() * (std::abs(ap) + 2.0 * std::abs(a0) + std::abs(am));
    double numer, est;
    if (second) {
      numer = ap - 2.0 * a0 + am;
      est = numer / (s * s) * (vs * vs);
      noise_est.push_back(cancel / (s * s) * (vs * vs));
    } else {
      numer = ap - am;
      est = numer / (2.0 * s) * vs;
      noise_est.push_back(cancel / (2.0 * s) * vs);
    }
    rep.estimates.push_back(est);
    rep.noise_flag.push_back(std::abs(numer) < rep.noise_floor);
  }

  // gaps between successive estimates must shrink up to the roundoff level
  for (size_t k = 0; k + 2 < rep.steps.size(); ++k) {
    const double slack = noise_est[k + 1] + noise_est[k + 2];
    if (std::abs(rep.estimates[k + 2] - rep.estimates[k + 1]) >
        std::abs(rep.estimates[k + 1] - rep.estimates[k]) + slack) {
      rep.monotone = false;
    }
  }

  // Pair choice: central first differences keep shrinking roundoff as the
  // step shrinks, so the two smallest steps extrapolate best; second
  // differences lose half the digits, so there the two largest clean steps
  // are the safe pair.
  size_t ia = 0, ib = 1;
  if (second) {
    size_t found = 0;
    for (size_t k = 0; k < rep.steps.size() && found < 2; ++k) {
      if (rep.noise_flag[k]) continue;
      (found == 0 ? ia : ib) = k;
      ++found;
    }
    if (found < 2) {
      ia = 0;
      ib = 1;
    }
  } else {
    ia = rep.steps.size() - 2;
    ib = rep.steps.size() - 1;
  }
  rep.extrapolated = richardson2(rep.steps[ia], rep.estimates[ia], rep.steps[ib], rep.estimates[ib]);
  rep.best_single = rep.estimates[second ? ib : rep.steps.size() - 1];
  return rep;
}

}  // namespace

double FDReport::discrepancy(double analytic) const { return std::abs(extrapolated - analytic); }

FDReport fd_first_variation(const ScalarField& u, const ScalarField& v, const FDOptions& opts) {
  return run_sweep(u, v, opts, /*second=*/false);
}

FDReport fd_second_variation(const ScalarField& u, const ScalarField& v, const FDOptions& opts) {
  return run_sweep(u, v, opts, /*second=*/true);
}

}  // namespace hgraph

#pragma once

#include <vector>

#include "hgraph/hgraph.hpp"

namespace hgraph::testing {

inline GridPtr unit_grid(int n, int m) { return GridDomain::unit_box(n, m); }

// linear field a1 x1 + ... without a vertical (x_{2n}) term
inline ScalarField linear_field(GridPtr dom, const std::vector<double>& coeff) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(dom->num_nodes());
  for (size_t k = 0; k < coeff.size(); ++k) {
    v += coeff[k] * dom->coordinates(static_cast<int>(k));
  }
  return ScalarField(dom, std::move(v));
}

// measured least-squares slope of log(err) against log(h)
inline double fitted_order(const std::vector<double>& hs, const std::vector<double>& errs) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(hs.size());
  for (size_t k = 0; k < hs.size(); ++k) {
    const double lx = std::log(hs[k]), ly = std::log(errs[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace hgraph::testing

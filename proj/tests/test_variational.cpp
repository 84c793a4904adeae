#include "doctest.h"
#include "helpers.hpp"

using namespace hgraph;
using namespace hgraph::testing;

TEST_CASE("area of flat and constant graphs equals the box volume") {
  for (int n : {1, 2}) {
    auto dom = unit_grid(n, 6);
    CHECK(area(ScalarField(dom)).value == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(area(ScalarField::constant(dom, 3.7)).value == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("area of the tilted plane is sqrt(2) exactly on the lattice") {
  auto dom = unit_grid(1, 17);
  ScalarField u = ScalarField::coordinate(dom, 0);
  CHECK(area(u).value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("area dominates the box volume; flux stays strictly sub-unit") {
  for (unsigned seed : {1u, 2u, 3u, 4u}) {
    auto dom = unit_grid(2, 6);
    ScalarField u = smooth_random_field(dom, seed, 0.8);
    CHECK(area(u).value >= dom->box_volume() - 1e-12);
    FluxVector F = flux(u);
    for (const auto& c : F.component) {
      CHECK(c.cwiseAbs().maxCoeff() < 1.0);
    }
  }
}

TEST_CASE("prescribed functional examples") {
  auto dom = unit_grid(1, 9);
  ScalarField u = smooth_random_field(dom, 4, 0.5);
  ScalarField zero(dom);
  CHECK(prescribed_functional(u, zero).value == doctest::Approx(area(u).value));

  ScalarField f = smooth_random_field(dom, 5, 1.0);
  CHECK(prescribed_functional(ScalarField(dom), f).value == doctest::Approx(1.0).epsilon(1e-13));

  ScalarField one = ScalarField::constant(dom, 1.0);
  CHECK(std::abs(prescribed_functional(one, one).value) <= 1e-14);
}

TEST_CASE("mean curvature vanishes exactly on constants and tilted planes") {
  auto dom = unit_grid(2, 7);
  CHECK(mean_curvature(ScalarField::constant(dom, 2.0)).interior_max_abs() <= 1e-15);
  ScalarField lin = linear_field(dom, {0.4, -0.3, 0.2});
  CHECK(mean_curvature(lin).interior_max_abs() <= 1e-13);
  CHECK(variational_curvature(lin).interior_max_abs() <= 1e-13);
  // boundary carries the 0 sentinel
  CHECK(mean_curvature(lin).boundary_max_abs() == 0.0);
}

TEST_CASE("mean curvature of the vertical coordinate matches the closed form at O(h^2)") {
  // u = x4: exact curvature x4 / (1 + x1^2 + x4^2)^{3/2}
  std::vector<double> hs, errs, errs_var;
  for (int m : {9, 17}) {
    auto dom = unit_grid(2, m);
    ScalarField u = ScalarField::coordinate(dom, 3);
    ScalarField H = mean_curvature(u);
    ScalarField Hv = variational_curvature(u);
    double err = 0.0, errv = 0.0;
    for (NodeIndex x : dom->interior()) {
      const double x1 = dom->coordinate(x, 0), x4 = dom->coordinate(x, 3);
      const double exact = x4 / std::pow(1.0 + x1 * x1 + x4 * x4, 1.5);
      err = std::max(err, std::abs(H[x] - exact));
      errv = std::max(errv, std::abs(Hv[x] - exact));
    }
    hs.push_back(dom->spacing(0));
    errs.push_back(err);
    errs_var.push_back(errv);
  }
  CHECK(fitted_order(hs, errs) >= 1.9);
  CHECK(fitted_order(hs, errs_var) >= 1.9);
}

TEST_CASE("nondivergence curvature of affine-in-horizontal graphs vanishes") {
  auto dom = unit_grid(2, 7);
  CHECK(mean_curvature_nondiv(ScalarField::constant(dom, 1.0)).interior_max_abs() <= 1e-15);
  ScalarField lin = linear_field(dom, {0.5, 0.1, -0.4});
  CHECK(mean_curvature_nondiv(lin).interior_max_abs() <= 1e-12);
}

TEST_CASE("divergence and nondivergence forms agree through the area integrand") {
  // max interior |M - W H| decays at measured order >= 0.9
  struct Case {
    int n;
    std::vector<int> grids;
  };
  for (const auto& c : {Case{1, {17, 33, 65}}, Case{2, {9, 13, 17}}}) {
    std::vector<double> hs, errs;
    for (int m : c.grids) {
      auto dom = unit_grid(c.n, m);
      ScalarField u = smooth_random_field(dom, 3, 0.3, 1);
      const GradientState s = GradientState::compute(u);
      ScalarField H = mean_curvature(u);
      ScalarField M = mean_curvature_nondiv(u);
      double err = 0.0;
      for (NodeIndex x : dom->interior()) {
        err = std::max(err, std::abs(M[x] - s.W[x] * H[x]));
      }
      hs.push_back(dom->spacing(0));
      errs.push_back(err);
    }
    CHECK(fitted_order(hs, errs) >= 0.9);
  }
}

TEST_CASE("weak residual: trivial cases are exact zeros") {
  auto dom = unit_grid(2, 6);
  ScalarField zero(dom);
  ScalarField phi = smooth_random_field(dom, 8, 0.6, 2, true);
  ScalarField f(dom);
  CHECK(std::abs(weak_residual(zero, phi, f)) <= 1e-15);
  CHECK(weak_residual(smooth_random_field(dom, 9, 0.4), ScalarField(dom), f) == 0.0);
}

TEST_CASE("weak residual rejects test functions with boundary support") {
  auto dom = unit_grid(1, 7);
  ScalarField phi = ScalarField::constant(dom, 1.0);
  CHECK_THROWS_AS(weak_residual(ScalarField(dom), phi, ScalarField(dom)), std::invalid_argument);
}

TEST_CASE("weak residual equals the FD derivative of the area") {
  for (int n : {1, 2}) {
    auto dom = unit_grid(n, n == 1 ? 33 : 9);
    for (unsigned seed = 0; seed < 4; ++seed) {
      ScalarField u = smooth_random_field(dom, 100 + seed, 0.4);
      ScalarField phi = smooth_random_field(dom, 200 + seed, 0.5, 2, true);
      const double wr = weak_residual(u, phi, ScalarField(dom));
      const FDReport fd = fd_first_variation(u, phi);
      CHECK(fd.discrepancy(wr) <= 1e-6 * (1.0 + std::abs(fd.extrapolated)));
    }
  }
}

TEST_CASE("minimal graphs have summation-by-parts consistent weak residuals") {
  // tilted planes are exact critical points of the discrete area: the weak
  // residual vanishes for every compactly supported direction
  auto dom = unit_grid(2, 7);
  ScalarField lin = linear_field(dom, {0.35, -0.15, 0.25});
  for (unsigned seed : {1u, 2u, 3u}) {
    ScalarField phi = smooth_random_field(dom, 300 + seed, 1.0, 2, true);
    CHECK(std::abs(weak_residual(lin, phi, ScalarField(dom))) <= 1e-13);
  }
}

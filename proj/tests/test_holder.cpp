#include "doctest.h"
#include "helpers.hpp"

using namespace hgraph;
using namespace hgraph::testing;

TEST_CASE("weighted Holder norm of constants is the constant") {
  auto dom = metric_adapted_box(2, 7);
  ScalarField u(dom);
  HolderNorm nc = holder_norm(ScalarField::constant(dom, -2.5), 0.5, u);
  CHECK(nc.seminorm == 0.0);
  CHECK(nc.value == doctest::Approx(2.5));
}

TEST_CASE("weighted Holder norm is positively homogeneous") {
  auto dom = metric_adapted_box(2, 7);
  ScalarField u(dom);
  ScalarField f = smooth_random_field(dom, 81, 0.7);
  HolderNorm n1 = holder_norm(f, 0.5, u);
  HolderNorm n2 = holder_norm(2.0 * f, 0.5, u);
  CHECK(n2.value == doctest::Approx(2.0 * n1.value).epsilon(1e-12));
}

TEST_CASE("alpha outside (0,1) is rejected") {
  auto dom = metric_adapted_box(2, 7);
  ScalarField u(dom);
  ScalarField f = smooth_random_field(dom, 82, 0.5);
  CHECK_THROWS_AS(holder_norm(f, 0.0, u), std::invalid_argument);
  CHECK_THROWS_AS(holder_norm(f, 1.0, u), std::invalid_argument);
  CHECK_THROWS_AS(c2alpha_norm(f, 1.5, u), std::invalid_argument);
}

TEST_CASE("second-order weighted norm: constants and homogeneity") {
  auto dom = metric_adapted_box(2, 7);
  ScalarField u(dom);
  C2AlphaNorm nc = c2alpha_norm(ScalarField::constant(dom, 3.0), 0.5, u);
  CHECK(nc.value == doctest::Approx(3.0).epsilon(1e-12));

  ScalarField f = smooth_random_field(dom, 83, 0.4);
  C2AlphaNorm n1 = c2alpha_norm(f, 0.5, u);
  C2AlphaNorm n2 = c2alpha_norm(2.0 * f, 0.5, u);
  CHECK(n2.value == doctest::Approx(2.0 * n1.value).epsilon(1e-10));
  CHECK(n1.value >= n1.sup);
}

TEST_CASE("norms stabilize under refinement") {
  // smooth fixed profile; the two finest grids agree within 10%
  std::vector<double> norms;
  for (int m : {7, 9, 13}) {
    auto dom = metric_adapted_box(2, m);
    ScalarField u(dom);
    ScalarField f = ScalarField::from(dom, [](const std::vector<double>& x) {
      return std::cos(3.14159265358979 * x[0]) * std::sin(3.14159265358979 * x[1]) + 0.5 * x[2];
    });
    norms.push_back(holder_norm(f, 0.5, u).value);
  }
  CHECK(std::abs(norms[2] - norms[1]) <= 0.10 * norms[1]);
}

TEST_CASE("sampling kicks in beyond the all-pairs threshold") {
  auto dom = metric_adapted_box(2, 9);  // interior 7^4 = 2401 <= default threshold
  ScalarField u(dom);
  ScalarField f = smooth_random_field(dom, 84, 0.5);
  HolderOptions opts;
  opts.all_pairs_threshold = 100;  // force sampling
  opts.sampled_sources = 32;
  HolderNorm sampled = holder_norm(f, 0.5, u, opts);
  CHECK(sampled.sampled);
  HolderNorm full = holder_norm(f, 0.5, u);
  CHECK_FALSE(full.sampled);
  // a sampled sup never exceeds the full sup and should capture most of it
  CHECK(sampled.value <= full.value + 1e-12);
  CHECK(sampled.value >= 0.5 * full.value);
}

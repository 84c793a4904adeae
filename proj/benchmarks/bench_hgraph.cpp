#include <benchmark/benchmark.h>

#include "hgraph/hgraph.hpp"

using namespace hgraph;

namespace {

static void BM_Area(benchmark::State& state) {
  auto dom = GridDomain::unit_box(2, static_cast<int>(state.range(0)));
  ScalarField u = smooth_random_field(dom, 1, 0.3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(area(u).value);
  }
  state.SetItemsProcessed(state.iterations() * dom->num_nodes());
}
BENCHMARK(BM_Area)->Arg(7)->Arg(9)->Arg(13);

static void BM_AssembleStability(benchmark::State& state) {
  auto dom = GridDomain::unit_box(2, static_cast<int>(state.range(0)));
  ScalarField u = smooth_random_field(dom, 1, 0.3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(StabilityOperator::assemble(u).hessian_interior().nonZeros());
  }
}
BENCHMARK(BM_AssembleStability)->Arg(7)->Arg(9);

static void BM_NewtonSolve(benchmark::State& state) {
  auto dom = GridDomain::unit_box(2, static_cast<int>(state.range(0)));
  ScalarField phi = smooth_random_field(dom, 5, 0.05);
  SolverConfig cfg;
  cfg.certify_stability = false;
  for (auto _ : state) {
    auto [u, rep] = solve_dirichlet(dom, phi, nullptr, cfg);
    benchmark::DoNotOptimize(rep.final_residual);
  }
}
BENCHMARK(BM_NewtonSolve)->Arg(7)->Arg(9)->Unit(benchmark::kMillisecond);

static void BM_ControlDistance(benchmark::State& state) {
  auto dom = metric_adapted_box(2, static_cast<int>(state.range(0)));
  ScalarField u(dom);
  std::vector<int> c(4, (static_cast<int>(state.range(0)) - 1) / 2);
  const NodeIndex src = dom->flat_index(c);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cc_distance(u, src).max_snap_error);
  }
  state.SetItemsProcessed(state.iterations() * dom->num_nodes());
}
BENCHMARK(BM_ControlDistance)->Arg(13)->Arg(17)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

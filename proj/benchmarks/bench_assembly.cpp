#include <benchmark/benchmark.h>

#include "hydrodg/assembly.hpp"
#include "hydrodg/scenarios.hpp"

namespace {

using namespace hydrodg;

Mesh2D bench_mesh(int columns, int layers) {
  std::vector<double> nodes(columns + 1);
  for (int i = 0; i <= columns; ++i) nodes[i] = 100.0 * i / columns;
  return build_column_mesh(nodes, layers, [](double x) { return 0.005 * x; },
                           [](double) { return 5.0; });
}

void BM_AssembleMass(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const Mesh2D mesh = bench_mesh(32, 8);
  const RefBlocks rb = make_ref_blocks(p);
  for (auto _ : state) {
    BlockOperator op = assemble_mass(mesh, rb);
    benchmark::DoNotOptimize(op);
  }
  state.SetItemsProcessed(state.iterations() * mesh.num_elements());
}
BENCHMARK(BM_AssembleMass)->Arg(0)->Arg(1)->Arg(2);

void BM_AssembleEdgeQ(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const Mesh2D mesh = bench_mesh(32, 8);
  const RefBlocks rb = make_ref_blocks(p);
  EdgeSet interior;
  for (int k = 0; k < mesh.num_elements(); ++k)
    for (int n = 1; n <= 4; ++n)
      if (mesh.edge(k, n).neighbor >= 0) interior.add(k, n);
  for (auto _ : state) {
    BlockOperator op = assemble_edge_phi_phi_nu(mesh, rb, interior, 1, true);
    benchmark::DoNotOptimize(op);
  }
  state.SetItemsProcessed(state.iterations() * interior.items.size());
}
BENCHMARK(BM_AssembleEdgeQ)->Arg(1)->Arg(2);

void BM_SweStep(benchmark::State& state) {
  const int level = static_cast<int>(state.range(0));
  SweProblem swe = scenarios::make_table1_swe(level, 1);
  const double dt = scenarios::swe_dt(1, level);
  for (auto _ : state) {
    swe.step(dt);
    benchmark::DoNotOptimize(swe.state().u1.data);
  }
  state.SetItemsProcessed(state.iterations() * swe.mesh().num_elements());
}
BENCHMARK(BM_SweStep)->Arg(1)->Arg(2)->Arg(3);

void BM_DarcyStep(benchmark::State& state) {
  const int level = static_cast<int>(state.range(0));
  DarcyProblem darcy = scenarios::make_table1_darcy(level, 1);
  const double dt = scenarios::darcy_dt(1, level);
  for (auto _ : state) {
    darcy.step(dt);
    benchmark::DoNotOptimize(darcy.state().head.data);
  }
  state.SetItemsProcessed(state.iterations() * darcy.mesh().num_elements());
}
BENCHMARK(BM_DarcyStep)->Arg(1)->Arg(2)->Arg(3);

}  // namespace

BENCHMARK_MAIN();

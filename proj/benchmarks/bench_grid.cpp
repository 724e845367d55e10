#include <benchmark/benchmark.h>

#include "isores/perimeter.hpp"
#include "isores/profiles.hpp"
#include "isores/solver.hpp"

using namespace isores;

namespace {

Grid halfspace_grid(int dim, double v, int axis_cells) {
  Matrix A = Matrix::Zero(1, dim);
  A(0, dim - 1) = 1.0;
  const ConvexBody H(HPolyhedron(A, Vector::Zero(1)));
  const double R = SolverConstants::defaults(dim).R0;
  const double h = snap_pitch(2.0 * R * std::pow(v, 1.0 / dim) / axis_cells);
  return build_domain(H, dim, v, R, h);
}

void BM_Perimeter3D(benchmark::State& st) {
  const Grid g = halfspace_grid(3, 1.0, static_cast<int>(st.range(0)));
  const Stencil s = crofton_stencil(g);
  DiscreteSet E(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g.is_free(i) && g.cell_center(i).norm() < 0.8) E.insert(i);
  for (auto _ : st) benchmark::DoNotOptimize(perimeter_split(E, g, s).total());
  st.counters["cells"] = static_cast<double>(g.size());
}
BENCHMARK(BM_Perimeter3D)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_Solve2D(benchmark::State& st) {
  const Grid g = halfspace_grid(2, 1.0, static_cast<int>(st.range(0)));
  SolverConfig cfg;
  cfg.diagnostics = false;
  for (auto _ : st) benchmark::DoNotOptimize(solve(g, 1.0, cfg).energy);
}
BENCHMARK(BM_Solve2D)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_Solve3D(benchmark::State& st) {
  const Grid g = halfspace_grid(3, 1.0, 48);
  SolverConfig cfg;
  cfg.diagnostics = false;
  for (auto _ : st) benchmark::DoNotOptimize(solve(g, 1.0, cfg).energy);
}
BENCHMARK(BM_Solve3D)->Unit(benchmark::kMillisecond)->Iterations(3);

}  // namespace

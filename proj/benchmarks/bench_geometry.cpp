#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "isores/asymdim.hpp"
#include "isores/double_description.hpp"
#include "isores/profiles.hpp"

using namespace isores;

namespace {

// Polytope cut out by m random tangent planes of the unit sphere.
std::pair<Matrix, Vector> random_polytope(int dim, int m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Matrix A(m, dim);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < dim; ++j) A(i, j) = g(rng);
    A.row(i).normalize();
  }
  return {A, Vector::Ones(m)};
}

void BM_HToV(benchmark::State& st) {
  const auto [A, b] = random_polytope(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)), 3);
  for (auto _ : st) benchmark::DoNotOptimize(dd::h_to_v(A, b));
}
BENCHMARK(BM_HToV)->Args({3, 20})->Args({3, 60})->Args({4, 30});

void BM_DstarPolyhedral(benchmark::State& st) {
  Matrix A(6, 4);
  A << 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, -1, 0, 0, 0, 0, 1, 0, 0, 0, -1;
  Vector b(6);
  b << 0, 0, 1, 0, 1, 0;
  for (auto _ : st) {
    const HPolyhedron P(A, b);  // fresh body so the generator cache is cold
    benchmark::DoNotOptimize(dstar_polyhedral(P));
  }
}
BENCHMARK(BM_DstarPolyhedral);

void BM_DstarOracleParaboloid(benchmark::State& st) {
  const ConvexBody P(make_paraboloid(static_cast<int>(st.range(0))));
  for (auto _ : st) benchmark::DoNotOptimize(dstar_oracle(P).dstar);
}
BENCHMARK(BM_DstarOracleParaboloid)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_BallAttachment(benchmark::State& st) {
  Matrix Z = Matrix::Zero(3, 1);
  Z(0, 0) = 1;
  Matrix A(4, 2);
  A << 1, 0, -1, 0, 0, 1, 0, -1;
  Vector b(4);
  b << 1, 0, 1, 0;
  const CylinderBody cyl(Z, HPolyhedron(A, b));
  const double r = static_cast<double>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(ball_attachment(cyl, r).residue);
}
BENCHMARK(BM_BallAttachment)->Arg(100)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

#include "rshell/linalg.hpp"
#include "rshell/rotation.hpp"
#include "rshell/solver.hpp"

#include <benchmark/benchmark.h>

#include <numbers>
#include <random>

namespace {

using namespace rshell;

ShellProblem cylinder_problem(int n) {
  const SurfaceGeometry s(CylinderChart{1.0}, Domain{0.0, 0.5 * std::numbers::pi, 0.0, 1.0});
  std::array<EdgeCondition, 4> edges{};
  edges[0].kind = BoundaryKind::clamped;
  Loads loads;
  loads.surface_force = Vec3(0.0, 0.0, -1e-3);
  return ShellProblem(s, Grid{s.domain(), n, n}, Material(IsotropicSimple{1.0, 0.3, 0.05}), edges, loads);
}

ShellConfiguration jittered(const ShellProblem& p, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 0.01);
  ShellConfiguration c = p.discretization().reference_configuration();
  for (std::size_t k = 0; k < c.y.size(); ++k) {
    c.y[k] += Vec3(normal(rng), normal(rng), normal(rng));
    c.q[k] = quat::retract(c.q[k], Vec3(normal(rng), normal(rng), normal(rng)));
  }
  return c;
}

void BM_Energy(benchmark::State& state) {
  const ShellProblem p = cylinder_problem(static_cast<int>(state.range(0)));
  const ShellConfiguration c = jittered(p, 1);
  const AssemblyOptions opts{static_cast<int>(state.range(1))};
  for (auto _ : state) benchmark::DoNotOptimize(total_functional(p, c, opts));
  state.SetItemsProcessed(state.iterations() * p.discretization().grid().num_cells());
}
BENCHMARK(BM_Energy)->Args({17, 1})->Args({33, 1})->Args({65, 1})->Args({65, 4})->UseRealTime();

void BM_Gradient(benchmark::State& state) {
  const ShellProblem p = cylinder_problem(static_cast<int>(state.range(0)));
  const ShellConfiguration c = jittered(p, 2);
  const AssemblyOptions opts{static_cast<int>(state.range(1))};
  for (auto _ : state) benchmark::DoNotOptimize(functional_gradient(p, c, opts));
  state.SetItemsProcessed(state.iterations() * p.discretization().grid().num_cells());
}
BENCHMARK(BM_Gradient)->Args({17, 1})->Args({33, 1})->Args({65, 1})->Args({65, 4})->UseRealTime();

void BM_Polar(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat3 t = Mat3::Identity();
  for (int i = 0; i < 9; ++i) t(i) += 0.3 * u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(polar_decompose_3x3(t));
}
BENCHMARK(BM_Polar);

void BM_Minimize(benchmark::State& state) {
  const ShellProblem p = cylinder_problem(static_cast<int>(state.range(0)));
  MinimizeOptions o;
  o.grad_tol = 1e-8;
  for (auto _ : state) benchmark::DoNotOptimize(minimize(p, o).final_energy);
}
BENCHMARK(BM_Minimize)->Arg(9)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

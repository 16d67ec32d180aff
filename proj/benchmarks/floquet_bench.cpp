#include <cmath>

#include <benchmark/benchmark.h>

#include "floquet/floquet_operator.hpp"
#include "floquet/mourre.hpp"
#include "floquet/transforms.hpp"

namespace {

using namespace floquet;

void BM_SplitStep(benchmark::State& state) {
  const int n_points = static_cast<int>(state.range(0));
  const SimParams p(0.5, 0.2, builtin_potential("cosine"), make_grid(n_points, 24.0),
                    32, 4096);
  const SplitStepPropagator prop(p);
  const HermiteBasis basis = build_hermite_basis(p.grid(), 1);
  Eigen::VectorXcd samples = basis.synthesis().col(0).cast<std::complex<double>>();
  double t = 0.0;
  for (auto _ : state) {
    prop.step_in_place(samples, t, p.dt());
    t += p.dt();
    benchmark::DoNotOptimize(samples.data());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SplitStep)->Arg(512)->Arg(2048)->Arg(8192);

void BM_WeylLinear(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const HermiteBasis basis =
      build_hermite_basis(make_grid(1024, required_half_width(n) + 2.0), n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        weyl_linear([](double s) { return std::cos(s); }, 0.6, 0.8, 0.1, basis));
  }
}
BENCHMARK(BM_WeylLinear)->Arg(64)->Arg(128)->Arg(256);

void BM_MourreLowerBound(benchmark::State& state) {
  const SimParams p(0.5, 0.2, builtin_potential("cosine"), make_grid(512, 18.0),
                    static_cast<int>(state.range(0)), 256);
  for (auto _ : state) benchmark::DoNotOptimize(mourre_lower_bound(p, 16));
}
BENCHMARK(BM_MourreLowerBound)->Arg(48)->Arg(96)->Unit(benchmark::kMillisecond);

void BM_FloquetMatrix(benchmark::State& state) {
  const SimParams p(0.5, 0.2, builtin_potential("cosine"), make_grid(256, 14.0),
                    static_cast<int>(state.range(0)), 256);
  for (auto _ : state) benchmark::DoNotOptimize(floquet_matrix(p));
}
BENCHMARK(BM_FloquetMatrix)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

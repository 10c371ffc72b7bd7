#include <benchmark/benchmark.h>

#include <landau/coefficients.hpp>
#include <landau/fields.hpp>

using namespace landau;

namespace {

GridSpec vgrid(int n) {
    GridSpec g;
    g.x_dims = 0;
    g.v_count = n;
    g.v_extent = 6.0;
    return g;
}

void BM_CoefficientsFFT(benchmark::State& state) {
    const Field f = maxwellian(vgrid(static_cast<int>(state.range(0))), 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(coefficients(f, 0.5, Engine::FFT));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CoefficientsFFT)->Arg(16)->Arg(24)->Arg(32)->Arg(48)->Unit(benchmark::kMillisecond);

void BM_CoefficientEngineReuse(benchmark::State& state) {
    const GridSpec g = vgrid(static_cast<int>(state.range(0)));
    const CoefficientEngine engine(g, 0.5);
    const Field f = maxwellian(g, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(engine(f));
}
BENCHMARK(BM_CoefficientEngineReuse)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_CoefficientsDirect(benchmark::State& state) {
    const Field f = maxwellian(vgrid(static_cast<int>(state.range(0))), 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(coefficients(f, 0.5, Engine::Direct));
}
BENCHMARK(BM_CoefficientsDirect)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_CollisionOperator(benchmark::State& state) {
    const Field f = maxwellian(vgrid(static_cast<int>(state.range(0))), 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(collision_operator(f, 1.0, Engine::FFT));
}
BENCHMARK(BM_CollisionOperator)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

#include <benchmark/benchmark.h>

#include <landau/exponential_weight.hpp>
#include <landau/fields.hpp>
#include <landau/solver.hpp>

using namespace landau;

namespace {

struct Setup {
    GridSpec grid;
    SolverConfig cfg;
    Field G;
    Field h;

    Setup(int n, Scheme scheme, int x_dims) {
        grid.x_dims = x_dims;
        grid.x_count = 8;
        grid.v_count = n;
        grid.v_extent = 6.0;
        cfg.params = ModelParams::make(0.5);
        cfg.R = 5.0;
        cfg.scheme = scheme;
        h = maxwellian(grid, 1.0);
        G = prepare_initial(to_g(maxwellian(grid, 1e-2), cfg.weight, 0.0), cfg);
    }
};

void BM_Rhs(benchmark::State& state) {
    const Setup s(static_cast<int>(state.range(0)), Scheme::Explicit, static_cast<int>(state.range(1)));
    const LinearizedOperator op(s.grid, s.cfg, {s.h});
    (void)op.rhs(s.G, 0.0);
    for (auto _ : state) benchmark::DoNotOptimize(op.rhs(s.G, 0.0));
}
BENCHMARK(BM_Rhs)->Args({16, 0})->Args({32, 0})->Args({12, 1})->Unit(benchmark::kMillisecond);

void BM_Step(benchmark::State& state) {
    const auto scheme = state.range(1) ? Scheme::IMEX : Scheme::Explicit;
    const Setup s(static_cast<int>(state.range(0)), scheme, 0);
    const LinearizedOperator op(s.grid, s.cfg, {s.h});
    const double dt = op.stable_dt(0.1);
    for (auto _ : state) benchmark::DoNotOptimize(op.step(s.G, 0.0, dt));
}
BENCHMARK(BM_Step)->Args({16, 0})->Args({16, 1})->Args({32, 0})->Args({32, 1})->Unit(benchmark::kMillisecond);

void BM_OperatorSetup(benchmark::State& state) {
    const Setup s(static_cast<int>(state.range(0)), Scheme::IMEX, 0);
    for (auto _ : state) {
        const LinearizedOperator op(s.grid, s.cfg, {s.h});
        benchmark::DoNotOptimize(op.rhs(s.G, 0.0));
    }
}
BENCHMARK(BM_OperatorSetup)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

#include <benchmark/benchmark.h>

#include <landau/multiindex.hpp>
#include <landau/weight_audit.hpp>
#include <landau/weights.hpp>

using namespace landau;

namespace {

void BM_EnumerateIndices(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_indices(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_EnumerateIndices)->Arg(4)->Arg(10);

void BM_WeightAudit(benchmark::State& state) {
    const auto h = WeightHierarchy::main(ModelParams::make(1.0, Rational(1, 10)));
    for (auto _ : state) benchmark::DoNotOptimize(check_split_inequalities(h));
}
BENCHMARK(BM_WeightAudit)->Unit(benchmark::kMillisecond);

}  // namespace

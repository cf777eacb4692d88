// Serial against OpenMP paths of the parallel kernels. Arg 0 is serial, 1 parallel.
#include "resonf/arithmetic.hpp"

#include <benchmark/benchmark.h>

using namespace resonf;

namespace {

TangentialSet generic4() { return TangentialSet(2, {{30, 30}, {2, -10}, {-34, 31}, {7, 40}}); }

const Catalog& catalog21()
{
    static const Catalog c = enumerate_catalog(2, 1);
    return c;
}

void BM_window_edges(benchmark::State& st)
{
    auto S = generic4();
    for (auto _ : st) benchmark::DoNotOptimize(window_edges(S, 1, 120, st.range(0) == 1));
}
BENCHMARK(BM_window_edges)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_constraint_4(benchmark::State& st)
{
    auto S = generic4();
    for (auto _ : st) benchmark::DoNotOptimize(check_constraint_4(S, 1, -1, st.range(0) == 1));
}
BENCHMARK(BM_constraint_4)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_catalog(benchmark::State& st)
{
    for (auto _ : st) benchmark::DoNotOptimize(enumerate_catalog(2, 1, -1, st.range(0) == 1));
}
BENCHMARK(BM_catalog)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_search(benchmark::State& st)
{
    SearchOptions o;
    o.m = 4;
    o.radius = 40;
    o.parallel = st.range(0) == 1;
    const Catalog& cat = catalog21();
    for (auto _ : st) benchmark::DoNotOptimize(find_arithmetically_generic(o, cat));
}
BENCHMARK(BM_search)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();

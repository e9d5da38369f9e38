#include <benchmark/benchmark.h>

#include <gridcleave/oracle.hpp>

using namespace gridcleave;

static void BM_EnumeratePartitions(benchmark::State& state) {
    auto inst = gen_random(static_cast<int>(state.range(0)), 2, 7);
    for (auto _ : state) {
        std::size_t count = 0;
        for_each_connected_partition(inst.graph, 16,
                                     [&](const auto&, const auto&) { ++count; });
        benchmark::DoNotOptimize(count);
    }
}
BENCHMARK(BM_EnumeratePartitions)->Arg(10)->Arg(14)->Arg(16);

BENCHMARK_MAIN();

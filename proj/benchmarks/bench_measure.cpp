#include <benchmark/benchmark.h>

#include "waveshell/measure.hpp"

using namespace waveshell;

namespace {

const QuadricShellSet kSet{{15.2, 4.1, 3.0}, {15.26, 4.03, 3.0}, 16.0, 100.0};

void BM_mc_volume(benchmark::State& state) {
    const auto region = default_region(kSet);
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(mc_volume(kSet, region, n, 1).value);
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_mc_volume)->Arg(10000)->Arg(100000);

void BM_slice_sum(benchmark::State& state) {
    const double cell = 1.0 / static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(slice_sum(kSet, cell));
}
BENCHMARK(BM_slice_sum)->Arg(64)->Arg(256);

}  // namespace

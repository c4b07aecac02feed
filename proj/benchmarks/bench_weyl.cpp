#include <benchmark/benchmark.h>

#include "waveshell/weyl.hpp"

using namespace waveshell;

namespace {

void BM_quartic_moment(benchmark::State& state) {
    const int K = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(quartic_moment_plain(K));
}
BENCHMARK(BM_quartic_moment)->Arg(8)->Arg(32)->Arg(64);

void BM_nested_moment_d2(benchmark::State& state) {
    const int K = static_cast<int>(state.range(0));
    const int n_y = nested_moment_min_ny(K, 6.0);
    const int n_t = nested_moment_min_nt(K, 6.0);
    for (auto _ : state) benchmark::DoNotOptimize(nested_moment(K, 6.0, 2, n_y, n_t));
}
BENCHMARK(BM_nested_moment_d2)->Arg(16)->Arg(64)->Arg(128);

void BM_euclid_factor(benchmark::State& state) {
    const EuclidQuadrature quad{400.0, static_cast<int>(state.range(0)), 256};
    for (auto _ : state) benchmark::DoNotOptimize(euclid_factor(6.0, 0.5, quad));
}
BENCHMARK(BM_euclid_factor)->Arg(8000)->Arg(32000);

}  // namespace

#include <benchmark/benchmark.h>

#include "waveshell/datagen.hpp"
#include "waveshell/norms.hpp"
#include "waveshell/rng.hpp"
#include "waveshell/spectral.hpp"

using namespace waveshell;

namespace {

GeometrySpec cube_geom(int g) { return {2, 1, 2.0, {g, g, g / 4 < 2 ? 2 : g / 4}}; }

SpectralField random_field(const GeometrySpec& g, std::uint64_t seed) {
    SpectralField f = zero_field(g);
    CounterRng rng(seed);
    for (auto& c : f.coef) c = rng.next_complex_gaussian();
    return f;
}

void BM_to_physical(benchmark::State& state) {
    const auto g = cube_geom(static_cast<int>(state.range(0)));
    const auto f = random_field(g, 1);
    for (auto _ : state) {
        auto u = to_physical(f);
        benchmark::DoNotOptimize(u.samples.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.total_points()));
}
BENCHMARK(BM_to_physical)->Arg(32)->Arg(64)->Arg(128);

void BM_roundtrip(benchmark::State& state) {
    const auto g = cube_geom(static_cast<int>(state.range(0)));
    const auto f = random_field(g, 2);
    for (auto _ : state) {
        auto back = to_spectral(to_physical(f));
        benchmark::DoNotOptimize(back.coef.data());
    }
}
BENCHMARK(BM_roundtrip)->Arg(32)->Arg(64);

void BM_propagate(benchmark::State& state) {
    const auto g = cube_geom(static_cast<int>(state.range(0)));
    const auto f = random_field(g, 3);
    double t = 0.0;
    for (auto _ : state) {
        t += 0.01;
        auto p = propagate(f, t);
        benchmark::DoNotOptimize(p.coef.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.total_points()));
}
BENCHMARK(BM_propagate)->Arg(32)->Arg(64)->Arg(128);

void BM_spacetime_l4(benchmark::State& state) {
    const GeometrySpec g{2, 1, 2.0, {64, 64, 16}};
    const auto f =
        random_shell_data(g, {8.0, 1.0, {}}, Distribution::UnitModulusRandomPhase, 4);
    const TimeGrid tg{0.0, 1.0, static_cast<int>(state.range(0))};
    for (auto _ : state) benchmark::DoNotOptimize(spacetime_lp_norm(f, 4.0, tg));
}
BENCHMARK(BM_spacetime_l4)->Arg(8)->Arg(64);

void BM_shell_indices(benchmark::State& state) {
    const auto g = cube_geom(static_cast<int>(state.range(0)));
    const auto lat = build_lattice(g);
    for (auto _ : state) {
        auto idx = shell_indices(lat, {8.0, 1.0, {}});
        benchmark::DoNotOptimize(idx.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.total_points()));
}
BENCHMARK(BM_shell_indices)->Arg(64)->Arg(128);

}  // namespace

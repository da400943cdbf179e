// Microbenchmarks for the hot paths: the transform, radial convolution,
// maximal operators, exact table construction, and the Cesàro cache.

#include <benchmark/benchmark.h>

#include "cubeharm/cesaro.hpp"
#include "cubeharm/cube_function.hpp"
#include "cubeharm/harness.hpp"
#include "cubeharm/krawtchouk.hpp"
#include "cubeharm/maximal.hpp"
#include "cubeharm/radial.hpp"
#include "cubeharm/rng.hpp"

namespace {

cubeharm::CubeFunction random_f(int n, std::uint64_t seed) {
    cubeharm::SplitMix64 rng(seed);
    cubeharm::CubeFunction f(n);
    for (double& v : f.values()) v = 2.0 * rng.next_double() - 1.0;
    return f;
}

void BM_wht(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const cubeharm::CubeFunction f = random_f(n, 1);
    for (auto _ : state) benchmark::DoNotOptimize(cubeharm::wht_normalized(f));
    state.SetItemsProcessed(state.iterations() * (std::int64_t(1) << n));
}
BENCHMARK(BM_wht)->Arg(10)->Arg(14)->Arg(18)->Arg(20);

void BM_radial_convolve(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const cubeharm::CubeFunction f = random_f(n, 2);
    const cubeharm::RadialProfile sigma = cubeharm::sphere_kernel(n, n / 2);
    for (auto _ : state) benchmark::DoNotOptimize(cubeharm::radial_convolve(sigma, f));
    state.SetItemsProcessed(state.iterations() * (std::int64_t(1) << n));
}
BENCHMARK(BM_radial_convolve)->Arg(10)->Arg(14)->Arg(18);

void BM_maximal(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    cubeharm::CubeFunction f = random_f(n, 3);
    for (double& v : f.values()) v = std::abs(v);
    for (auto _ : state)
        benchmark::DoNotOptimize(cubeharm::maximal_function(f, cubeharm::MaximalVariant::full));
    state.SetItemsProcessed(state.iterations() * (std::int64_t(1) << n));
}
BENCHMARK(BM_maximal)->Arg(10)->Arg(14)->Arg(16);

void BM_krawtchouk_table(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(cubeharm::build_table(n));
}
BENCHMARK(BM_krawtchouk_table)->Arg(16)->Arg(24)->Arg(32);

void BM_even_sphere_cache(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const cubeharm::CubeFunction f = random_f(n, 4);
    for (auto _ : state) benchmark::DoNotOptimize(cubeharm::EvenSphereCache(f));
    state.SetItemsProcessed(state.iterations() * (std::int64_t(1) << n));
}
BENCHMARK(BM_even_sphere_cache)->Arg(12)->Arg(16);

void BM_weak_type_bound(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(cubeharm::delta_lower_bound(n, 2));
}
BENCHMARK(BM_weak_type_bound)->Arg(16)->Arg(24);

} // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "ambit/levy.hpp"

namespace {

void bench_sampler(benchmark::State& state, const ambit::LevyBasisSpec& basis) {
    ambit::RandomStream rng(1234);
    double sink = 0.0;
    for (auto _ : state) sink += basis.sample_cell(1e-4, rng);
    benchmark::DoNotOptimize(sink);
    state.SetItemsProcessed(state.iterations());
}

}  // namespace

BENCHMARK_CAPTURE(bench_sampler, gaussian, ambit::LevyBasisSpec::gaussian(0.0, 1.0));
BENCHMARK_CAPTURE(bench_sampler, poisson, ambit::LevyBasisSpec::poisson(2.0, 0.5));
BENCHMARK_CAPTURE(bench_sampler, gamma, ambit::LevyBasisSpec::gamma(1.5, 10.0));
BENCHMARK_CAPTURE(bench_sampler, stable, ambit::LevyBasisSpec::stable_skewed(1.5, 1.0));
BENCHMARK_CAPTURE(bench_sampler, nig, ambit::LevyBasisSpec::nig(9.0, 0.5, 1.0, 0.3));

static void bench_cumulant_nig(benchmark::State& state) {
    const ambit::LevyBasisSpec basis = ambit::LevyBasisSpec::nig(9.0, 0.5, 1.0, 0.3);
    double xi = 0.0, sink = 0.0;
    for (auto _ : state) {
        xi = xi < 8.0 ? xi + 0.001 : 0.0;
        sink += basis.cumulant(xi);
    }
    benchmark::DoNotOptimize(sink);
}
BENCHMARK(bench_cumulant_nig);

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "ambit/simulate.hpp"

// Generation throughput in grid points per second, including cell
// sampling, windowed row sums and the exponential.
static void bench_generate(benchmark::State& state) {
    const ambit::LevyBasisSpec basis = ambit::LevyBasisSpec::gaussian(0.0, 1.0);
    const ambit::AmbitBoundary b =
        ambit::build_boundary(0.2, basis, 0.01, 1.0, 1.2);
    ambit::LatticeConfig lat;
    lat.dx = 0.01;
    lat.dt = 0.01;
    lat.nx = static_cast<int>(state.range(0));
    lat.nt = 50;
    lat.realizations = 1;
    lat.seed = 9;
    for (auto _ : state) {
        lat.seed += 1;
        ambit::generate(basis, b, lat, [](ambit::FieldRealization&& f) {
            benchmark::DoNotOptimize(f.values.data());
        });
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(lat.nx) * lat.nt);
}
BENCHMARK(bench_generate)->Arg(4000)->Arg(10000)->Unit(benchmark::kMillisecond);

static void bench_generate_reference_path(benchmark::State& state) {
    const ambit::LevyBasisSpec basis = ambit::LevyBasisSpec::gaussian(0.0, 1.0);
    const ambit::AmbitBoundary b =
        ambit::build_boundary(0.3, basis, 0.1, 0.5, 0.6);
    ambit::LatticeConfig lat;
    lat.dx = 0.05;
    lat.dt = 0.05;
    lat.nx = 200;
    lat.nt = 20;
    lat.realizations = 1;
    lat.seed = 9;
    ambit::GenerateOptions opt;
    opt.reference_path = true;
    for (auto _ : state) {
        lat.seed += 1;
        ambit::generate(basis, b, lat, [](ambit::FieldRealization&& f) {
            benchmark::DoNotOptimize(f.values.data());
        }, opt);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(lat.nx) * lat.nt);
}
BENCHMARK(bench_generate_reference_path)->Unit(benchmark::kMillisecond);

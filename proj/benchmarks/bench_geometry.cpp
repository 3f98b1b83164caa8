#include <benchmark/benchmark.h>

#include "ambit/correlators.hpp"
#include "ambit/geometry.hpp"

namespace {

ambit::AmbitBoundary default_boundary() {
    return ambit::build_boundary(0.2, ambit::LevyBasisSpec::gaussian(0.0, 1.0), 0.01, 1.0, 1.2);
}

}  // namespace

static void bench_overlap_volume(benchmark::State& state) {
    const ambit::AmbitBoundary b = default_boundary();
    double dx = 0.0, sink = 0.0;
    for (auto _ : state) {
        dx = dx < 10.0 ? dx + 0.37 : 0.0;
        sink += ambit::overlap_volume(b, dx, 0.21);
    }
    benchmark::DoNotOptimize(sink);
}
BENCHMARK(bench_overlap_volume);

static void bench_multiplicity_three_point(benchmark::State& state) {
    const ambit::AmbitBoundary b = default_boundary();
    const std::vector<ambit::SpacetimePoint> pts = {{0.0, 0.0}, {0.7, -0.15}, {1.6, -0.4}};
    const std::vector<int> orders = {1, 2, 4};
    for (auto _ : state) {
        const ambit::MultiplicityProfile prof = ambit::multiplicity_profile(b, pts, orders, 1e-8);
        benchmark::DoNotOptimize(prof.entries.data());
    }
}
BENCHMARK(bench_multiplicity_three_point);

static void bench_n_point_four(benchmark::State& state) {
    const ambit::LevyBasisSpec basis = ambit::LevyBasisSpec::gaussian(0.0, 1.0);
    const ambit::AmbitBoundary b = default_boundary();
    const std::vector<ambit::SpacetimePoint> pts = {{0.0, 0.0}, {0.5, 0.0}, {1.2, 0.0}, {2.4, 0.0}};
    const std::vector<int> orders = {1, 2, 1, 3};
    double sink = 0.0;
    for (auto _ : state) sink += ambit::n_point(basis, b, pts, orders, 1e-9);
    benchmark::DoNotOptimize(sink);
}
BENCHMARK(bench_n_point_four);

static void bench_ambit_mask(benchmark::State& state) {
    const ambit::AmbitBoundary b = default_boundary();
    for (auto _ : state) {
        const ambit::AmbitMask mask = ambit::ambit_mask(b, 0.01, 0.01);
        benchmark::DoNotOptimize(mask.rows.data());
    }
}
BENCHMARK(bench_ambit_mask);

#include <doctest.h>

#include <cmath>
#include <mutex>
#include <vector>

#include "ambit/correlators.hpp"
#include "ambit/estimate.hpp"
#include "ambit/simulate.hpp"
#include "oracles.hpp"

using namespace ambit;

namespace {

// Compact geometry so simulation unit tests stay fast: kappa = 1,
// L_scal = 3, Vol(S0) ~ 0.813.
AmbitBoundary small_boundary() {
    return build_boundary(0.3, LevyBasisSpec::gaussian(0.0, 1.0), 0.1, 0.5, 0.6);
}

LatticeConfig small_lattice(int nx, int nt, int realizations, std::uint64_t seed) {
    LatticeConfig lat;
    lat.dx = 0.05;
    lat.dt = 0.05;
    lat.nx = nx;
    lat.nt = nt;
    lat.realizations = realizations;
    lat.seed = seed;
    return lat;
}

std::vector<FieldRealization> collect(const LevyBasisSpec& basis, const AmbitBoundary& b,
                                      const LatticeConfig& lat, const GenerateOptions& opt = {}) {
    std::vector<FieldRealization> out(static_cast<std::size_t>(lat.realizations));
    std::mutex m;
    generate(basis, b, lat, [&](FieldRealization&& f) {
        std::lock_guard<std::mutex> lock(m);
        out[static_cast<std::size_t>(f.index)] = std::move(f);
    }, opt);
    return out;
}

}  // namespace

TEST_CASE("lattice invariants are enforced") {
    const AmbitBoundary b = small_boundary();
    LatticeConfig lat = small_lattice(100, 10, 1, 1);
    CHECK(validate_lattice(lat, b).empty());

    lat.dt = 0.7;  // >= T
    CHECK(!validate_lattice(lat, b).empty());

    lat = small_lattice(40, 10, 1, 1);  // narrower than the mask
    CHECK(!validate_lattice(lat, b).empty());

    lat = small_lattice(100, 10, 1, 1);
    lat.burn_in_depth = 3;  // below the mask depth
    CHECK(!validate_lattice(lat, b).empty());
}

TEST_CASE("zero-noise hook produces the unit field") {
    const AmbitBoundary b = small_boundary();
    GenerateOptions opt;
    opt.cell_override = [](double, RandomStream&) { return 0.0; };
    const auto fields = collect(LevyBasisSpec::gaussian(0.0, 1.0), b, small_lattice(80, 6, 2, 9), opt);
    for (const FieldRealization& f : fields)
        for (double v : f.values) CHECK(v == 1.0);
}

TEST_CASE("log-field at a fixed point is normal with the mask moments (KS)") {
    const AmbitBoundary b = small_boundary();
    const LevyBasisSpec basis = LevyBasisSpec::gaussian(0.0, 1.0);
    const LatticeConfig lat = small_lattice(80, 1, 10000, 31);
    const AmbitMask mask = ambit_mask(b, lat.dx, lat.dt);
    const double area = mask.area(lat.dx, lat.dt);

    std::vector<double> samples(static_cast<std::size_t>(lat.realizations));
    std::mutex m;
    generate(basis, b, lat, [&](FieldRealization&& f) {
        std::lock_guard<std::mutex> lock(m);
        samples[static_cast<std::size_t>(f.index)] = std::log(f.at(0, 0));
    });
    const double d = oracle::ks_one_sample(
        samples, [&](double x) { return oracle::normal_cdf(x, 0.0, std::sqrt(area)); });
    CHECK(d < 1.628 / std::sqrt(10000.0));
}

TEST_CASE("grid points with disjoint masks are uncorrelated") {
    const AmbitBoundary b = small_boundary();
    const int reps = 4000;
    const LatticeConfig lat = small_lattice(160, 1, reps, 77);
    std::vector<double> a(reps), c(reps);
    std::mutex m;
    generate(LevyBasisSpec::gaussian(0.0, 1.0), b, lat, [&](FieldRealization&& f) {
        std::lock_guard<std::mutex> lock(m);
        a[static_cast<std::size_t>(f.index)] = f.at(0, 0);
        c[static_cast<std::size_t>(f.index)] = f.at(80, 0);  // 4.0 apart > L = 3
    });
    double ma = 0.0, mc = 0.0;
    for (int r = 0; r < reps; ++r) {
        ma += a[r];
        mc += c[r];
    }
    ma /= reps;
    mc /= reps;
    double cov = 0.0, va = 0.0, vc = 0.0;
    for (int r = 0; r < reps; ++r) {
        cov += (a[r] - ma) * (c[r] - mc);
        va += (a[r] - ma) * (a[r] - ma);
        vc += (c[r] - mc) * (c[r] - mc);
    }
    const double corr = cov / std::sqrt(va * vc);
    CHECK(std::abs(corr) < 3.0 / std::sqrt(static_cast<double>(reps)));
}

TEST_CASE("same seed reproduces fields for any thread count") {
    const AmbitBoundary b = small_boundary();
    LatticeConfig lat = small_lattice(90, 8, 6, 123);
    lat.threads = 1;
    const auto serial = collect(LevyBasisSpec::gamma(1.5, 10.0), b, lat);
    lat.threads = 4;
    const auto parallel = collect(LevyBasisSpec::gamma(1.5, 10.0), b, lat);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t r = 0; r < serial.size(); ++r) {
        REQUIRE(serial[r].values.size() == parallel[r].values.size());
        for (std::size_t k = 0; k < serial[r].values.size(); ++k)
            CHECK(serial[r].values[k] == parallel[r].values[k]);
    }
}

TEST_CASE("incremental window path agrees with full stencil sums") {
    const AmbitBoundary b = small_boundary();
    const LatticeConfig lat = small_lattice(70, 9, 2, 55);
    const auto fast = collect(LevyBasisSpec::gaussian(0.1, 0.8), b, lat);
    GenerateOptions opt;
    opt.reference_path = true;
    const auto slow = collect(LevyBasisSpec::gaussian(0.1, 0.8), b, lat, opt);
    for (std::size_t r = 0; r < fast.size(); ++r)
        for (std::size_t k = 0; k < fast[r].values.size(); ++k) {
            const double rel =
                std::abs(fast[r].values[k] - slow[r].values[k]) / slow[r].values[k];
            CHECK(rel <= 1e-10);
        }
}

TEST_CASE("ensemble mean converges to the analytic mean field") {
    const AmbitBoundary b = small_boundary();
    const LevyBasisSpec basis = LevyBasisSpec::gaussian(0.0, 1.0);
    const LatticeConfig lat = small_lattice(400, 100, 100, 2025);
    std::vector<double> means(static_cast<std::size_t>(lat.realizations));
    std::mutex m;
    generate(basis, b, lat, [&](FieldRealization&& f) {
        double s = 0.0;
        for (double v : f.values) s += v;
        std::lock_guard<std::mutex> lock(m);
        means[static_cast<std::size_t>(f.index)] = s / static_cast<double>(f.values.size());
    });
    double mean = 0.0;
    for (double v : means) mean += v;
    mean /= static_cast<double>(means.size());
    double ss = 0.0;
    for (double v : means) ss += (v - mean) * (v - mean);
    const double se = std::sqrt(ss / (means.size() - 1) / means.size());
    CHECK(std::abs(mean - mean_field(basis, b)) <= 3.0 * se);
}

TEST_CASE("empirical two-point tracks the analytic correlator across the scaling range") {
    const AmbitBoundary b = small_boundary();
    const LevyBasisSpec basis = LevyBasisSpec::gaussian(0.0, 1.0);
    const LatticeConfig lat = small_lattice(400, 100, 100, 404);
    std::vector<FieldRealization> fields = collect(basis, b, lat);
    std::vector<int> lags;
    for (int k = 2; k <= 10; ++k) lags.push_back(k);
    const auto est = empirical_two_point(fields, Axis::temporal, lags, {1, 1});
    for (const auto& e : est) {
        const double analytic = two_point(basis, b, 0.0, e.lag);
        CAPTURE(e.lag);
        CHECK(std::abs(e.estimate - analytic) <= 3.0 * e.std_error);
    }
}

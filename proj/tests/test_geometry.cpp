#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "ambit/geometry.hpp"
#include "oracles.hpp"

using namespace ambit;

namespace {

const oracle::Scaling kDefault{0.2, 0.01, 1.0, 1.2, 1.0};

AmbitBoundary default_boundary() {
    return build_boundary(0.2, LevyBasisSpec::gaussian(0.0, 1.0), 0.01, 1.0, 1.2);
}

}  // namespace

TEST_CASE("overlap vanishes beyond the decorrelation scales") {
    const AmbitBoundary b = default_boundary();
    CHECK(overlap_volume(b, 0.0, 1.2) == 0.0);
    CHECK(overlap_volume(b, 3.0, 1.5) == 0.0);
    CHECK(overlap_volume(b, 20.0, 0.0) == 0.0);  // dx >= g(0)+g(0)
    CHECK(overlap_volume(b, 11.0, 0.1) == 0.0);  // dx >= g(dt)+g(0) = 11
}

TEST_CASE("temporal overlap matches the closed form across the scaling range") {
    const AmbitBoundary b = default_boundary();
    // frozen spot value: 0.2*ln(10) + 0.02
    CHECK(overlap_volume(b, 0.0, 0.1) == doctest::Approx(0.4805170185988091).epsilon(1e-10));
    for (int k = 0; k < 50; ++k) {
        const double dt = 0.01 * std::pow(100.0, k / 49.0);
        const double v = overlap_volume(b, 0.0, dt, 1e-9);
        CHECK(std::abs(v - oracle::V_temporal(kDefault, dt)) < 1e-7);
    }
}

TEST_CASE("spatial overlap matches the closed form across the scaling range") {
    const AmbitBoundary b = default_boundary();
    for (int k = 0; k < 50; ++k) {
        const double dx = 0.2 * std::pow(100.0, k / 49.0);
        const double v = overlap_volume(b, dx, 0.0, 1e-9);
        CHECK(std::abs(v - oracle::V_spatial(kDefault, dx)) < 1e-7);
    }
}

TEST_CASE("V(0,0) equals the closed-form ambit volume") {
    const AmbitBoundary b = default_boundary();
    CHECK(overlap_volume(b, 0.0, 0.0, 1e-9) ==
          doctest::Approx(oracle::volume_S0(kDefault)).epsilon(1e-9));
}

TEST_CASE("quadrature agrees with a fine Riemann rasterization on random pairs") {
    const AmbitBoundary b = default_boundary();
    std::mt19937_64 gen(12345);
    std::uniform_real_distribution<double> ux(0.0, 12.0), ut(0.0, 1.3);
    for (int k = 0; k < 50; ++k) {
        const double dx = ux(gen), dt = ut(gen);
        const double v = overlap_volume(b, dx, dt, 1e-9);
        const double r = oracle::overlap_riemann(kDefault, dx, dt, 400000);
        CHECK(std::abs(v - r) <= std::max(1e-4, 1e-3 * r));
    }
}

TEST_CASE("overlap is nonincreasing in each separation") {
    const AmbitBoundary b = default_boundary();
    for (double dt : {0.0, 0.05, 0.3, 0.9}) {
        double prev = overlap_volume(b, 0.0, dt);
        for (double dx : {0.1, 0.5, 1.0, 3.0, 8.0, 15.0}) {
            const double v = overlap_volume(b, dx, dt);
            CHECK(v <= prev + 1e-9);
            prev = v;
        }
    }
    for (double dx : {0.0, 0.3, 2.0}) {
        double prev = overlap_volume(b, dx, 0.0);
        for (double dt : {0.02, 0.1, 0.4, 0.8, 1.1}) {
            const double v = overlap_volume(b, dx, dt);
            CHECK(v <= prev + 1e-9);
            prev = v;
        }
    }
}

TEST_CASE("single-point multiplicity profile is {(1, Vol(S0))}") {
    const AmbitBoundary b = default_boundary();
    const SpacetimePoint p{0.4, -0.3};
    const int order = 1;
    const MultiplicityProfile prof = multiplicity_profile(b, {&p, 1}, {&order, 1}, 1e-9);
    REQUIRE(prof.entries.size() == 1);
    CHECK(prof.entries[0].weight == 1.0);
    CHECK(prof.entries[0].area == doctest::Approx(b.volume()).epsilon(1e-8));
}

TEST_CASE("two-point profile decomposes into inclusion-exclusion areas") {
    const AmbitBoundary b = default_boundary();
    for (double dt : {0.05, 0.3, 0.8}) {
        const double v = overlap_volume(b, 0.0, dt, 1e-10);
        const std::vector<SpacetimePoint> pts = {{0.0, 0.0}, {0.0, dt}};
        const std::vector<int> orders = {1, 1};
        const MultiplicityProfile prof = multiplicity_profile(b, pts, orders, 1e-10);
        CHECK(prof.area(1.0) == doctest::Approx(2.0 * (b.volume() - v)).epsilon(1e-6));
        CHECK(prof.area(2.0) == doctest::Approx(v).epsilon(1e-6));
    }
}

TEST_CASE("coincident points merge by summing orders") {
    const AmbitBoundary b = default_boundary();
    const std::vector<SpacetimePoint> pts = {{0.1, -0.2}, {0.1, -0.2}};
    const std::vector<int> orders = {1, 2};
    const MultiplicityProfile prof = multiplicity_profile(b, pts, orders, 1e-9);
    REQUIRE(prof.entries.size() == 1);
    CHECK(prof.entries[0].weight == 3.0);
    CHECK(prof.entries[0].area == doctest::Approx(b.volume()).epsilon(1e-8));
}

TEST_CASE("three-point profile resolves the seven-region decomposition") {
    const AmbitBoundary b = default_boundary();
    // Orders (1,2,4) make every subset weight unique, so the profile
    // recovers each of the seven disjoint domains individually.
    const std::vector<int> orders = {1, 2, 4};

    SUBCASE("general position: all seven regions present") {
        // Staggered times quantize a plain raster at the pop-in edges, so
        // this case uses the exact-in-x slice sweep as its oracle.
        const std::vector<SpacetimePoint> pts = {{0.0, 0.0}, {0.7, -0.15}, {1.6, -0.4}};
        const MultiplicityProfile prof = multiplicity_profile(b, pts, orders, 1e-9);
        const auto sliced = oracle::slice_weights(
            kDefault, {{0.0, 0.0, 1}, {0.7, -0.15, 2}, {1.6, -0.4, 4}}, 2000000);
        for (int w = 1; w <= 7; ++w) {
            CAPTURE(w);
            CHECK(prof.area(w) == doctest::Approx(sliced.at(w)).epsilon(1e-3));
        }
        double union_area = 0.0;
        for (const auto& [w, a] : sliced) union_area += a;
        CHECK(prof.total_area() == doctest::Approx(union_area).epsilon(1e-3));
    }

    SUBCASE("collinear equal-time points: the outer pair region is empty") {
        const std::vector<SpacetimePoint> pts = {{0.0, 0.0}, {0.8, 0.0}, {1.9, 0.0}};
        const MultiplicityProfile prof = multiplicity_profile(b, pts, orders, 1e-9);
        // weight 5 = {first, third}\{second} is covered by the middle ambit
        CHECK(prof.area(5.0) == 0.0);
        const auto sliced =
            oracle::slice_weights(kDefault, {{0.0, 0.0, 1}, {0.8, 0.0, 2}, {1.9, 0.0, 4}}, 2000000);
        for (int w : {1, 2, 3, 4, 6, 7}) {
            CAPTURE(w);
            const double rel = std::abs(prof.area(w) - sliced.at(w)) / sliced.at(w);
            CHECK(rel <= 1e-3);
        }
    }
}

TEST_CASE("profile rejects malformed inputs") {
    const AmbitBoundary b = default_boundary();
    const SpacetimePoint p{0.0, 0.0};
    const int good = 1, bad = 0;
    CHECK_THROWS_AS(multiplicity_profile(b, {&p, 1}, {}, 1e-8), std::invalid_argument);
    CHECK_THROWS_AS(multiplicity_profile(b, {&p, 1}, {&bad, 1}, 1e-8), std::invalid_argument);
    CHECK_NOTHROW(multiplicity_profile(b, {&p, 1}, {&good, 1}, 1e-8));
}

TEST_CASE("ambit mask approximates the ambit volume") {
    const AmbitBoundary b = default_boundary();
    const AmbitMask mask = ambit_mask(b, 0.005, 0.005);
    CHECK(std::abs(mask.area(0.005, 0.005) - b.volume()) <= 0.02 * b.volume());
    // symmetric by construction: rows store half-extents
    CHECK(mask.depth() == 240);
}

TEST_CASE("mask collapses to at most one slice when dt reaches T") {
    const AmbitBoundary b = default_boundary();
    CHECK(ambit_mask(b, 0.1, 1.2).depth() <= 1);
    CHECK(ambit_mask(b, 0.1, 2.5).depth() <= 1);
    CHECK(ambit_mask(b, 0.1, 0.6).depth() == 2);
}

TEST_CASE("halving the spacing tightens the mask area monotonically") {
    const AmbitBoundary b = default_boundary();
    const double vol = b.volume();
    double prev = 1e300;
    for (double h : {0.02, 0.01, 0.005}) {
        const double err = std::abs(ambit_mask(b, h, h).area(h, h) - vol);
        CHECK(err < prev);
        prev = err;
    }
    // the lattice mean exp(K[1]*A_mask) therefore approaches the analytic
    // mean field monotonically in these configs
    CHECK(prev < 0.02 * vol);
}

TEST_CASE("mask rejects degenerate spacing") {
    const AmbitBoundary b = default_boundary();
    CHECK_THROWS_AS(ambit_mask(b, 0.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(ambit_mask(b, 0.1, -0.1), std::invalid_argument);
}

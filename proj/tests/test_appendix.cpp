#include <doctest.h>

#include <cmath>

#include "ambit/correlators.hpp"

using namespace ambit;

namespace {

LevyBasisSpec gauss() { return LevyBasisSpec::gaussian(0.0, 1.0); }

// Closed form of F_2(l, l_scal) = l^{-2} Int_{l_scal}^{l} (l-u) u^{-a} du
// for the Gaussian default, a = tau(1,1) = tau2.
double f2_closed(double l, double l_scal, double a) {
    auto antider = [&](double u) {
        return l * std::pow(u, 1.0 - a) / (1.0 - a) - std::pow(u, 2.0 - a) / (2.0 - a);
    };
    return (antider(l) - antider(l_scal)) / (l * l);
}

}  // namespace

TEST_CASE("F_2 Monte Carlo agrees with the closed form within 3 sigma") {
    RandomStream rng(314);
    for (double ratio : {10.0, 100.0}) {
        const McEstimate est = appendix_Fn(2, 1.0, 1.0 / ratio, gauss(), 0.2, 400000, rng);
        const double exact = f2_closed(1.0, 1.0 / ratio, 0.2);
        CAPTURE(ratio);
        CHECK(std::abs(est.value - exact) <= 3.0 * est.std_error);
        CHECK(est.std_error < 0.01 * exact);
    }
}

TEST_CASE("F_n(1, l_scal/l) is nondecreasing in l and bounded by the h product") {
    RandomStream rng(2719);
    for (int n : {2, 3, 4}) {
        CAPTURE(n);
        const double bound = appendix_Fn_bound(n, gauss(), 0.2);
        double prev = 0.0;
        for (double ratio : {10.0, 100.0, 1000.0}) {
            const McEstimate est = appendix_Fn(n, 1.0, 1.0 / ratio, gauss(), 0.2, 200000, rng);
            CHECK(est.value + 3.0 * est.std_error > prev);
            CHECK(est.value - 3.0 * est.std_error < bound);
            prev = est.value;
        }
    }
}

TEST_CASE("F_n preconditions are enforced") {
    RandomStream rng(1);
    CHECK_THROWS_AS(appendix_Fn(1, 1.0, 0.01, gauss(), 0.2, 100, rng), std::invalid_argument);
    CHECK_THROWS_AS(appendix_Fn(3, 0.015, 0.01, gauss(), 0.2, 100, rng), std::invalid_argument);
    // Gaussian tau2=0.2 violates the condition at order 6
    CHECK_THROWS_AS(appendix_Fn(6, 1.0, 0.001, gauss(), 0.2, 100, rng), std::invalid_argument);
    // NIG alpha=3 has no moments at order 4
    CHECK_THROWS_AS(appendix_Fn(4, 1.0, 0.001, LevyBasisSpec::nig(3.0, 0.0, 1.0, 0.0), 0.2, 100, rng),
                    std::invalid_argument);
}

TEST_CASE("F_n estimates are deterministic for a fixed stream") {
    RandomStream r1 = RandomStream::substream(5, 1);
    RandomStream r2 = RandomStream::substream(5, 1);
    const McEstimate a = appendix_Fn(3, 1.0, 0.01, gauss(), 0.2, 20000, r1);
    const McEstimate b = appendix_Fn(3, 1.0, 0.01, gauss(), 0.2, 20000, r2);
    CHECK(a.value == b.value);
    CHECK(a.std_error == b.std_error);
}

TEST_CASE("relative-error bound decays and vanishes at large scales") {
    // mu(2) = 0.2 and mu(3) = 0.6 for the Gaussian default: both decay.
    for (double mu : {0.2, 0.6}) {
        const int n = mu == 0.2 ? 2 : 3;
        const double b10 = appendix_error_bound(n, 10.0, 1.0, 1.0, mu);
        const double b100 = appendix_error_bound(n, 100.0, 1.0, 1.0, mu);
        const double b1000 = appendix_error_bound(n, 1000.0, 1.0, 1.0, mu);
        CHECK(b10 > b100);
        CHECK(b100 > b1000);
        // decays like l^{mu-1}: vanishing relative to any fixed scale
        CHECK(appendix_error_bound(n, 1e9, 1.0, 1.0, mu) < 1e-3 * b10);
    }
}

TEST_CASE("relative-error bound approaches its first-order expansion") {
    const int n = 3;
    const double mu = 0.6, d0 = 2.5, lsc = 0.05;
    for (double l : {50.0, 500.0, 5000.0}) {
        const double exact = appendix_error_bound(n, l, lsc, d0, mu);
        const double first_order = 6.0 * d0 * n * lsc * std::pow(l, mu - 1.0);
        CHECK(exact == doctest::Approx(first_order).epsilon(3.0 * (n - 1) * lsc / l * 2.0 + 1e-9));
    }
}

TEST_CASE("coincident correlator uses the full ambit volume") {
    const AmbitBoundary b = build_boundary(0.2, gauss(), 0.01, 1.0, 1.2);
    CHECK(coincident_correlator(gauss(), b, 2) ==
          doctest::Approx(std::exp(2.0 * b.volume())).epsilon(1e-12));
    CHECK_THROWS_AS(coincident_correlator(LevyBasisSpec::nig(3.0, 0.0, 1.0, 0.0), b, 4), DomainError);
}

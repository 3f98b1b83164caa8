#pragma once

#include <string>
#include <variant>

#include "ambit/errors.hpp"
#include "ambit/random.hpp"

namespace ambit {

// Per-unit-area cumulant K[xi] = a*xi + b^2*xi^2/2.
struct GaussianBasis {
    double drift;       // a
    double volatility;  // b > 0
};

// K[xi] = lambda*(exp(jump*xi) - 1).
struct PoissonBasis {
    double intensity;  // lambda > 0, events per unit area
    double jump;       // jump size > 0
};

// K[xi] = -rate*ln(1 - xi/inv_scale), defined for xi < inv_scale.
struct GammaBasis {
    double rate;       // shape rate per unit area > 0
    double inv_scale;  // gamma > 0
};

// K[xi] = scale*xi^alpha for xi >= 0. Sampling uses the maximally
// left-skewed stable law (skewness -1), the unique stable family with
// finite exponential moments on xi >= 0. A positive coefficient in front
// of xi^alpha forces alpha > 1: for alpha < 1 the expression is concave
// and is not the log-Laplace transform of any law.
struct StableSkewedBasis {
    double alpha;  // index of stability, in (1, 2]
    double scale;  // c > 0
};

// K[xi] = nu*xi + delta*(sqrt(alpha^2-beta^2) - sqrt(alpha^2-(beta+xi)^2)),
// defined for |beta + xi| <= alpha. Moments of exp-fields built on this
// basis exist only up to a finite order.
struct NigBasis {
    double steepness;  // alpha > 0
    double asymmetry;  // beta, |beta| < alpha
    double scale;      // delta > 0, per unit area
    double drift;      // nu
};

/// A homogeneous Lévy basis, identified by its per-unit-area cumulant
/// function and equipped with a cell-level sampler. Immutable after
/// construction and safe to share across threads.
class LevyBasisSpec {
public:
    using Params = std::variant<GaussianBasis, PoissonBasis, GammaBasis, StableSkewedBasis, NigBasis>;

    static LevyBasisSpec gaussian(double drift, double volatility);
    static LevyBasisSpec poisson(double intensity, double jump);
    static LevyBasisSpec gamma(double rate, double inv_scale);
    static LevyBasisSpec stable_skewed(double alpha, double scale);
    static LevyBasisSpec nig(double steepness, double asymmetry, double scale, double drift);

    /// K[xi]. Throws DomainError outside the basis domain, naming the
    /// violated bound. K[0] = 0 for every basis.
    double cumulant(double xi) const;

    /// True iff cumulant(xi) is finite (no throw).
    bool cumulant_defined(double xi) const noexcept;

    /// K[n1+n2] - K[n1] - K[n2]; nonnegative by convexity of K.
    double cumulant_gap(double n1, double n2) const;

    /// One draw of the basis measure of a cell with the given area > 0.
    /// Across draws the empirical log-Laplace transform converges to
    /// area*K[xi].
    double sample_cell(double area, RandomStream& rng) const;

    const Params& params() const { return params_; }
    std::string kind() const;

    /// Short human-readable form, e.g. "gaussian(a=0, b=1)".
    std::string describe() const;

private:
    explicit LevyBasisSpec(Params p) : params_(p) {}
    Params params_;
};

}  // namespace ambit

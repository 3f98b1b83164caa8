#pragma once

#include "ambit/levy.hpp"

namespace ambit {

/// Scaling prescription from which the whole geometry derives. kappa
/// caches K[2]-2K[1] of the chosen basis.
struct ScalingSpec {
    double tau2;    // prescribed two-point exponent tau(2) > 0
    double t_scal;  // inner temporal scale
    double T_scal;  // outer temporal scale
    double T;       // decorrelation time, T_scal <= T
    double kappa;   // K[2]-2K[1] > 0

    double L_scal() const { return tau2 / (kappa * t_scal); }
    double l_scal() const { return tau2 / (kappa * T_scal); }
};

/// The causal ambit set S0 attached to the origin:
///   S0 = { (x,t) : -T <= t <= 0, |x| <= g(t+T) },
/// with the half-width g nonincreasing over [0, T] and g(T) = 0 so the set
/// pinches at the observation point and widens into the past. g is a
/// plateau L_scal/2 on [0, t_scal], the hyperbola tau2/(2*kappa*s) on
/// [t_scal, T_scal], and a linear taper to 0 on [T_scal, T].
class AmbitBoundary {
public:
    explicit AmbitBoundary(ScalingSpec spec);

    /// g(s) for s in [0, T]; 0 for s < 0 or s > T.
    double half_width(double s) const noexcept;

    const ScalingSpec& spec() const { return spec_; }

    /// Vol(S0) in closed form:
    /// tau2/kappa * (1 + ln(T_scal/t_scal)) + (T-T_scal)*l_scal/2.
    double volume() const;

    double decorrelation_time() const { return spec_.T; }
    /// L = 2 g(0); no spatial correlation survives beyond it.
    double decorrelation_length() const { return 2.0 * half_width(0.0); }
    /// l(dt) = g(dt) + g(0), the lag-dependent spatial decorrelation length.
    double decorrelation_length_at(double dt) const { return half_width(dt) + half_width(0.0); }

private:
    ScalingSpec spec_;
};

/// Construct the boundary for a prescribed tau(2) and basis; kappa is
/// taken from cumulant_gap(basis, 1, 1). Rejects invalid scale orderings
/// and a vanishing cumulant gap (degenerate deterministic basis).
AmbitBoundary build_boundary(double tau2, const LevyBasisSpec& basis, double t_scal, double T_scal,
                             double T);

}  // namespace ambit

#include "ambit/boundary.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ambit {

namespace {

void check_spec(const ScalingSpec& s) {
    std::ostringstream bad;
    if (!(s.tau2 > 0.0)) bad << "tau2 must be positive (tau2=" << s.tau2 << "); ";
    if (!(s.t_scal > 0.0)) bad << "t_scal must be positive (t_scal=" << s.t_scal << "); ";
    if (!(s.t_scal < s.T_scal))
        bad << "scales must satisfy t_scal < T_scal (t_scal=" << s.t_scal << ", T_scal=" << s.T_scal
            << "); ";
    if (!(s.T_scal <= s.T))
        bad << "scales must satisfy T_scal <= T (T_scal=" << s.T_scal << ", T=" << s.T << "); ";
    if (!(s.kappa > 0.0))
        bad << "cumulant gap K[2]-2K[1] must be positive (kappa=" << s.kappa
            << "): a deterministic basis carries no correlation to invert; ";
    const std::string msg = bad.str();
    if (!msg.empty()) throw std::invalid_argument("invalid scaling spec: " + msg);
}

}  // namespace

AmbitBoundary::AmbitBoundary(ScalingSpec spec) : spec_(spec) { check_spec(spec_); }

double AmbitBoundary::half_width(double s) const noexcept {
    if (s < 0.0 || s >= spec_.T) return 0.0;
    if (s <= spec_.t_scal) return 0.5 * spec_.L_scal();
    if (s <= spec_.T_scal) return spec_.tau2 / (2.0 * spec_.kappa * s);
    // Linear taper from l_scal/2 at T_scal down to 0 at T.
    return 0.5 * spec_.l_scal() * (spec_.T - s) / (spec_.T - spec_.T_scal);
}

double AmbitBoundary::volume() const {
    return spec_.tau2 / spec_.kappa * (1.0 + std::log(spec_.T_scal / spec_.t_scal)) +
           0.5 * (spec_.T - spec_.T_scal) * spec_.l_scal();
}

AmbitBoundary build_boundary(double tau2, const LevyBasisSpec& basis, double t_scal, double T_scal,
                             double T) {
    const double kappa = basis.cumulant_gap(1.0, 1.0);
    return AmbitBoundary(ScalingSpec{tau2, t_scal, T_scal, T, kappa});
}

}  // namespace ambit

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "ambit/geometry.hpp"
#include "ambit/random.hpp"

namespace ambit {

/// <eps> = exp(K[1] * Vol(S0)).
double mean_field(const LevyBasisSpec& basis, const AmbitBoundary& boundary);

/// <eps(p) eps(p + (dx,dt))> = <eps>^2 * exp(V(dx,dt) * (K[2]-2K[1])).
double two_point(const LevyBasisSpec& basis, const AmbitBoundary& boundary, double dx, double dt,
                 double quad_tol = 1e-8);

/// <prod_i eps(x_i,t_i)^{n_i}> = exp(sum over multiplicity-profile
/// entries of area * K[weight]).
double n_point(const LevyBasisSpec& basis, const AmbitBoundary& boundary,
               std::span<const SpacetimePoint> points, std::span<const int> orders,
               double quad_tol = 1e-8);

/// Weight function of an ambit, evaluated at coordinates relative to its
/// anchor: (x - x_i, t - t_i) with t - t_i in [-T, 0].
using WeightFunction = std::function<double(double, double)>;

/// General weighted correlator: 2D quadrature of K[sum_i I_i h_i] over the
/// union of the ambit sets. Reduces to n_point when every h is the
/// constant n_i. Throws QuadratureError when the requested tolerance
/// cannot be certified.
double n_point_weighted(const LevyBasisSpec& basis, const AmbitBoundary& boundary,
                        std::span<const SpacetimePoint> points,
                        std::span<const WeightFunction> weights, double quad_tol = 1e-6);

/// tau(n1,n2) = tau2 * (K[n1+n2]-K[n1]-K[n2]) / (K[2]-2K[1]).
/// tau(1,1) == tau2 exactly.
double tau_exponent(const LevyBasisSpec& basis, double tau2, double n1, double n2);

/// mu(n) = tau2 * (K[n]-nK[1]) / (K[2]-2K[1]), evaluated as a telescoping
/// sum of cumulant gaps so that mu(2) == tau2 exactly and the h-sum
/// identity holds to round-off.
double mu_exponent(const LevyBasisSpec& basis, double tau2, int n);

/// xi over an order tuple (m_{l-j},...,m_l), j+1 = orders.size() >= 2:
/// tau(m_{l-j}+...+m_{l-1}, m_l) - tau(m_{l-j+1}+...+m_{l-1}, m_l).
double xi_exponent(const LevyBasisSpec& basis, double tau2, std::span<const int> orders);

/// h(k) = mu(k-1) - mu(k); h(1) = 0.
double h_increment(const LevyBasisSpec& basis, double tau2, int k);

enum class ConditionStatus {
    satisfied,  // mu(n) - mu(n-1) < 1
    violated,   // moment exists but small scales dominate
    undefined,  // K[n] or K[n-1] outside the basis domain: moment does not exist
};

/// The multifractality condition mu(n) - mu(n-1) < 1 at order n.
ConditionStatus check_multifractal_condition(const LevyBasisSpec& basis, double tau2, int n);

/// Smallest order at which the condition stops holding (violated or
/// undefined); orders below it all satisfy the condition.
int critical_order(const LevyBasisSpec& basis, double tau2, int max_scan = 64);

/// One factor of the fusion-rule prediction: the exponent of the pairwise
/// distance |p_j - p_i| (0-based indices into the ordered point list).
struct FusionExponent {
    std::size_t i;
    std::size_t j;
    double exponent;
};

/// Exponent map for the n-point correlation of ordered points with the
/// given orders: adjacent pairs carry -tau(m_i, m_{i+1}), wider pairs the
/// nested-gap exponents -xi(...). The same map serves purely spatial and
/// purely temporal separations.
std::vector<FusionExponent> fusion_prediction(std::span<const int> orders,
                                              const LevyBasisSpec& basis, double tau2);

/// Sum of all fusion exponents: d ln c_n / d ln(scale) under a global
/// rescaling of the gaps within the scaling range.
double fusion_exponent_sum(std::span<const FusionExponent> exponents);

struct McEstimate {
    double value;
    double std_error;
};

/// Monte Carlo estimate of the appendix integral F_n(l, l_scal): uniform
/// sampling over the gap-separated ordered simplex via the sorted-uniform
/// map, integrand (l - l_n) * prod (l_k - l_{k-j})^{-xi_{j+1}}.
/// Requires l > (n-1)*l_scal and the multifractality condition up to n.
McEstimate appendix_Fn(int n, double l, double l_scal, const LevyBasisSpec& basis, double tau2,
                       long mc_samples, RandomStream& rng);

/// Upper bound on F_n(1, l_scal/l): prod_{k=2}^{n} 1/(1+h(k)).
double appendix_Fn_bound(int n, const LevyBasisSpec& basis, double tau2);

/// The relative-error bound n! * d_n(0,...,0) * l^{mu(n)-n} *
/// ((l_scal+l)^n - l^n) on truncating coarse moments to separated
/// configurations.
double appendix_error_bound(int n, double l, double l_scal, double d_n_at_zero, double mu_n);

/// d_n(0,...,0) = exp(Vol(S0) * K[total_order]) for fully coincident
/// points; unavailable (DomainError) when K[total_order] does not exist.
double coincident_correlator(const LevyBasisSpec& basis, const AmbitBoundary& boundary,
                             int total_order);

struct ExponentTable {
    double tau2 = 0.0;
    int max_order = 0;
    struct TauEntry {
        int n1, n2;
        double value;
    };
    struct MuEntry {
        int n;
        bool defined;
        double mu;  // NaN when !defined
        ConditionStatus condition;
    };
    struct XiEntry {
        int tuple_size;  // xi over (1,...,1) of this size; xi_2 = tau(1,1)
        bool defined;
        double value;
    };
    struct HEntry {
        int k;
        bool defined;
        double value;
    };
    std::vector<TauEntry> tau;  // n1 <= n2, n1+n2 <= max_order, defined only
    std::vector<MuEntry> mu;    // n = 1..max_order
    std::vector<XiEntry> xi;    // sizes 2..max_order
    std::vector<HEntry> h;      // k = 2..max_order
};

ExponentTable make_exponent_table(const LevyBasisSpec& basis, double tau2, int max_order);

}  // namespace ambit

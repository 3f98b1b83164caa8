#include "ambit/correlators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

#include "ambit/errors.hpp"
#include "ambit/quadrature.hpp"

namespace ambit {

double mean_field(const LevyBasisSpec& basis, const AmbitBoundary& boundary) {
    return std::exp(basis.cumulant(1.0) * overlap_volume(boundary, 0.0, 0.0));
}

double two_point(const LevyBasisSpec& basis, const AmbitBoundary& boundary, double dx, double dt,
                 double quad_tol) {
    const double m = mean_field(basis, boundary);
    const double v = overlap_volume(boundary, dx, dt, quad_tol);
    return m * m * std::exp(v * basis.cumulant_gap(1.0, 1.0));
}

double n_point(const LevyBasisSpec& basis, const AmbitBoundary& boundary,
               std::span<const SpacetimePoint> points, std::span<const int> orders,
               double quad_tol) {
    const MultiplicityProfile profile = multiplicity_profile(boundary, points, orders, quad_tol);
    double log_c = 0.0;
    for (const auto& e : profile.entries) log_c += e.area * basis.cumulant(e.weight);
    return std::exp(log_c);
}

double n_point_weighted(const LevyBasisSpec& basis, const AmbitBoundary& boundary,
                        std::span<const SpacetimePoint> points,
                        std::span<const WeightFunction> weights, double quad_tol) {
    if (points.size() != weights.size() || points.empty())
        throw std::invalid_argument("n_point_weighted requires equal-length, nonempty points and weights");
    const ScalingSpec& s = boundary.spec();

    double t_lo = points[0].t - s.T, t_hi = points[0].t;
    std::vector<double> cuts;
    for (const auto& p : points) {
        t_lo = std::min(t_lo, p.t - s.T);
        t_hi = std::max(t_hi, p.t);
        cuts.push_back(p.t - s.T);
        cuts.push_back(p.t - s.T + s.t_scal);
        cuts.push_back(p.t - s.T + s.T_scal);
        cuts.push_back(p.t);
    }

    const double inner_tol = quad_tol / (4.0 * (t_hi - t_lo));
    double worst_inner = 0.0;
    // The shared budget bounds the work on integrands that cannot reach
    // the requested tolerance; the achieved error is reported then.
    long budget = 8000000;

    struct Edge {
        double x;
        std::size_t idx;
        bool open;
    };
    std::vector<Edge> edges;
    std::vector<std::size_t> active;

    auto slice = [&](double t) {
        edges.clear();
        for (std::size_t i = 0; i < points.size(); ++i) {
            const double u = t - points[i].t + s.T;
            if (u < 0.0 || u >= s.T) continue;
            const double g = boundary.half_width(u);
            if (!(g > 0.0)) continue;
            edges.push_back({points[i].x - g, i, true});
            edges.push_back({points[i].x + g, i, false});
        }
        if (edges.empty()) return 0.0;
        std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) { return a.x < b.x; });
        active.clear();
        double total = 0.0;
        double prev = edges.front().x;
        for (const Edge& e : edges) {
            if (e.x > prev && !active.empty()) {
                auto integrand = [&](double x) {
                    double arg = 0.0;
                    for (std::size_t idx : active)
                        arg += weights[idx](x - points[idx].x, t - points[idx].t);
                    return basis.cumulant(arg);
                };
                QuadResult r = integrate_adaptive(integrand, prev, e.x, inner_tol, 36, &budget);
                total += r.value;
                worst_inner = std::max(worst_inner, r.error);
            }
            if (e.open) {
                active.push_back(e.idx);
            } else {
                active.erase(std::find(active.begin(), active.end(), e.idx));
            }
            prev = e.x;
        }
        return total;
    };

    QuadResult outer = integrate_piecewise(slice, t_lo, t_hi, cuts, 0.5 * quad_tol, 24, &budget);
    const double achieved = outer.error + worst_inner * (t_hi - t_lo);
    if (achieved > 8.0 * quad_tol) {
        std::ostringstream msg;
        msg << "n_point_weighted quadrature did not converge: achieved error estimate " << achieved
            << " exceeds tolerance " << quad_tol;
        throw QuadratureError(msg.str(), achieved);
    }
    return std::exp(outer.value);
}

double tau_exponent(const LevyBasisSpec& basis, double tau2, double n1, double n2) {
    // The ratio is formed first so tau(1,1) == tau2 exactly (x/x == 1).
    return tau2 * (basis.cumulant_gap(n1, n2) / basis.cumulant_gap(1.0, 1.0));
}

double mu_exponent(const LevyBasisSpec& basis, double tau2, int n) {
    if (n < 0) throw std::invalid_argument("mu_exponent requires n >= 0");
    if (n <= 1) return 0.0;
    // K[n] - nK[1] telescopes into gaps (K[k]-K[k-1]-K[1]); summing the
    // same terms keeps mu(2) == tau2 and sum h(k) == -mu(n) at round-off.
    double gaps = 0.0;
    for (int k = 2; k <= n; ++k) gaps += basis.cumulant_gap(static_cast<double>(k - 1), 1.0);
    return tau2 * (gaps / basis.cumulant_gap(1.0, 1.0));
}

double xi_exponent(const LevyBasisSpec& basis, double tau2, std::span<const int> orders) {
    if (orders.size() < 2) throw std::invalid_argument("xi_exponent requires a tuple of >= 2 orders");
    double head = 0.0;
    for (std::size_t i = 0; i + 1 < orders.size(); ++i) head += orders[i];
    const double last = orders.back();
    return tau_exponent(basis, tau2, head, last) -
           tau_exponent(basis, tau2, head - static_cast<double>(orders.front()), last);
}

double h_increment(const LevyBasisSpec& basis, double tau2, int k) {
    if (k < 1) throw std::invalid_argument("h_increment requires k >= 1");
    if (k == 1) return 0.0;
    return -tau2 * (basis.cumulant_gap(static_cast<double>(k - 1), 1.0) /
                    basis.cumulant_gap(1.0, 1.0));
}

ConditionStatus check_multifractal_condition(const LevyBasisSpec& basis, double tau0, int n) {
    if (n < 1) throw std::invalid_argument("check_multifractal_condition requires n >= 1");
    if (!basis.cumulant_defined(static_cast<double>(n)) ||
        !basis.cumulant_defined(static_cast<double>(n - 1)))
        return ConditionStatus::undefined;
    const double increment = tau0 * (basis.cumulant_gap(static_cast<double>(n - 1), 1.0) /
                                     basis.cumulant_gap(1.0, 1.0));
    return increment < 1.0 ? ConditionStatus::satisfied : ConditionStatus::violated;
}

int critical_order(const LevyBasisSpec& basis, double tau2, int max_scan) {
    for (int n = 1; n <= max_scan; ++n)
        if (check_multifractal_condition(basis, tau2, n) != ConditionStatus::satisfied) return n;
    return max_scan + 1;
}

std::vector<FusionExponent> fusion_prediction(std::span<const int> orders,
                                              const LevyBasisSpec& basis, double tau2) {
    const std::size_t n = orders.size();
    if (n < 2) throw std::invalid_argument("fusion_prediction requires >= 2 orders");
    std::vector<FusionExponent> out;
    for (std::size_t i = 0; i + 1 < n; ++i)
        out.push_back({i, i + 1,
                       -tau_exponent(basis, tau2, static_cast<double>(orders[i]),
                                     static_cast<double>(orders[i + 1]))});
    for (std::size_t j = 2; j + 1 <= n; ++j) {
        for (std::size_t l = j; l < n; ++l) {
            const std::span<const int> tuple = orders.subspan(l - j, j + 1);
            out.push_back({l - j, l, -xi_exponent(basis, tau2, tuple)});
        }
    }
    return out;
}

double fusion_exponent_sum(std::span<const FusionExponent> exponents) {
    double sum = 0.0;
    for (const auto& e : exponents) sum += e.exponent;
    return sum;
}

McEstimate appendix_Fn(int n, double l, double l_scal, const LevyBasisSpec& basis, double tau2,
                       long mc_samples, RandomStream& rng) {
    if (n < 2) throw std::invalid_argument("appendix_Fn requires n >= 2");
    if (!(l_scal > 0.0) || !(l > (n - 1) * l_scal))
        throw std::invalid_argument("appendix_Fn requires l > (n-1)*l_scal > 0");
    if (mc_samples < 2) throw std::invalid_argument("appendix_Fn requires mc_samples >= 2");
    for (int k = 2; k <= n; ++k) {
        const ConditionStatus st = check_multifractal_condition(basis, tau2, k);
        if (st != ConditionStatus::satisfied)
            throw std::invalid_argument(
                "appendix_Fn rejected: multifractality condition mu(k)-mu(k-1) < 1 " +
                std::string(st == ConditionStatus::violated ? "violated" : "undefined") +
                " at k=" + std::to_string(k) + "; the integral may diverge");
    }

    // xi_{j+1} for j = 1..n-1 over all-ones tuples: tau(j,1) - tau(j-1,1).
    std::vector<double> xi(static_cast<std::size_t>(n), 0.0);
    for (int j = 1; j < n; ++j)
        xi[static_cast<std::size_t>(j)] =
            tau_exponent(basis, tau2, static_cast<double>(j), 1.0) -
            tau_exponent(basis, tau2, static_cast<double>(j - 1), 1.0);

    const double span_len = l - (n - 1) * l_scal;
    double simplex_vol = 1.0;
    for (int k = 1; k <= n - 1; ++k) simplex_vol *= span_len / static_cast<double>(k);

    std::vector<double> ys(static_cast<std::size_t>(n - 1));
    std::vector<double> ls(static_cast<std::size_t>(n + 1));  // ls[1] = 0, ls[2..n]
    double sum = 0.0, sum_sq = 0.0;
    for (long it = 0; it < mc_samples; ++it) {
        for (double& y : ys) y = span_len * rng.uniform();
        std::sort(ys.begin(), ys.end());
        ls[1] = 0.0;
        for (int k = 2; k <= n; ++k)
            ls[static_cast<std::size_t>(k)] = ys[static_cast<std::size_t>(k - 2)] + (k - 1) * l_scal;
        double f = l - ls[static_cast<std::size_t>(n)];
        for (int k = 2; k <= n; ++k)
            for (int j = 1; j <= k - 1; ++j)
                f *= std::pow(ls[static_cast<std::size_t>(k)] - ls[static_cast<std::size_t>(k - j)],
                              -xi[static_cast<std::size_t>(j)]);
        sum += f;
        sum_sq += f * f;
    }
    const double mean = sum / static_cast<double>(mc_samples);
    const double var = std::max(0.0, sum_sq / static_cast<double>(mc_samples) - mean * mean);
    const double scale = std::pow(l, -static_cast<double>(n)) * simplex_vol;
    return {scale * mean, scale * std::sqrt(var / static_cast<double>(mc_samples))};
}

double appendix_Fn_bound(int n, const LevyBasisSpec& basis, double tau2) {
    if (n < 2) throw std::invalid_argument("appendix_Fn_bound requires n >= 2");
    double prod = 1.0;
    for (int k = 2; k <= n; ++k) {
        const double h = h_increment(basis, tau2, k);
        if (!(h > -1.0))
            throw std::invalid_argument("appendix_Fn_bound undefined: 1+h(k) <= 0 at k=" +
                                        std::to_string(k));
        prod /= 1.0 + h;
    }
    return prod;
}

double appendix_error_bound(int n, double l, double l_scal, double d_n_at_zero, double mu_n) {
    if (n < 1) throw std::invalid_argument("appendix_error_bound requires n >= 1");
    if (!(l > 0.0) || !(l_scal > 0.0) || !(d_n_at_zero > 0.0))
        throw std::invalid_argument("appendix_error_bound requires positive l, l_scal, d_n_at_zero");
    double fact = 1.0;
    for (int k = 2; k <= n; ++k) fact *= k;
    return fact * d_n_at_zero * std::pow(l, mu_n - n) *
           (std::pow(l_scal + l, n) - std::pow(l, n));
}

double coincident_correlator(const LevyBasisSpec& basis, const AmbitBoundary& boundary,
                             int total_order) {
    if (total_order < 1) throw std::invalid_argument("coincident_correlator requires order >= 1");
    return std::exp(boundary.volume() * basis.cumulant(static_cast<double>(total_order)));
}

ExponentTable make_exponent_table(const LevyBasisSpec& basis, double tau2, int max_order) {
    if (max_order < 2) throw std::invalid_argument("make_exponent_table requires max_order >= 2");
    ExponentTable t;
    t.tau2 = tau2;
    t.max_order = max_order;
    const double nan = std::numeric_limits<double>::quiet_NaN();

    for (int n1 = 1; n1 <= max_order; ++n1)
        for (int n2 = n1; n1 + n2 <= max_order; ++n2)
            if (basis.cumulant_defined(n1 + n2))
                t.tau.push_back({n1, n2, tau_exponent(basis, tau2, n1, n2)});

    for (int n = 1; n <= max_order; ++n) {
        const bool defined = basis.cumulant_defined(n);
        t.mu.push_back({n, defined, defined ? mu_exponent(basis, tau2, n) : nan,
                        check_multifractal_condition(basis, tau2, n)});
    }
    for (int size = 2; size <= max_order; ++size) {
        const std::vector<int> ones(static_cast<std::size_t>(size), 1);
        const bool defined = basis.cumulant_defined(size);
        t.xi.push_back({size, defined, defined ? xi_exponent(basis, tau2, ones) : nan});
    }
    for (int k = 2; k <= max_order; ++k) {
        const bool defined = basis.cumulant_defined(k);
        t.h.push_back({k, defined, defined ? h_increment(basis, tau2, k) : nan});
    }
    return t;
}

}  // namespace ambit

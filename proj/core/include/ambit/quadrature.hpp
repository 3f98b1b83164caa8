#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace ambit {

/// Outcome of an adaptive integration: value plus the accumulated local
/// error estimates (Richardson terms) of all accepted panels.
struct QuadResult {
    double value = 0.0;
    double error = 0.0;
};

namespace detail {

template <class F>
void simpson_rec(F& f, double a, double fa, double b, double fb, double m, double fm,
                 double whole, double tol, int depth, QuadResult& acc, long* budget) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double h6 = (b - a) / 12.0;
    const double left = h6 * (fa + 4.0 * flm + fm);
    const double right = h6 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (budget) *budget -= 2;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol || (budget && *budget <= 0)) {
        acc.value += left + right + delta / 15.0;
        acc.error += std::abs(delta) / 15.0;
        return;
    }
    simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1, acc, budget);
    simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1, acc, budget);
}

}  // namespace detail

/// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance tol.
/// A non-null eval budget bounds the number of integrand evaluations;
/// once exhausted, panels are accepted as-is and the residual shows up in
/// the error estimate.
template <class F>
QuadResult integrate_adaptive(F&& f, double a, double b, double tol, int max_depth = 48,
                              long* eval_budget = nullptr) {
    QuadResult acc;
    if (!(b > a)) return acc;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    detail::simpson_rec(f, a, fa, b, fb, m, fm, whole, tol, max_depth, acc, eval_budget);
    return acc;
}

/// Adaptive Simpson with explicit subdivision at interior breakpoints
/// (integrand may be non-smooth there). breakpoints need not be sorted or
/// inside [a, b]; they are clipped and deduplicated.
template <class F>
QuadResult integrate_piecewise(F&& f, double a, double b, std::span<const double> breakpoints,
                               double tol, int max_depth = 48, long* eval_budget = nullptr) {
    QuadResult acc;
    if (!(b > a)) return acc;
    std::vector<double> cuts;
    cuts.reserve(breakpoints.size() + 2);
    cuts.push_back(a);
    for (double c : breakpoints)
        if (c > a && c < b) cuts.push_back(c);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [](double x, double y) { return y - x < 1e-15 * (1.0 + std::abs(x)); }),
               cuts.end());
    const double piece_tol = tol / static_cast<double>(cuts.size() - 1);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        QuadResult r = integrate_adaptive(f, cuts[i], cuts[i + 1], piece_tol, max_depth, eval_budget);
        acc.value += r.value;
        acc.error += r.error;
    }
    return acc;
}

namespace detail {

// Vector-valued adaptive Simpson. f(t, out) fills dim components; the
// acceptance test uses the max-norm of the Richardson terms.
template <class F>
class VecSimpson {
public:
    VecSimpson(F& f, std::size_t dim) : f_(f), dim_(dim) {}

    void run(double a, double b, double tol, int max_depth, std::vector<double>& value,
             double& error) {
        std::vector<double> fa(dim_), fb(dim_), fm(dim_), whole(dim_);
        const double m = 0.5 * (a + b);
        f_(a, fa.data());
        f_(b, fb.data());
        f_(m, fm.data());
        for (std::size_t i = 0; i < dim_; ++i)
            whole[i] = (b - a) / 6.0 * (fa[i] + 4.0 * fm[i] + fb[i]);
        rec(a, fa, b, fb, m, fm, whole, tol, max_depth, value, error);
    }

private:
    void rec(double a, const std::vector<double>& fa, double b, const std::vector<double>& fb,
             double m, const std::vector<double>& fm, const std::vector<double>& whole, double tol,
             int depth, std::vector<double>& value, double& error) {
        const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
        std::vector<double> flm(dim_), frm(dim_), left(dim_), right(dim_);
        f_(lm, flm.data());
        f_(rm, frm.data());
        const double h6 = (b - a) / 12.0;
        double worst = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) {
            left[i] = h6 * (fa[i] + 4.0 * flm[i] + fm[i]);
            right[i] = h6 * (fm[i] + 4.0 * frm[i] + fb[i]);
            worst = std::max(worst, std::abs(left[i] + right[i] - whole[i]));
        }
        if (depth <= 0 || worst <= 15.0 * tol) {
            for (std::size_t i = 0; i < dim_; ++i) {
                const double delta = left[i] + right[i] - whole[i];
                value[i] += left[i] + right[i] + delta / 15.0;
            }
            error += worst / 15.0;
            return;
        }
        rec(a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1, value, error);
        rec(m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1, value, error);
    }

    F& f_;
    std::size_t dim_;
};

}  // namespace detail

/// Vector-valued variant of integrate_piecewise: f(t, out) fills dim
/// components; results accumulate into value (resized and zeroed here).
template <class F>
double integrate_vec_piecewise(F&& f, std::size_t dim, double a, double b,
                               std::span<const double> breakpoints, double tol,
                               std::vector<double>& value, int max_depth = 44) {
    value.assign(dim, 0.0);
    double error = 0.0;
    if (!(b > a)) return error;
    std::vector<double> cuts;
    cuts.push_back(a);
    for (double c : breakpoints)
        if (c > a && c < b) cuts.push_back(c);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [](double x, double y) { return y - x < 1e-15 * (1.0 + std::abs(x)); }),
               cuts.end());
    const double piece_tol = tol / static_cast<double>(cuts.size() - 1);
    detail::VecSimpson<std::remove_reference_t<F>> vs(f, dim);
    std::vector<double> piece(dim);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        piece.assign(dim, 0.0);
        vs.run(cuts[i], cuts[i + 1], piece_tol, max_depth, piece, error);
        for (std::size_t k = 0; k < dim; ++k) value[k] += piece[k];
    }
    return error;
}

}  // namespace ambit

#include "ambit/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ambit/quadrature.hpp"

namespace ambit {

namespace {

// Locate roots of a continuous function on [a, b] by scanning and
// bisection; used to cut quadrature pieces at the kinks of the overlap
// integrand (min/max switches), which are isolated crossings.
template <class F>
void find_crossings(F&& f, double a, double b, std::vector<double>& out) {
    constexpr int kScan = 33;
    double prev_x = a, prev_v = f(a);
    for (int i = 1; i <= kScan; ++i) {
        const double x = a + (b - a) * static_cast<double>(i) / kScan;
        const double v = f(x);
        if ((prev_v < 0.0 && v > 0.0) || (prev_v > 0.0 && v < 0.0)) {
            double lo = prev_x, hi = x, flo = prev_v;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = f(mid);
                if ((flo < 0.0) == (fm < 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            out.push_back(0.5 * (lo + hi));
        }
        prev_x = x;
        prev_v = v;
    }
}

}  // namespace

double overlap_volume(const AmbitBoundary& boundary, double dx, double dt, double quad_tol) {
    if (!(dx >= 0.0) || !(dt >= 0.0))
        throw std::invalid_argument("overlap_volume requires dx >= 0 and dt >= 0");
    const ScalingSpec& s = boundary.spec();
    if (dt >= s.T) return 0.0;
    if (dx >= boundary.half_width(dt) + boundary.half_width(0.0)) return 0.0;

    // Slice the overlap at u = t' + T, u in [dt, T]: the later ambit has
    // half-width g(u), the earlier g(u - dt) >= g(u), centers dx apart.
    auto len = [&](double u) {
        const double g1 = boundary.half_width(u);
        const double g2 = boundary.half_width(u - dt);
        return std::max(0.0, std::min(2.0 * g1, g1 + g2 - dx));
    };

    std::vector<double> cuts = {s.t_scal, s.T_scal, dt + s.t_scal, dt + s.T_scal};
    // Kinks interior to the smooth pieces: where the two branches of the
    // min cross and where the length reaches zero.
    std::vector<double> pieces = cuts;
    pieces.push_back(dt);
    pieces.push_back(s.T);
    std::sort(pieces.begin(), pieces.end());
    for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
        const double a = std::max(pieces[i], dt), b = std::min(pieces[i + 1], s.T);
        if (!(b > a)) continue;
        find_crossings(
            [&](double u) { return boundary.half_width(u - dt) - boundary.half_width(u) - dx; }, a,
            b, cuts);
        find_crossings(
            [&](double u) { return boundary.half_width(u - dt) + boundary.half_width(u) - dx; }, a,
            b, cuts);
    }

    return integrate_piecewise(len, dt, s.T, cuts, quad_tol).value;
}

double MultiplicityProfile::total_area() const {
    double sum = 0.0;
    for (const Entry& e : entries) sum += e.area;
    return sum;
}

double MultiplicityProfile::area(double weight) const {
    for (const Entry& e : entries)
        if (std::abs(e.weight - weight) < 0.5) return e.area;
    return 0.0;
}

MultiplicityProfile multiplicity_profile(const AmbitBoundary& boundary,
                                         std::span<const SpacetimePoint> points,
                                         std::span<const int> orders, double quad_tol) {
    if (points.size() != orders.size() || points.empty())
        throw std::invalid_argument("multiplicity_profile requires equal-length, nonempty points and orders");
    for (int n : orders)
        if (n < 1) throw std::invalid_argument("multiplicity_profile orders must be positive integers");

    // Merge coincident points by summing their orders (the indicator sum
    // does not distinguish them).
    std::vector<SpacetimePoint> pts;
    std::vector<int> ords;
    for (std::size_t i = 0; i < points.size(); ++i) {
        bool merged = false;
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (points[i].x == pts[j].x && points[i].t == pts[j].t) {
                ords[j] += orders[i];
                merged = true;
                break;
            }
        }
        if (!merged) {
            pts.push_back(points[i]);
            ords.push_back(orders[i]);
        }
    }

    const ScalingSpec& s = boundary.spec();
    int total = 0;
    for (int n : ords) total += n;
    const std::size_t dim = static_cast<std::size_t>(total);

    double t_lo = pts[0].t - s.T, t_hi = pts[0].t;
    std::vector<double> cuts;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        t_lo = std::min(t_lo, pts[i].t - s.T);
        t_hi = std::max(t_hi, pts[i].t);
        // The ambit pops in with full width at t_i - T and g changes form
        // at the interior scale boundaries.
        cuts.push_back(pts[i].t - s.T);
        cuts.push_back(pts[i].t - s.T + s.t_scal);
        cuts.push_back(pts[i].t - s.T + s.T_scal);
        cuts.push_back(pts[i].t);
    }

    struct Event {
        double x;
        int delta;
    };
    std::vector<Event> events;

    auto slice = [&](double t, double* out) {
        std::fill(out, out + dim, 0.0);
        events.clear();
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const double u = t - pts[i].t + s.T;
            if (u < 0.0 || u >= s.T) continue;
            const double g = boundary.half_width(u);
            if (!(g > 0.0)) continue;
            events.push_back({pts[i].x - g, ords[i]});
            events.push_back({pts[i].x + g, -ords[i]});
        }
        if (events.empty()) return;
        std::sort(events.begin(), events.end(),
                  [](const Event& a, const Event& b) { return a.x < b.x; });
        double prev = events.front().x;
        int weight = 0;
        for (const Event& e : events) {
            if (e.x > prev && weight > 0) out[weight - 1] += e.x - prev;
            weight += e.delta;
            prev = e.x;
        }
    };

    std::vector<double> areas;
    integrate_vec_piecewise(slice, dim, t_lo, t_hi, cuts, quad_tol, areas);

    MultiplicityProfile profile;
    for (std::size_t w = 0; w < dim; ++w)
        if (areas[w] > 0.0)
            profile.entries.push_back({static_cast<double>(w + 1), areas[w]});
    return profile;
}

std::size_t AmbitMask::cell_count() const {
    std::size_t n = 0;
    for (const Row& r : rows) n += static_cast<std::size_t>(2 * r.half_cells + 1);
    return n;
}

int AmbitMask::max_half_cells() const {
    int m = 0;
    for (const Row& r : rows) m = std::max(m, r.half_cells);
    return m;
}

double AmbitMask::area(double dx, double dt) const {
    return static_cast<double>(cell_count()) * dx * dt;
}

AmbitMask ambit_mask(const AmbitBoundary& boundary, double dx, double dt) {
    if (!(dx > 0.0) || !(dt > 0.0))
        throw std::invalid_argument("ambit_mask requires positive cell spacings");
    AmbitMask mask;
    const double T = boundary.spec().T;
    for (int dj = 0; (static_cast<double>(dj) + 0.5) * dt <= T; ++dj) {
        const double g = boundary.half_width(T - (static_cast<double>(dj) + 0.5) * dt);
        const int half = static_cast<int>(std::floor(g / dx + 1e-12));
        mask.rows.push_back({dj, half});
    }
    return mask;
}

}  // namespace ambit

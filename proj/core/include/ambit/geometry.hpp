#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ambit/boundary.hpp"

namespace ambit {

struct SpacetimePoint {
    double x;
    double t;
};

/// Euclidean area of the overlap of two ambit sets separated by
/// (dx, dt), dx >= 0, dt >= 0 (stationarity and x-symmetry fold the
/// general case onto this quadrant). Adaptive quadrature over time of the
/// 1D intersection length, absolute error <= quad_tol. Exactly 0 when
/// dt >= T or dx >= g(dt) + g(0).
double overlap_volume(const AmbitBoundary& boundary, double dx, double dt,
                      double quad_tol = 1e-8);

/// Area of space-time covered with exactly a given total coverage weight,
/// where the weight of a region is the sum of the orders of the ambit sets
/// covering it. This is the kernel of every correlator: the n-point
/// function is exp(sum over entries of area * K[weight]).
struct MultiplicityProfile {
    struct Entry {
        double weight;
        double area;
    };
    std::vector<Entry> entries;  // ascending weight, area > 0

    double total_area() const;
    /// Area at a given weight; 0 when the weight does not occur.
    double area(double weight) const;
};

/// Sweep the union of the ambit sets anchored at the given points (with
/// positive integer orders) and aggregate exactly-covered areas by weight.
/// Coincident points are merged by summing their orders. Exact in x
/// (interval arithmetic per time slice), adaptive quadrature in t.
MultiplicityProfile multiplicity_profile(const AmbitBoundary& boundary,
                                         std::span<const SpacetimePoint> points,
                                         std::span<const int> orders, double quad_tol = 1e-8);

/// Lattice discretization of S0: per past slice dj >= 0 the contiguous
/// x-offset range whose cell centers (i*dx, -(dj+0.5)*dt) lie inside S0.
struct AmbitMask {
    struct Row {
        int dj;          // slices into the past, 0 = most recent cell row
        int half_cells;  // offsets i in [-half_cells, +half_cells]
    };
    std::vector<Row> rows;  // dj ascending

    std::size_t cell_count() const;
    int depth() const { return rows.empty() ? 0 : rows.back().dj + 1; }
    int max_half_cells() const;
    /// cell_count * dx * dt; converges to Vol(S0) as dx, dt -> 0.
    double area(double dx, double dt) const;
};

AmbitMask ambit_mask(const AmbitBoundary& boundary, double dx, double dt);

}  // namespace ambit

#pragma once

#include <span>
#include <utility>
#include <vector>

#include "ambit/simulate.hpp"

namespace ambit {

enum class Axis { spatial, temporal };

struct LagEstimate {
    double lag;  // physical separation
    double estimate;
    double std_error;  // between-realization
};

struct MomentEstimate {
    double window;  // physical window length l
    int order;
    double estimate;
    double std_error;
    /// Finite-sample concentration diagnostic: set when a single sample or
    /// a single realization contributes more than half of the estimate.
    bool concentration_warning;
};

struct PowerLawFit {
    double slope;
    double intercept;
    double r_squared;
    double lo;
    double hi;
    int n_points;
};

/// Streaming accumulator for <eps^{n1}(p) eps^{n2}(p+lag)>. add() may be
/// called concurrently for distinct realization indices; merging is by
/// realization slot, so results are independent of completion order.
class TwoPointAccumulator {
public:
    TwoPointAccumulator(Axis axis, std::vector<int> lag_cells, std::pair<int, int> orders,
                        int realizations);

    void add(const FieldRealization& field);
    /// lag = cells * cell_size. Requires >= 2 completed realizations.
    std::vector<LagEstimate> results(double cell_size) const;

private:
    Axis axis_;
    std::vector<int> lags_;
    std::pair<int, int> orders_;
    int realizations_;
    std::vector<double> means_;  // [realization * nlags + lag]
    std::vector<char> seen_;
};

/// Streaming accumulator for coarse-grained moments M_n(l): window
/// averages of the field raised to each requested order.
class MomentAccumulator {
public:
    MomentAccumulator(Axis axis, std::vector<int> window_cells, std::vector<int> orders,
                      int realizations);

    void add(const FieldRealization& field);
    std::vector<MomentEstimate> results(double cell_size) const;

private:
    Axis axis_;
    std::vector<int> windows_;
    std::vector<int> orders_;
    int realizations_;
    std::vector<double> means_;       // [realization][window][order]
    std::vector<double> max_sample_;  // same layout
    std::vector<double> counts_;      // [realization][window]
    std::vector<char> seen_;
    std::size_t slot(int r, std::size_t w, std::size_t o) const {
        return (static_cast<std::size_t>(r) * windows_.size() + w) * orders_.size() + o;
    }
};

/// Convenience wrappers over the accumulators for in-memory field sets.
std::vector<LagEstimate> empirical_two_point(std::span<const FieldRealization> fields, Axis axis,
                                             std::span<const int> lag_cells,
                                             std::pair<int, int> orders);

std::vector<MomentEstimate> coarse_moments(std::span<const FieldRealization> fields, Axis axis,
                                           int order, std::span<const int> window_cells);

/// Ordinary least squares of ln(value) on ln(lag) over points with lag in
/// [lo, hi]. Rejects nonpositive values (reporting the offending index)
/// and requires at least five points.
PowerLawFit fit_powerlaw(std::span<const std::pair<double, double>> points, double lo, double hi);

}  // namespace ambit

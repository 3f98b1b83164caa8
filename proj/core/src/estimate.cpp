#include "ambit/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ambit {

namespace {

double pow_int(double x, int n) {
    double r = 1.0;
    for (int k = 0; k < n; ++k) r *= x;
    return r;
}

void check_slot(int index, int realizations, const std::vector<char>& seen) {
    if (index < 0 || index >= realizations)
        throw std::invalid_argument("realization index " + std::to_string(index) +
                                    " outside configured count " + std::to_string(realizations));
    if (seen[static_cast<std::size_t>(index)])
        throw std::invalid_argument("realization " + std::to_string(index) + " added twice");
}

struct MeanSe {
    double mean;
    double se;
    int used;
};

MeanSe reduce(const std::vector<double>& values, const std::vector<char>& seen, std::size_t stride,
              std::size_t offset) {
    double sum = 0.0;
    int used = 0;
    for (std::size_t r = 0; r < seen.size(); ++r) {
        if (!seen[r]) continue;
        sum += values[r * stride + offset];
        ++used;
    }
    if (used < 2)
        throw std::invalid_argument("standard errors need >= 2 realizations (" +
                                    std::to_string(used) + " seen)");
    const double mean = sum / used;
    double ss = 0.0;
    for (std::size_t r = 0; r < seen.size(); ++r) {
        if (!seen[r]) continue;
        const double d = values[r * stride + offset] - mean;
        ss += d * d;
    }
    return {mean, std::sqrt(ss / (used - 1) / used), used};
}

}  // namespace

TwoPointAccumulator::TwoPointAccumulator(Axis axis, std::vector<int> lag_cells,
                                         std::pair<int, int> orders, int realizations)
    : axis_(axis), lags_(std::move(lag_cells)), orders_(orders), realizations_(realizations) {
    if (lags_.empty()) throw std::invalid_argument("empirical_two_point requires a nonempty lag set");
    for (int k : lags_)
        if (k < 0) throw std::invalid_argument("lags must be nonnegative cell counts");
    if (orders_.first < 1 || orders_.second < 1)
        throw std::invalid_argument("two-point orders must be positive integers");
    if (realizations_ < 2)
        throw std::invalid_argument("standard errors need >= 2 realizations");
    means_.assign(static_cast<std::size_t>(realizations_) * lags_.size(), 0.0);
    seen_.assign(static_cast<std::size_t>(realizations_), 0);
}

void TwoPointAccumulator::add(const FieldRealization& f) {
    check_slot(f.index, realizations_, seen_);
    const int nx = f.nx, nt = f.nt;
    const auto [n1, n2] = orders_;
    for (std::size_t li = 0; li < lags_.size(); ++li) {
        const int k = lags_[li];
        double sum = 0.0;
        std::size_t count = 0;
        if (axis_ == Axis::temporal) {
            if (k >= nt)
                throw std::invalid_argument("temporal lag " + std::to_string(k) +
                                            " cells exceeds grid depth " + std::to_string(nt));
            for (int j = 0; j + k < nt; ++j) {
                const double* a = f.values.data() + static_cast<std::size_t>(j) * nx;
                const double* b = f.values.data() + static_cast<std::size_t>(j + k) * nx;
                if (n1 == 1 && n2 == 1) {
                    for (int i = 0; i < nx; ++i) sum += a[i] * b[i];
                } else {
                    for (int i = 0; i < nx; ++i) sum += pow_int(a[i], n1) * pow_int(b[i], n2);
                }
            }
            count = static_cast<std::size_t>(nx) * static_cast<std::size_t>(nt - k);
        } else {
            if (k >= nx)
                throw std::invalid_argument("spatial lag " + std::to_string(k) +
                                            " cells exceeds grid width " + std::to_string(nx));
            for (int j = 0; j < nt; ++j) {
                const double* a = f.values.data() + static_cast<std::size_t>(j) * nx;
                for (int i = 0; i < nx; ++i) {
                    const int ii = i + k < nx ? i + k : i + k - nx;
                    sum += pow_int(a[i], n1) * pow_int(a[ii], n2);
                }
            }
            count = static_cast<std::size_t>(nx) * static_cast<std::size_t>(nt);
        }
        means_[static_cast<std::size_t>(f.index) * lags_.size() + li] =
            sum / static_cast<double>(count);
    }
    seen_[static_cast<std::size_t>(f.index)] = 1;
}

std::vector<LagEstimate> TwoPointAccumulator::results(double cell_size) const {
    std::vector<LagEstimate> out;
    out.reserve(lags_.size());
    for (std::size_t li = 0; li < lags_.size(); ++li) {
        const MeanSe m = reduce(means_, seen_, lags_.size(), li);
        out.push_back({lags_[li] * cell_size, m.mean, m.se});
    }
    return out;
}

MomentAccumulator::MomentAccumulator(Axis axis, std::vector<int> window_cells,
                                     std::vector<int> orders, int realizations)
    : axis_(axis), windows_(std::move(window_cells)), orders_(std::move(orders)),
      realizations_(realizations) {
    if (windows_.empty()) throw std::invalid_argument("coarse_moments requires a nonempty window set");
    for (int w : windows_)
        if (w < 2) throw std::invalid_argument("windows must span >= 2 cells");
    for (int n : orders_)
        if (n < 1) throw std::invalid_argument("moment orders must be positive integers");
    if (realizations_ < 2)
        throw std::invalid_argument("standard errors need >= 2 realizations");
    means_.assign(static_cast<std::size_t>(realizations_) * windows_.size() * orders_.size(), 0.0);
    max_sample_.assign(means_.size(), 0.0);
    counts_.assign(static_cast<std::size_t>(realizations_) * windows_.size(), 0.0);
    seen_.assign(static_cast<std::size_t>(realizations_), 0);
}

void MomentAccumulator::add(const FieldRealization& f) {
    check_slot(f.index, realizations_, seen_);
    const int nx = f.nx, nt = f.nt;
    std::vector<double> prefix;
    std::vector<double> sums(windows_.size() * orders_.size(), 0.0);
    std::vector<double> maxs(windows_.size() * orders_.size(), 0.0);
    std::vector<std::size_t> counts(windows_.size(), 0);

    if (axis_ == Axis::spatial) {
        prefix.resize(static_cast<std::size_t>(nx) + 1);
        for (int j = 0; j < nt; ++j) {
            const double* row = f.values.data() + static_cast<std::size_t>(j) * nx;
            prefix[0] = 0.0;
            for (int i = 0; i < nx; ++i) prefix[static_cast<std::size_t>(i) + 1] =
                prefix[static_cast<std::size_t>(i)] + row[i];
            for (std::size_t wi = 0; wi < windows_.size(); ++wi) {
                const int w = windows_[wi];
                if (w > nx)
                    throw std::invalid_argument("window of " + std::to_string(w) +
                                                " cells exceeds grid width " + std::to_string(nx));
                const int stride = std::max(1, w / 4);
                for (int i = 0; i < nx; i += stride) {
                    // x is periodic, so windows wrap.
                    const double wsum =
                        i + w <= nx
                            ? prefix[static_cast<std::size_t>(i + w)] - prefix[static_cast<std::size_t>(i)]
                            : (prefix[static_cast<std::size_t>(nx)] - prefix[static_cast<std::size_t>(i)]) +
                                  prefix[static_cast<std::size_t>(i + w - nx)];
                    const double avg = wsum / w;
                    ++counts[wi];
                    for (std::size_t oi = 0; oi < orders_.size(); ++oi) {
                        const double v = pow_int(avg, orders_[oi]);
                        sums[wi * orders_.size() + oi] += v;
                        maxs[wi * orders_.size() + oi] = std::max(maxs[wi * orders_.size() + oi], v);
                    }
                }
            }
        }
    } else {
        prefix.resize(static_cast<std::size_t>(nt) + 1);
        for (int i = 0; i < nx; ++i) {
            prefix[0] = 0.0;
            for (int j = 0; j < nt; ++j)
                prefix[static_cast<std::size_t>(j) + 1] =
                    prefix[static_cast<std::size_t>(j)] + f.at(i, j);
            for (std::size_t wi = 0; wi < windows_.size(); ++wi) {
                const int w = windows_[wi];
                if (w > nt)
                    throw std::invalid_argument("window of " + std::to_string(w) +
                                                " cells exceeds grid depth " + std::to_string(nt));
                const int stride = std::max(1, w / 4);
                for (int j = 0; j + w <= nt; j += stride) {
                    const double avg = (prefix[static_cast<std::size_t>(j + w)] -
                                        prefix[static_cast<std::size_t>(j)]) /
                                       w;
                    ++counts[wi];
                    for (std::size_t oi = 0; oi < orders_.size(); ++oi) {
                        const double v = pow_int(avg, orders_[oi]);
                        sums[wi * orders_.size() + oi] += v;
                        maxs[wi * orders_.size() + oi] = std::max(maxs[wi * orders_.size() + oi], v);
                    }
                }
            }
        }
    }

    for (std::size_t wi = 0; wi < windows_.size(); ++wi) {
        counts_[static_cast<std::size_t>(f.index) * windows_.size() + wi] =
            static_cast<double>(counts[wi]);
        for (std::size_t oi = 0; oi < orders_.size(); ++oi) {
            const std::size_t s = slot(f.index, wi, oi);
            means_[s] = sums[wi * orders_.size() + oi] / static_cast<double>(counts[wi]);
            max_sample_[s] = maxs[wi * orders_.size() + oi];
        }
    }
    seen_[static_cast<std::size_t>(f.index)] = 1;
}

std::vector<MomentEstimate> MomentAccumulator::results(double cell_size) const {
    std::vector<MomentEstimate> out;
    const std::size_t stride = windows_.size() * orders_.size();
    for (std::size_t wi = 0; wi < windows_.size(); ++wi) {
        for (std::size_t oi = 0; oi < orders_.size(); ++oi) {
            const std::size_t offset = wi * orders_.size() + oi;
            const MeanSe m = reduce(means_, seen_, stride, offset);

            double grand = 0.0, total = 0.0, top_real = 0.0, top_sample = 0.0;
            for (std::size_t r = 0; r < seen_.size(); ++r) {
                if (!seen_[r]) continue;
                const double v = means_[r * stride + offset];
                total += v;
                grand += v * counts_[r * windows_.size() + wi];
                top_real = std::max(top_real, v);
                top_sample = std::max(top_sample, max_sample_[r * stride + offset]);
            }
            const bool warn = total > 0.0 && ((m.used >= 4 && top_real / total > 0.5) ||
                                              top_sample > 0.5 * grand);
            out.push_back({windows_[wi] * cell_size, orders_[oi], m.mean, m.se, warn});
        }
    }
    return out;
}

std::vector<LagEstimate> empirical_two_point(std::span<const FieldRealization> fields, Axis axis,
                                             std::span<const int> lag_cells,
                                             std::pair<int, int> orders) {
    TwoPointAccumulator acc(axis, std::vector<int>(lag_cells.begin(), lag_cells.end()), orders,
                            static_cast<int>(fields.size()));
    for (const FieldRealization& f : fields) acc.add(f);
    return acc.results(axis == Axis::temporal ? fields.front().dt : fields.front().dx);
}

std::vector<MomentEstimate> coarse_moments(std::span<const FieldRealization> fields, Axis axis,
                                           int order, std::span<const int> window_cells) {
    MomentAccumulator acc(axis, std::vector<int>(window_cells.begin(), window_cells.end()),
                          {order}, static_cast<int>(fields.size()));
    for (const FieldRealization& f : fields) acc.add(f);
    return acc.results(axis == Axis::temporal ? fields.front().dt : fields.front().dx);
}

PowerLawFit fit_powerlaw(std::span<const std::pair<double, double>> points, double lo, double hi) {
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto [lag, value] = points[i];
        if (!(lag >= lo && lag <= hi)) continue;
        if (!(lag > 0.0))
            throw std::invalid_argument("fit_powerlaw: lag at index " + std::to_string(i) +
                                        " is nonpositive (" + std::to_string(lag) + ")");
        if (!(value > 0.0))
            throw std::invalid_argument("fit_powerlaw: value at index " + std::to_string(i) +
                                        " is nonpositive (" + std::to_string(value) +
                                        "); log-log fit undefined");
        xs.push_back(std::log(lag));
        ys.push_back(std::log(value));
    }
    const std::size_t n = xs.size();
    if (n < 5)
        throw std::invalid_argument("fit_powerlaw requires >= 5 points in range [" +
                                    std::to_string(lo) + ", " + std::to_string(hi) + "], got " +
                                    std::to_string(n));
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (!(sxx > 0.0))
        throw std::invalid_argument("fit_powerlaw: abscissae have zero variance (all lags equal)");
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = ys[i] - (intercept + slope * xs[i]);
        ssr += e * e;
    }
    const double r2 = syy > 0.0 ? 1.0 - ssr / syy : 1.0;
    return {slope, intercept, r2, lo, hi, static_cast<int>(n)};
}

}  // namespace ambit

#include "ambit/simulate.hpp"

#include <atomic>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace ambit {

std::vector<std::string> validate_lattice(const LatticeConfig& lat, const AmbitBoundary& boundary) {
    std::vector<std::string> bad;
    auto fail = [&](const std::string& m) { bad.push_back(m); };
    if (!(lat.dx > 0.0)) fail("lattice dx must be positive");
    if (!(lat.dt > 0.0)) fail("lattice dt must be positive");
    if (lat.nx < 1) fail("lattice nx must be >= 1");
    if (lat.nt < 1) fail("lattice nt must be >= 1");
    if (lat.realizations < 1) fail("lattice realizations must be >= 1");
    if (lat.threads < 0) fail("lattice threads must be >= 0 (0 selects the hardware count)");
    if (!bad.empty()) return bad;

    const double T = boundary.spec().T;
    if (!(lat.dt < T)) {
        std::ostringstream os;
        os << "lattice dt must be smaller than the decorrelation time (dt=" << lat.dt
           << ", T=" << T << ")";
        fail(os.str());
        return bad;
    }
    const AmbitMask mask = ambit_mask(boundary, lat.dx, lat.dt);
    const int need = resolved_burn_in(lat, boundary);
    if (lat.burn_in_depth != 0 && lat.burn_in_depth < need) {
        std::ostringstream os;
        os << "burn_in_depth=" << lat.burn_in_depth << " does not cover the ambit depth (need >= "
           << need << " slices so burn_in*dt >= T)";
        fail(os.str());
    }
    if (2 * mask.max_half_cells() + 1 > lat.nx) {
        std::ostringstream os;
        os << "grid too narrow: nx=" << lat.nx << " must exceed the mask width "
           << 2 * mask.max_half_cells() + 1 << " (nx*dx must exceed the decorrelation length "
           << boundary.decorrelation_length() << ")";
        fail(os.str());
    }
    return bad;
}

int resolved_burn_in(const LatticeConfig& lat, const AmbitBoundary& boundary) {
    const AmbitMask mask = ambit_mask(boundary, lat.dx, lat.dt);
    const int cover = static_cast<int>(std::ceil(boundary.spec().T / lat.dt - 1e-12));
    const int need = std::max(mask.depth(), cover);
    return std::max(need, lat.burn_in_depth);
}

namespace {

class CellSource {
public:
    CellSource(const LevyBasisSpec& basis, double area, const GenerateOptions& opt)
        : basis_(basis), area_(area), override_(opt.cell_override ? &opt.cell_override : nullptr) {}

    double draw(RandomStream& rng) const {
        if (override_) return (*override_)(area_, rng);
        return basis_.sample_cell(area_, rng);
    }

private:
    const LevyBasisSpec& basis_;
    double area_;
    const std::function<double(double, RandomStream&)>* override_;
};

// Windowed sum of a prefix row over the inclusive periodic cell range
// [i-half, i+half]; the window is validated to be narrower than the grid.
inline double window_sum(const double* prefix, int nx, int i, int half) {
    int a = i - half;
    int b = i + half;
    if (a < 0) a += nx;
    if (b >= nx) b -= nx;
    if (a <= b) return prefix[b + 1] - prefix[a];
    return (prefix[nx] - prefix[a]) + prefix[b + 1];
}

FieldRealization generate_one(const LevyBasisSpec& basis, const AmbitBoundary& boundary,
                              const LatticeConfig& lat, const AmbitMask& mask, int burn,
                              int realization, const GenerateOptions& opt) {
    const int nx = lat.nx, nt = lat.nt;
    const int depth = mask.depth();
    RandomStream rng = RandomStream::substream(lat.seed, static_cast<std::uint64_t>(realization));
    const CellSource cells(basis, lat.dx * lat.dt, opt);

    FieldRealization field;
    field.nx = nx;
    field.nt = nt;
    field.dx = lat.dx;
    field.dt = lat.dt;
    field.index = realization;
    field.values.assign(static_cast<std::size_t>(nx) * nt, 0.0);

    // Ring of the last `depth` noise rows. The fast path keeps prefix
    // sums, the reference path raw cells.
    std::vector<std::vector<double>> prefix_ring;
    std::vector<std::vector<double>> raw_ring;
    if (opt.reference_path) {
        raw_ring.assign(depth, std::vector<double>(static_cast<std::size_t>(nx)));
    } else {
        prefix_ring.assign(depth, std::vector<double>(static_cast<std::size_t>(nx) + 1, 0.0));
    }
    std::vector<double> row(static_cast<std::size_t>(nx));
    std::vector<double> acc(static_cast<std::size_t>(nx));

    // Noise row k covers t in [(k-burn)*dt, (k-burn+1)*dt); field slice j
    // at t = j*dt reads rows burn+j-1-dj. Rows below burn-depth are never
    // read and are not sampled.
    const int first_row = burn - depth;
    int next_row = first_row;
    for (int j = 0; j < nt; ++j) {
        for (; next_row <= burn + j - 1; ++next_row) {
            for (int i = 0; i < nx; ++i) row[static_cast<std::size_t>(i)] = cells.draw(rng);
            if (opt.reference_path) {
                raw_ring[static_cast<std::size_t>(next_row % depth)] = row;
            } else {
                std::vector<double>& p = prefix_ring[static_cast<std::size_t>(next_row % depth)];
                double run = 0.0;
                p[0] = 0.0;
                for (int i = 0; i < nx; ++i) {
                    run += row[static_cast<std::size_t>(i)];
                    p[static_cast<std::size_t>(i) + 1] = run;
                }
            }
        }

        double* out = field.values.data() + static_cast<std::size_t>(j) * nx;
        if (opt.reference_path) {
            for (int i = 0; i < nx; ++i) {
                double sum = 0.0;
                for (const AmbitMask::Row& r : mask.rows) {
                    const std::vector<double>& cellsrow =
                        raw_ring[static_cast<std::size_t>((burn + j - 1 - r.dj) % depth)];
                    for (int di = -r.half_cells; di <= r.half_cells; ++di) {
                        int c = i + di;
                        if (c < 0) c += nx;
                        if (c >= nx) c -= nx;
                        sum += cellsrow[static_cast<std::size_t>(c)];
                    }
                }
                out[i] = std::exp(sum);
            }
        } else {
            std::fill(acc.begin(), acc.end(), 0.0);
            for (const AmbitMask::Row& r : mask.rows) {
                const double* p =
                    prefix_ring[static_cast<std::size_t>((burn + j - 1 - r.dj) % depth)].data();
                for (int i = 0; i < nx; ++i)
                    acc[static_cast<std::size_t>(i)] += window_sum(p, nx, i, r.half_cells);
            }
            for (int i = 0; i < nx; ++i) out[i] = std::exp(acc[static_cast<std::size_t>(i)]);
        }
    }
    return field;
}

}  // namespace

void generate(const LevyBasisSpec& basis, const AmbitBoundary& boundary,
              const LatticeConfig& lat, const std::function<void(FieldRealization&&)>& sink,
              const GenerateOptions& opt) {
    const std::vector<std::string> bad = validate_lattice(lat, boundary);
    if (!bad.empty()) {
        std::string all = "invalid lattice config: ";
        for (std::size_t i = 0; i < bad.size(); ++i) all += (i ? "; " : "") + bad[i];
        throw std::invalid_argument(all);
    }
    const AmbitMask mask = ambit_mask(boundary, lat.dx, lat.dt);
    const int burn = resolved_burn_in(lat, boundary);

    const int workers = std::min(lat.threads, lat.realizations);
    if (workers <= 1) {
        for (int r = 0; r < lat.realizations; ++r)
            sink(generate_one(basis, boundary, lat, mask, burn, r, opt));
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            for (;;) {
                const int r = next.fetch_add(1);
                if (r >= lat.realizations) return;
                sink(generate_one(basis, boundary, lat, mask, burn, r, opt));
            }
        });
    }
    for (std::thread& t : pool) t.join();
}

}  // namespace ambit

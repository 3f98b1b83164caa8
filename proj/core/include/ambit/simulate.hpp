#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ambit/geometry.hpp"

namespace ambit {

struct LatticeConfig {
    double dx = 0.0;
    double dt = 0.0;
    int nx = 0;
    int nt = 0;            // retained time slices
    int burn_in_depth = 0; // extra past slices; 0 derives it from the mask
    std::uint64_t seed = 0;
    int realizations = 1;
    int threads = 1;
};

/// One lattice realization of the positive field eps(x, t); t-major
/// storage, x periodic.
struct FieldRealization {
    int nx = 0;
    int nt = 0;
    double dx = 0.0;
    double dt = 0.0;
    int index = 0;
    std::vector<double> values;

    double at(int i, int j) const { return values[static_cast<std::size_t>(j) * nx + i]; }
};

struct GenerateOptions {
    /// Full per-point stencil sums instead of incremental row windows;
    /// slow, used to validate the fast path.
    bool reference_path = false;
    /// Test hook replacing the per-cell noise draw (e.g. a constant 0,
    /// which must yield eps == 1 everywhere).
    std::function<double(double /*area*/, RandomStream&)> cell_override;
};

/// All lattice invariant violations against this boundary (empty = valid):
/// dt < T, burn-in covers the mask depth, grid wider than the mask.
std::vector<std::string> validate_lattice(const LatticeConfig& lattice,
                                          const AmbitBoundary& boundary);

/// Burn-in rows actually used for this lattice (mask depth, or the
/// configured value when larger).
int resolved_burn_in(const LatticeConfig& lattice, const AmbitBoundary& boundary);

/// Generate lattice realizations: each cell draws an independent basis
/// value of area dx*dt and eps at a grid point is exp of the sum over the
/// ambit mask. Realization r uses the substream (seed, r), so the stream
/// of fields is reproducible for any thread count. The sink may be
/// invoked concurrently, but only for distinct realizations.
void generate(const LevyBasisSpec& basis, const AmbitBoundary& boundary,
              const LatticeConfig& lattice, const std::function<void(FieldRealization&&)>& sink,
              const GenerateOptions& options = {});

}  // namespace ambit

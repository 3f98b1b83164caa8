#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ambit/boundary.hpp"
#include "ambit/levy.hpp"
#include "ambit/simulate.hpp"

namespace ambit {

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Value of the key-value config document: strings, numbers, booleans,
/// arrays and (inline or header) tables.
class ConfigValue {
public:
    using Array = std::vector<ConfigValue>;
    using Table = std::map<std::string, ConfigValue>;
    using Data = std::variant<std::string, double, std::int64_t, bool, Array, Table>;

    ConfigValue() : data_(Table{}) {}
    explicit ConfigValue(Data d) : data_(std::move(d)) {}

    bool is_table() const { return std::holds_alternative<Table>(data_); }
    bool has(const std::string& key) const;
    const ConfigValue& at(const std::string& key) const;

    double as_double(const std::string& context) const;
    std::int64_t as_int(const std::string& context) const;
    bool as_bool(const std::string& context) const;
    const std::string& as_string(const std::string& context) const;
    const Array& as_array(const std::string& context) const;
    const Table& as_table(const std::string& context) const;

    Data& data() { return data_; }
    const Data& data() const { return data_; }

private:
    Data data_;
};

/// Parse the configuration document (a TOML-style subset: `key = value`
/// lines, `[table]` headers, one-line inline tables and arrays, double
/// quoted strings, decimal numbers, booleans, # comments).
ConfigValue parse_config(const std::string& text);
ConfigValue parse_config_file(const std::string& path);

/// What to estimate from the simulated fields, in physical units; empty
/// lists are derived from the scaling spec (log-spaced across the
/// corresponding default fit range).
struct EstimationPlan {
    std::vector<double> temporal_lags;
    std::pair<int, int> two_point_orders{1, 1};
    std::vector<int> moment_orders{2, 3};
    std::vector<double> window_sizes;
    double fit_lo = 0.0;  // temporal two-point fit range; 0 = default
    double fit_hi = 0.0;
    double moment_fit_lo = 0.0;  // spatial coarse-moment fit range; 0 = default
    double moment_fit_hi = 0.0;
};

struct RunConfig {
    int schema = 1;
    LevyBasisSpec basis = LevyBasisSpec::gaussian(0.0, 1.0);
    double tau2 = 0.2;
    double t_scal = 0.01;
    double T_scal = 1.0;
    double T = 0.0;  // 0 = default 1.2 * T_scal
    LatticeConfig lattice;
    EstimationPlan estimation;
    std::string out_dir = "out";
    bool store_fields = true;
    bool analytic_only = false;

    double decorrelation_time() const { return T > 0.0 ? T : 1.2 * T_scal; }
};

/// The documented default configuration: Gaussian(0,1) basis, tau2 = 0.2,
/// scaling range [0.01, 1], T = 1.2, lattice dx = dt = 0.01 with 10^4
/// x-cells, 10^3 slices and 50 realizations.
RunConfig default_run_config();

LevyBasisSpec parse_basis(const ConfigValue& table);
RunConfig parse_run_config(const ConfigValue& doc);
RunConfig load_run_config(const std::string& path);

/// Every cross-field violation (empty = valid): scale ordering, lattice
/// invariants, lags/windows inside the grid, and the multifractality
/// condition for all requested moment orders.
std::vector<std::string> validate_run_config(const RunConfig& config);

/// Derived quantities shared by the CLI subcommands.
AmbitBoundary boundary_of(const RunConfig& config);

/// Materialized estimation plan in lattice cells.
struct ResolvedPlan {
    std::vector<int> temporal_lag_cells;
    std::vector<int> window_cells;
    double fit_lo, fit_hi;
    double moment_fit_lo, moment_fit_hi;
};
ResolvedPlan resolve_plan(const RunConfig& config);

}  // namespace ambit

#pragma once

#include <json.hpp>

#include "ambit/config.hpp"
#include "ambit/levy.hpp"

namespace ambit::detail {

inline nlohmann::json basis_json(const LevyBasisSpec& basis) {
    nlohmann::json j;
    j["kind"] = basis.kind();
    std::visit(
        [&j](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, GaussianBasis>) {
                j["a"] = p.drift;
                j["b"] = p.volatility;
            } else if constexpr (std::is_same_v<T, PoissonBasis>) {
                j["lambda"] = p.intensity;
                j["jump"] = p.jump;
            } else if constexpr (std::is_same_v<T, GammaBasis>) {
                j["rate"] = p.rate;
                j["gamma"] = p.inv_scale;
            } else if constexpr (std::is_same_v<T, StableSkewedBasis>) {
                j["alpha"] = p.alpha;
                j["c"] = p.scale;
            } else {
                j["alpha"] = p.steepness;
                j["beta"] = p.asymmetry;
                j["delta"] = p.scale;
                j["nu"] = p.drift;
            }
        },
        basis.params());
    return j;
}

// Config echo for reports and sidecars. Thread count is execution detail,
// not configuration of the result, and is deliberately omitted so output
// is byte-identical across --threads values.
inline nlohmann::json config_json(const RunConfig& cfg) {
    nlohmann::json j;
    j["schema"] = cfg.schema;
    j["basis"] = basis_json(cfg.basis);
    j["scaling"] = {{"tau2", cfg.tau2},
                    {"t_scal", cfg.t_scal},
                    {"T_scal", cfg.T_scal},
                    {"T", cfg.decorrelation_time()}};
    j["lattice"] = {{"dx", cfg.lattice.dx},
                    {"dt", cfg.lattice.dt},
                    {"nx", cfg.lattice.nx},
                    {"nt", cfg.lattice.nt},
                    {"realizations", cfg.lattice.realizations},
                    {"seed", cfg.lattice.seed},
                    {"burn_in_depth", cfg.lattice.burn_in_depth}};
    j["estimation"] = {{"orders", {cfg.estimation.two_point_orders.first,
                                   cfg.estimation.two_point_orders.second}},
                       {"moment_orders", cfg.estimation.moment_orders}};
    j["analytic_only"] = cfg.analytic_only;
    return j;
}

}  // namespace ambit::detail

#pragma once

#include <string>
#include <vector>

#include "ambit/config.hpp"

namespace ambit {

struct CheckResult {
    std::string name;
    bool pass;
    double value;
    double target;
    double tolerance;
    std::string detail;
};

struct VerifyReport {
    bool pass = false;
    std::vector<CheckResult> checks;
    std::vector<std::string> outputs;  // paths relative to the output dir
    std::string json;                  // canonical machine-readable report
    std::string summary;               // human-readable text
};

/// End-to-end verification: validate the config (throws ConfigError with
/// every violation when invalid), compute the analytic exponent tables
/// and correlators, and unless analytic_only simulate, estimate and
/// compare fitted slopes against the analytic exponents at the pinned
/// tolerances. Emits plot-ready CSVs into config.out_dir plus report.json
/// and report.txt. Deterministic for fixed (config, seed), independent of
/// thread count.
VerifyReport run_verify(const RunConfig& config);

/// Pinned acceptance tolerances of the verification pipeline.
struct VerifyTolerances {
    double analytic_slope_abs = 1e-3;   // analytic two-point slope vs -tau2
    double empirical_slope_rel = 0.15;  // empirical two-point slope vs -tau2
    double mean_field_sigmas = 3.0;     // empirical <eps> vs analytic
    double moment_slope_rel = 0.20;     // coarse-moment slopes vs -mu(n)
};
VerifyTolerances verify_tolerances();

/// Subcommand engines; each writes CSVs into config.out_dir and returns
/// the paths of the files written (relative to the output dir).
std::vector<std::string> cmd_exponents(const RunConfig& config, int max_order);
std::vector<std::string> cmd_volume(const RunConfig& config, const std::vector<double>& dxs,
                                    const std::vector<double>& dts);
std::vector<std::string> cmd_correlate(const RunConfig& config, const std::vector<double>& dxs,
                                       const std::vector<double>& dts);
std::vector<std::string> cmd_simulate(const RunConfig& config, bool store);
std::vector<std::string> cmd_estimate(const RunConfig& config, const std::string& fields_dir);
std::vector<std::string> cmd_fit(const RunConfig& config, const std::string& csv_path, double lo,
                                 double hi);
std::vector<std::string> cmd_appendix(const RunConfig& config, const std::vector<int>& orders,
                                      const std::vector<double>& scale_ratios, long mc_samples);

}  // namespace ambit

#include "ambit/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "ambit/correlators.hpp"
#include "ambit/csv.hpp"
#include "ambit/errors.hpp"
#include "ambit/estimate.hpp"
#include "ambit/field_io.hpp"
#include "json_util.hpp"

namespace ambit {

namespace fs = std::filesystem;

VerifyTolerances verify_tolerances() { return {}; }

namespace {

int resolved_threads(int requested, int realizations) {
    if (requested >= 1) return std::max(1, std::min(requested, realizations));
    const unsigned hw = std::thread::hardware_concurrency();
    const int t = hw ? static_cast<int>(hw) : 1;
    return std::max(1, std::min({t, 8, realizations}));
}

std::vector<double> geometric_grid(double lo, double hi, int count) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        const double f = count == 1 ? 0.0 : static_cast<double>(k) / (count - 1);
        out.push_back(std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo))));
    }
    return out;
}

const char* condition_str(ConditionStatus st) {
    switch (st) {
        case ConditionStatus::satisfied: return "true";
        case ConditionStatus::violated: return "false";
        default: return "undefined";
    }
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
    fs::create_directories(cfg.out_dir);
    return (fs::path(cfg.out_dir) / name).string();
}

// A decade centered geometrically inside [inner, outer], used for the
// analytic slope fits.
std::pair<double, double> centered_decade(double inner, double outer) {
    if (outer / inner <= 10.0) return {inner, outer};
    const double lo = std::sqrt(inner * outer / 10.0);
    return {lo, 10.0 * lo};
}

struct MeanBank {
    std::vector<double> means;
    std::vector<char> seen;

    explicit MeanBank(int realizations)
        : means(static_cast<std::size_t>(realizations), 0.0),
          seen(static_cast<std::size_t>(realizations), 0) {}

    void add(const FieldRealization& f) {
        double sum = 0.0;
        for (double v : f.values) sum += v;
        means[static_cast<std::size_t>(f.index)] = sum / static_cast<double>(f.values.size());
        seen[static_cast<std::size_t>(f.index)] = 1;
    }

    std::pair<double, double> result() const {  // mean, standard error
        double sum = 0.0;
        int used = 0;
        for (std::size_t r = 0; r < seen.size(); ++r)
            if (seen[r]) {
                sum += means[r];
                ++used;
            }
        const double mean = sum / used;
        double ss = 0.0;
        for (std::size_t r = 0; r < seen.size(); ++r)
            if (seen[r]) ss += (means[r] - mean) * (means[r] - mean);
        return {mean, std::sqrt(ss / (used - 1) / used)};
    }
};

struct EstimatorBank {
    TwoPointAccumulator two_point;
    MomentAccumulator moments;
    MeanBank mean;

    EstimatorBank(const RunConfig& cfg, const ResolvedPlan& plan)
        : two_point(Axis::temporal, plan.temporal_lag_cells, cfg.estimation.two_point_orders,
                    cfg.lattice.realizations),
          moments(Axis::spatial, plan.window_cells, cfg.estimation.moment_orders,
                  cfg.lattice.realizations),
          mean(cfg.lattice.realizations) {}

    void add(const FieldRealization& f) {
        two_point.add(f);
        moments.add(f);
        mean.add(f);
    }
};

std::vector<std::string> write_twopoint_csv(const RunConfig& cfg,
                                            const std::vector<LagEstimate>& lags) {
    CsvFile csv(out_path(cfg, "twopoint.csv"), {"lag", "estimate", "stderr"});
    for (const LagEstimate& e : lags)
        csv.row({CsvFile::cell(e.lag), CsvFile::cell(e.estimate), CsvFile::cell(e.std_error)});
    return {"twopoint.csv"};
}

std::vector<std::string> write_moments_csv(const RunConfig& cfg,
                                           const std::vector<MomentEstimate>& ms) {
    CsvFile csv(out_path(cfg, "moments.csv"), {"l", "n", "Mn", "stderr"});
    for (const MomentEstimate& e : ms)
        csv.row({CsvFile::cell(e.window), std::to_string(e.order), CsvFile::cell(e.estimate),
                 CsvFile::cell(e.std_error)});
    return {"moments.csv"};
}

}  // namespace

std::vector<std::string> cmd_exponents(const RunConfig& cfg, int max_order) {
    const ExponentTable table = make_exponent_table(cfg.basis, cfg.tau2, max_order);
    {
        CsvFile csv(out_path(cfg, "exponents_tau.csv"), {"n1", "n2", "tau"});
        for (const auto& e : table.tau)
            csv.row({std::to_string(e.n1), std::to_string(e.n2), CsvFile::cell(e.value)});
    }
    {
        CsvFile csv(out_path(cfg, "exponents_mu.csv"), {"n", "mu", "condition_ok"});
        for (const auto& e : table.mu)
            csv.row({std::to_string(e.n), CsvFile::cell(e.mu), condition_str(e.condition)});
    }
    return {"exponents_tau.csv", "exponents_mu.csv"};
}

namespace {

// Shared sweep grids of the volume/correlate tables: a temporal sweep at
// dx=0 and a spatial sweep at dt=0 across the scaling ranges.
void default_sweeps(const RunConfig& cfg, std::vector<std::pair<double, double>>& pairs) {
    const AmbitBoundary b = boundary_of(cfg);
    for (double dt : geometric_grid(cfg.t_scal, cfg.T_scal, 25)) pairs.emplace_back(0.0, dt);
    for (double dx : geometric_grid(b.spec().l_scal(), b.spec().L_scal(), 25))
        pairs.emplace_back(dx, 0.0);
}

std::vector<std::pair<double, double>> sweep_pairs(const RunConfig& cfg,
                                                   const std::vector<double>& dxs,
                                                   const std::vector<double>& dts) {
    std::vector<std::pair<double, double>> pairs;
    if (dxs.empty() && dts.empty()) {
        default_sweeps(cfg, pairs);
    } else {
        const std::vector<double> xs = dxs.empty() ? std::vector<double>{0.0} : dxs;
        const std::vector<double> ts = dts.empty() ? std::vector<double>{0.0} : dts;
        for (double dx : xs)
            for (double dt : ts) pairs.emplace_back(dx, dt);
    }
    return pairs;
}

}  // namespace

std::vector<std::string> cmd_volume(const RunConfig& cfg, const std::vector<double>& dxs,
                                    const std::vector<double>& dts) {
    const AmbitBoundary b = boundary_of(cfg);
    CsvFile csv(out_path(cfg, "volume.csv"), {"dx", "dt", "volume"});
    for (const auto& [dx, dt] : sweep_pairs(cfg, dxs, dts))
        csv.row({CsvFile::cell(dx), CsvFile::cell(dt), CsvFile::cell(overlap_volume(b, dx, dt))});
    return {"volume.csv"};
}

std::vector<std::string> cmd_correlate(const RunConfig& cfg, const std::vector<double>& dxs,
                                       const std::vector<double>& dts) {
    const AmbitBoundary b = boundary_of(cfg);
    CsvFile csv(out_path(cfg, "correlate.csv"), {"dx", "dt", "analytic"});
    for (const auto& [dx, dt] : sweep_pairs(cfg, dxs, dts))
        csv.row({CsvFile::cell(dx), CsvFile::cell(dt), CsvFile::cell(two_point(cfg.basis, b, dx, dt))});
    return {"correlate.csv"};
}

std::vector<std::string> cmd_simulate(const RunConfig& cfg, bool store) {
    std::vector<std::string> bad = validate_run_config(cfg);
    if (!bad.empty()) {
        std::string all = "invalid config:";
        for (const std::string& m : bad) all += "\n  - " + m;
        throw ConfigError(all);
    }
    const AmbitBoundary boundary = boundary_of(cfg);
    LatticeConfig lat = cfg.lattice;
    lat.threads = resolved_threads(lat.threads, lat.realizations);

    if (store) {
        FieldWriter writer(cfg.out_dir, cfg);
        generate(cfg.basis, boundary, lat, [&](FieldRealization&& f) { writer.add(f); });
        writer.finalize();
        return {"fields.bin", "fields.json"};
    }
    // --no-store: stream summary statistics through the estimators.
    const ResolvedPlan plan = resolve_plan(cfg);
    EstimatorBank bank(cfg, plan);
    generate(cfg.basis, boundary, lat, [&](FieldRealization&& f) { bank.add(f); });
    std::vector<std::string> files = write_twopoint_csv(cfg, bank.two_point.results(lat.dt));
    for (const std::string& f : write_moments_csv(cfg, bank.moments.results(lat.dx)))
        files.push_back(f);
    return files;
}

std::vector<std::string> cmd_estimate(const RunConfig& cfg, const std::string& fields_dir) {
    FieldReader reader(fields_dir);
    RunConfig effective = cfg;
    effective.lattice.nx = reader.nx();
    effective.lattice.nt = reader.nt();
    effective.lattice.dx = reader.dx();
    effective.lattice.dt = reader.dt();
    effective.lattice.realizations = reader.realizations();
    const ResolvedPlan plan = resolve_plan(effective);
    EstimatorBank bank(effective, plan);
    for (int r = 0; r < reader.realizations(); ++r) bank.add(reader.read(r));
    std::vector<std::string> files = write_twopoint_csv(cfg, bank.two_point.results(reader.dt()));
    for (const std::string& f : write_moments_csv(cfg, bank.moments.results(reader.dx())))
        files.push_back(f);
    return files;
}

std::vector<std::string> cmd_fit(const RunConfig& cfg, const std::string& csv_path, double lo,
                                 double hi) {
    std::ifstream in(csv_path);
    if (!in) throw std::runtime_error("cannot open CSV input: " + csv_path);
    std::string line;
    std::vector<std::pair<double, double>> points;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 || line.empty()) continue;  // header
        std::istringstream row(line);
        std::string a, b;
        if (!std::getline(row, a, ',') || !std::getline(row, b, ',')) continue;
        try {
            points.emplace_back(std::stod(a), std::stod(b));
        } catch (const std::exception&) {
            throw std::runtime_error("cannot parse lag,value from " + csv_path + " line " +
                                     std::to_string(line_no));
        }
    }
    double flo = lo, fhi = hi;
    if (!(fhi > flo)) {
        flo = points.empty() ? 0.0 : points.front().first;
        fhi = flo;
        for (const auto& [x, y] : points) {
            flo = std::min(flo, x);
            fhi = std::max(fhi, x);
        }
    }
    const PowerLawFit fit = fit_powerlaw(points, flo, fhi);
    CsvFile csv(out_path(cfg, "fit.csv"), {"slope", "intercept", "r2", "lo", "hi", "npoints"});
    csv.row({CsvFile::cell(fit.slope), CsvFile::cell(fit.intercept), CsvFile::cell(fit.r_squared),
             CsvFile::cell(fit.lo), CsvFile::cell(fit.hi), std::to_string(fit.n_points)});
    return {"fit.csv"};
}

std::vector<std::string> cmd_appendix(const RunConfig& cfg, const std::vector<int>& orders,
                                      const std::vector<double>& scale_ratios, long mc_samples) {
    const AmbitBoundary b = boundary_of(cfg);
    const double l_scal = b.spec().l_scal();
    CsvFile csv(out_path(cfg, "appendix.csv"), {"n", "l", "Fn", "stderr", "bound"});
    std::uint64_t stream_id = 0;
    for (int n : orders) {
        const double bound = appendix_Fn_bound(n, cfg.basis, cfg.tau2);
        for (double ratio : scale_ratios) {
            RandomStream rng = RandomStream::substream(cfg.lattice.seed, 0xF0000000ull + stream_id++);
            const McEstimate fn =
                appendix_Fn(n, 1.0, 1.0 / ratio, cfg.basis, cfg.tau2, mc_samples, rng);
            csv.row({std::to_string(n), CsvFile::cell(ratio * l_scal), CsvFile::cell(fn.value),
                     CsvFile::cell(fn.std_error), CsvFile::cell(bound)});
        }
    }
    return {"appendix.csv"};
}

VerifyReport run_verify(const RunConfig& cfg) {
    {
        const std::vector<std::string> bad = validate_run_config(cfg);
        if (!bad.empty()) {
            std::string all = "invalid config:";
            for (const std::string& m : bad) all += "\n  - " + m;
            throw ConfigError(all);
        }
    }
    const VerifyTolerances tol = verify_tolerances();
    const AmbitBoundary boundary = boundary_of(cfg);
    const double kappa = boundary.spec().kappa;
    const double l_scal = boundary.spec().l_scal();
    const double L_scal = boundary.spec().L_scal();
    const double m_field = mean_field(cfg.basis, boundary);

    VerifyReport report;
    int max_order = 8;
    for (int n : cfg.estimation.moment_orders) max_order = std::max(max_order, n);
    for (const std::string& f : cmd_exponents(cfg, max_order)) report.outputs.push_back(f);
    for (const std::string& f : cmd_correlate(cfg, {}, {})) report.outputs.push_back(f);

    std::vector<std::array<std::string, 7>> fit_rows;
    auto record_fit = [&](const std::string& name, const PowerLawFit& f) {
        fit_rows.push_back({name, format_double(f.slope), format_double(f.intercept),
                            format_double(f.r_squared), format_double(f.lo), format_double(f.hi),
                            std::to_string(f.n_points)});
    };

    // Analytic closure: the two-point correlator over one temporal and one
    // spatial decade inside the scaling ranges must scale with -tau2.
    const auto [t_lo, t_hi] = centered_decade(cfg.t_scal, cfg.T_scal);
    std::vector<std::pair<double, double>> pts;
    for (double dt : geometric_grid(t_lo, t_hi, 25))
        pts.emplace_back(dt, two_point(cfg.basis, boundary, 0.0, dt));
    const PowerLawFit analytic_t = fit_powerlaw(pts, t_lo, t_hi);
    record_fit("analytic_temporal", analytic_t);
    report.checks.push_back({"analytic_temporal_slope",
                             std::abs(analytic_t.slope + cfg.tau2) <= tol.analytic_slope_abs,
                             analytic_t.slope, -cfg.tau2, tol.analytic_slope_abs,
                             "slope of ln<eps eps> vs ln dt over one decade"});

    const auto [x_lo, x_hi] = centered_decade(l_scal, L_scal);
    pts.clear();
    for (double dx : geometric_grid(x_lo, x_hi, 25))
        pts.emplace_back(dx, two_point(cfg.basis, boundary, dx, 0.0));
    const PowerLawFit analytic_x = fit_powerlaw(pts, x_lo, x_hi);
    record_fit("analytic_spatial", analytic_x);
    report.checks.push_back({"analytic_spatial_slope",
                             std::abs(analytic_x.slope + cfg.tau2) <= tol.analytic_slope_abs,
                             analytic_x.slope, -cfg.tau2, tol.analytic_slope_abs,
                             "slope of ln<eps eps> vs ln dx over one decade"});

    nlohmann::json sim_json;
    if (!cfg.analytic_only) {
        const ResolvedPlan plan = resolve_plan(cfg);
        LatticeConfig lat = cfg.lattice;
        lat.threads = resolved_threads(lat.threads, lat.realizations);
        EstimatorBank bank(cfg, plan);
        generate(cfg.basis, boundary, lat, [&](FieldRealization&& f) { bank.add(f); });

        const std::vector<LagEstimate> lags = bank.two_point.results(lat.dt);
        const std::vector<MomentEstimate> moments = bank.moments.results(lat.dx);
        const auto [emp_mean, emp_mean_se] = bank.mean.result();

        for (const std::string& f : write_twopoint_csv(cfg, lags)) report.outputs.push_back(f);
        for (const std::string& f : write_moments_csv(cfg, moments)) report.outputs.push_back(f);

        pts.clear();
        for (const LagEstimate& e : lags) pts.emplace_back(e.lag, e.estimate);
        const PowerLawFit emp_fit = fit_powerlaw(pts, plan.fit_lo, plan.fit_hi);
        record_fit("empirical_temporal", emp_fit);
        report.checks.push_back({"empirical_temporal_slope",
                                 std::abs(emp_fit.slope + cfg.tau2) <= tol.empirical_slope_rel * cfg.tau2,
                                 emp_fit.slope, -cfg.tau2, tol.empirical_slope_rel * cfg.tau2,
                                 "fitted temporal two-point slope vs -tau2"});

        report.checks.push_back({"mean_field",
                                 std::abs(emp_mean - m_field) <= tol.mean_field_sigmas * emp_mean_se,
                                 emp_mean, m_field, tol.mean_field_sigmas * emp_mean_se,
                                 "ensemble mean of eps vs exp(K[1] Vol(S0)), 3 standard errors"});

        sim_json["mean_eps"] = emp_mean;
        sim_json["mean_eps_stderr"] = emp_mean_se;
        sim_json["temporal_slope"] = emp_fit.slope;

        for (int n : cfg.estimation.moment_orders) {
            pts.clear();
            for (const MomentEstimate& e : moments)
                if (e.order == n) pts.emplace_back(e.window, e.estimate);
            const PowerLawFit mfit = fit_powerlaw(pts, plan.moment_fit_lo, plan.moment_fit_hi);
            record_fit("moment_n" + std::to_string(n), mfit);
            const double mu = mu_exponent(cfg.basis, cfg.tau2, n);
            report.checks.push_back({"moment_slope_n" + std::to_string(n),
                                     std::abs(mfit.slope + mu) <= tol.moment_slope_rel * mu,
                                     mfit.slope, -mu, tol.moment_slope_rel * mu,
                                     "fitted coarse-moment slope vs -mu(n)"});
            sim_json["moment_slope_n" + std::to_string(n)] = mfit.slope;
        }
    }

    {
        CsvFile csv(out_path(cfg, "fits.csv"),
                    {"name", "slope", "intercept", "r2", "lo", "hi", "npoints"});
        for (const auto& r : fit_rows)
            csv.row({r[0], r[1], r[2], r[3], r[4], r[5], r[6]});
        report.outputs.push_back("fits.csv");
    }

    report.pass = true;
    for (const CheckResult& c : report.checks) report.pass = report.pass && c.pass;

    nlohmann::json j;
    j["schema"] = 1;
    j["config"] = detail::config_json(cfg);
    j["analytic"] = {{"mean_field", m_field},
                     {"volume_S0", boundary.volume()},
                     {"kappa", kappa},
                     {"l_scal", l_scal},
                     {"L_scal", L_scal},
                     {"critical_order", critical_order(cfg.basis, cfg.tau2)}};
    if (!cfg.analytic_only) j["simulation"] = sim_json;
    nlohmann::json checks = nlohmann::json::array();
    for (const CheckResult& c : report.checks)
        checks.push_back({{"name", c.name},
                          {"pass", c.pass},
                          {"value", c.value},
                          {"target", c.target},
                          {"tolerance", c.tolerance},
                          {"detail", c.detail}});
    j["checks"] = checks;
    j["outputs"] = report.outputs;
    j["pass"] = report.pass;
    report.json = j.dump(2) + "\n";

    std::ostringstream text;
    text << "verification " << (report.pass ? "PASSED" : "FAILED") << " ("
         << cfg.basis.describe() << ", tau2=" << cfg.tau2 << ")\n";
    for (const CheckResult& c : report.checks)
        text << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.name << ": value=" << c.value
             << " target=" << c.target << " tol=" << c.tolerance << "\n";
    text << "output files:";
    for (const std::string& f : report.outputs) text << ' ' << f;
    text << '\n';
    report.summary = text.str();

    std::ofstream(out_path(cfg, "report.json"), std::ios::binary) << report.json;
    std::ofstream(out_path(cfg, "report.txt"), std::ios::binary) << report.summary;
    report.outputs.push_back("report.json");
    report.outputs.push_back("report.txt");
    return report;
}

}  // namespace ambit

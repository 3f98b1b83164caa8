#include "ambit/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ambit/correlators.hpp"
#include "ambit/errors.hpp"

namespace ambit {

bool ConfigValue::has(const std::string& key) const {
    const Table* t = std::get_if<Table>(&data_);
    return t && t->count(key) > 0;
}

const ConfigValue& ConfigValue::at(const std::string& key) const {
    const Table* t = std::get_if<Table>(&data_);
    if (!t) throw ConfigError("expected a table while looking up key '" + key + "'");
    auto it = t->find(key);
    if (it == t->end()) throw ConfigError("missing required key '" + key + "'");
    return it->second;
}

double ConfigValue::as_double(const std::string& context) const {
    if (const double* d = std::get_if<double>(&data_)) return *d;
    if (const std::int64_t* i = std::get_if<std::int64_t>(&data_)) return static_cast<double>(*i);
    throw ConfigError(context + ": expected a number");
}

std::int64_t ConfigValue::as_int(const std::string& context) const {
    if (const std::int64_t* i = std::get_if<std::int64_t>(&data_)) return *i;
    throw ConfigError(context + ": expected an integer");
}

bool ConfigValue::as_bool(const std::string& context) const {
    if (const bool* b = std::get_if<bool>(&data_)) return *b;
    throw ConfigError(context + ": expected true or false");
}

const std::string& ConfigValue::as_string(const std::string& context) const {
    if (const std::string* s = std::get_if<std::string>(&data_)) return *s;
    throw ConfigError(context + ": expected a quoted string");
}

const ConfigValue::Array& ConfigValue::as_array(const std::string& context) const {
    if (const Array* a = std::get_if<Array>(&data_)) return *a;
    throw ConfigError(context + ": expected an array [ ... ]");
}

const ConfigValue::Table& ConfigValue::as_table(const std::string& context) const {
    if (const Table* t = std::get_if<Table>(&data_)) return *t;
    throw ConfigError(context + ": expected a table { ... }");
}

namespace {

struct LineParser {
    std::string_view s;
    std::size_t i = 0;
    int line;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ConfigError("config line " + std::to_string(line) + ": " + msg);
    }
    void skip_ws() {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    }
    bool eof() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            ++i;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    std::string bare_key() {
        skip_ws();
        const std::size_t start = i;
        while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_' || s[i] == '-'))
            ++i;
        if (i == start) fail("expected a key");
        return std::string(s.substr(start, i - start));
    }

    std::string quoted_string() {
        expect('"');
        std::string out;
        while (i < s.size() && s[i] != '"') {
            if (s[i] == '\\' && i + 1 < s.size()) {
                ++i;
                switch (s[i]) {
                    case 'n': out += '\n'; break;
                    case 't': out += '\t'; break;
                    case '"': out += '"'; break;
                    case '\\': out += '\\'; break;
                    default: fail("unsupported escape sequence");
                }
                ++i;
            } else {
                out += s[i++];
            }
        }
        if (i >= s.size()) fail("unterminated string");
        ++i;
        return out;
    }

    ConfigValue value() {
        skip_ws();
        if (i >= s.size()) fail("expected a value");
        const char c = s[i];
        if (c == '"') return ConfigValue(ConfigValue::Data{quoted_string()});
        if (c == '{') {
            ++i;
            ConfigValue::Table t;
            if (!accept('}')) {
                for (;;) {
                    const std::string k = bare_key();
                    expect('=');
                    t.emplace(k, value());
                    if (accept('}')) break;
                    expect(',');
                }
            }
            return ConfigValue(ConfigValue::Data{std::move(t)});
        }
        if (c == '[') {
            ++i;
            ConfigValue::Array a;
            if (!accept(']')) {
                for (;;) {
                    a.push_back(value());
                    if (accept(']')) break;
                    expect(',');
                }
            }
            return ConfigValue(ConfigValue::Data{std::move(a)});
        }
        if (s.compare(i, 4, "true") == 0) {
            i += 4;
            return ConfigValue(ConfigValue::Data{true});
        }
        if (s.compare(i, 5, "false") == 0) {
            i += 5;
            return ConfigValue(ConfigValue::Data{false});
        }
        // number: integer when it has no fraction or exponent
        const std::size_t start = i;
        while (i < s.size() && s[i] != ',' && s[i] != '}' && s[i] != ']' && s[i] != ' ' &&
               s[i] != '\t')
            ++i;
        const std::string_view tok = s.substr(start, i - start);
        if (tok.empty()) fail("expected a value");
        const bool integral = tok.find_first_of(".eE") == std::string_view::npos;
        if (integral) {
            std::int64_t v = 0;
            const auto r = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (r.ec != std::errc{} || r.ptr != tok.data() + tok.size())
                fail("cannot parse integer '" + std::string(tok) + "'");
            return ConfigValue(ConfigValue::Data{v});
        }
        double v = 0.0;
        const auto r = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (r.ec != std::errc{} || r.ptr != tok.data() + tok.size())
            fail("cannot parse number '" + std::string(tok) + "'");
        return ConfigValue(ConfigValue::Data{v});
    }
};

// Strip a # comment that is not inside a quoted string.
std::string strip_comment(const std::string& raw) {
    bool quoted = false;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i] == '"' && (i == 0 || raw[i - 1] != '\\')) quoted = !quoted;
        if (raw[i] == '#' && !quoted) return raw.substr(0, i);
    }
    return raw;
}

ConfigValue::Table* descend(ConfigValue::Table& root, const std::string& path, int line) {
    ConfigValue::Table* t = &root;
    std::size_t start = 0;
    while (start <= path.size()) {
        const std::size_t dot = path.find('.', start);
        const std::string part =
            path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (part.empty())
            throw ConfigError("config line " + std::to_string(line) + ": empty table name");
        auto [it, inserted] = t->emplace(part, ConfigValue(ConfigValue::Data{ConfigValue::Table{}}));
        if (!it->second.is_table())
            throw ConfigError("config line " + std::to_string(line) + ": '" + part +
                              "' already holds a non-table value");
        t = &std::get<ConfigValue::Table>(it->second.data());
        if (dot == std::string::npos) break;
        start = dot + 1;
    }
    return t;
}

}  // namespace

ConfigValue parse_config(const std::string& text) {
    ConfigValue doc;
    ConfigValue::Table& root = std::get<ConfigValue::Table>(doc.data());
    ConfigValue::Table* current = &root;

    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string body = strip_comment(raw);
        LineParser p{body, 0, line};
        if (p.eof()) continue;
        if (p.accept('[')) {
            std::string path;
            while (p.peek() != ']' && p.peek() != '\0') path += body[p.i++];
            p.expect(']');
            if (!p.eof()) p.fail("unexpected text after table header");
            // trim the path
            while (!path.empty() && (path.back() == ' ' || path.back() == '\t')) path.pop_back();
            std::size_t lead = 0;
            while (lead < path.size() && (path[lead] == ' ' || path[lead] == '\t')) ++lead;
            current = descend(root, path.substr(lead), line);
            continue;
        }
        const std::string key = p.bare_key();
        p.expect('=');
        ConfigValue v = p.value();
        if (!p.eof()) p.fail("unexpected trailing text after value");
        if (!current->emplace(key, std::move(v)).second)
            p.fail("duplicate key '" + key + "'");
    }
    return doc;
}

ConfigValue parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

namespace {

void reject_unknown(const ConfigValue::Table& t, std::initializer_list<const char*> known,
                    const std::string& where) {
    for (const auto& [key, value] : t) {
        bool ok = false;
        for (const char* k : known)
            if (key == k) ok = true;
        if (!ok) throw ConfigError("unknown key '" + key + "' in " + where);
    }
}

}  // namespace

LevyBasisSpec parse_basis(const ConfigValue& v) {
    const auto& t = v.as_table("basis");
    const std::string kind = v.at("kind").as_string("basis.kind");
    try {
        if (kind == "gaussian") {
            reject_unknown(t, {"kind", "a", "b"}, "basis (gaussian)");
            return LevyBasisSpec::gaussian(v.at("a").as_double("basis.a"),
                                           v.at("b").as_double("basis.b"));
        }
        if (kind == "poisson") {
            reject_unknown(t, {"kind", "lambda", "jump"}, "basis (poisson)");
            return LevyBasisSpec::poisson(v.at("lambda").as_double("basis.lambda"),
                                          v.at("jump").as_double("basis.jump"));
        }
        if (kind == "gamma") {
            reject_unknown(t, {"kind", "rate", "gamma"}, "basis (gamma)");
            return LevyBasisSpec::gamma(v.at("rate").as_double("basis.rate"),
                                        v.at("gamma").as_double("basis.gamma"));
        }
        if (kind == "stable") {
            reject_unknown(t, {"kind", "alpha", "c"}, "basis (stable)");
            return LevyBasisSpec::stable_skewed(v.at("alpha").as_double("basis.alpha"),
                                                v.at("c").as_double("basis.c"));
        }
        if (kind == "nig") {
            reject_unknown(t, {"kind", "alpha", "beta", "delta", "nu"}, "basis (nig)");
            return LevyBasisSpec::nig(
                v.at("alpha").as_double("basis.alpha"), v.at("beta").as_double("basis.beta"),
                v.at("delta").as_double("basis.delta"), v.at("nu").as_double("basis.nu"));
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("invalid basis parameters: ") + e.what());
    }
    throw ConfigError("unknown basis kind '" + kind +
                      "' (expected gaussian, poisson, gamma, stable or nig)");
}

RunConfig default_run_config() {
    RunConfig cfg;
    cfg.basis = LevyBasisSpec::gaussian(0.0, 1.0);
    cfg.tau2 = 0.2;
    cfg.t_scal = 0.01;
    cfg.T_scal = 1.0;
    cfg.T = 1.2;
    cfg.lattice.dx = 0.01;
    cfg.lattice.dt = 0.01;
    cfg.lattice.nx = 10000;
    cfg.lattice.nt = 1000;
    cfg.lattice.realizations = 50;
    cfg.lattice.seed = 1;
    cfg.lattice.threads = 0;  // auto
    return cfg;
}

RunConfig parse_run_config(const ConfigValue& doc) {
    RunConfig cfg = default_run_config();
    const auto& root = doc.as_table("config root");
    reject_unknown(root, {"schema", "basis", "scaling", "lattice", "estimation", "output"},
                   "config root");

    if (doc.has("schema")) {
        cfg.schema = static_cast<int>(doc.at("schema").as_int("schema"));
        if (cfg.schema != 1)
            throw ConfigError("unsupported schema " + std::to_string(cfg.schema) +
                              " (this build reads schema = 1)");
    }
    if (doc.has("basis")) cfg.basis = parse_basis(doc.at("basis"));

    if (doc.has("scaling")) {
        const ConfigValue& s = doc.at("scaling");
        reject_unknown(s.as_table("scaling"), {"tau2", "t_scal", "T_scal", "T"}, "[scaling]");
        if (s.has("tau2")) cfg.tau2 = s.at("tau2").as_double("scaling.tau2");
        if (s.has("t_scal")) cfg.t_scal = s.at("t_scal").as_double("scaling.t_scal");
        if (s.has("T_scal")) cfg.T_scal = s.at("T_scal").as_double("scaling.T_scal");
        cfg.T = s.has("T") ? s.at("T").as_double("scaling.T") : 0.0;
        if (cfg.T == 0.0) cfg.T = 1.2 * cfg.T_scal;
    }

    if (doc.has("lattice")) {
        const ConfigValue& l = doc.at("lattice");
        reject_unknown(l.as_table("lattice"),
                       {"dx", "dt", "nx", "nt", "realizations", "seed", "burn_in_depth", "threads"},
                       "[lattice]");
        if (l.has("dx")) cfg.lattice.dx = l.at("dx").as_double("lattice.dx");
        if (l.has("dt")) cfg.lattice.dt = l.at("dt").as_double("lattice.dt");
        if (l.has("nx")) cfg.lattice.nx = static_cast<int>(l.at("nx").as_int("lattice.nx"));
        if (l.has("nt")) cfg.lattice.nt = static_cast<int>(l.at("nt").as_int("lattice.nt"));
        if (l.has("realizations"))
            cfg.lattice.realizations =
                static_cast<int>(l.at("realizations").as_int("lattice.realizations"));
        if (l.has("seed"))
            cfg.lattice.seed = static_cast<std::uint64_t>(l.at("seed").as_int("lattice.seed"));
        if (l.has("burn_in_depth"))
            cfg.lattice.burn_in_depth =
                static_cast<int>(l.at("burn_in_depth").as_int("lattice.burn_in_depth"));
        if (l.has("threads"))
            cfg.lattice.threads = static_cast<int>(l.at("threads").as_int("lattice.threads"));
    }

    if (doc.has("estimation")) {
        const ConfigValue& e = doc.at("estimation");
        reject_unknown(e.as_table("estimation"),
                       {"temporal_lags", "orders", "moment_orders", "window_sizes", "fit_lo",
                        "fit_hi", "moment_fit_lo", "moment_fit_hi"},
                       "[estimation]");
        if (e.has("temporal_lags")) {
            cfg.estimation.temporal_lags.clear();
            for (const auto& x : e.at("temporal_lags").as_array("estimation.temporal_lags"))
                cfg.estimation.temporal_lags.push_back(x.as_double("estimation.temporal_lags[]"));
        }
        if (e.has("orders")) {
            const auto& a = e.at("orders").as_array("estimation.orders");
            if (a.size() != 2) throw ConfigError("estimation.orders must be a pair [n1, n2]");
            cfg.estimation.two_point_orders = {
                static_cast<int>(a[0].as_int("estimation.orders[0]")),
                static_cast<int>(a[1].as_int("estimation.orders[1]"))};
        }
        if (e.has("moment_orders")) {
            cfg.estimation.moment_orders.clear();
            for (const auto& x : e.at("moment_orders").as_array("estimation.moment_orders"))
                cfg.estimation.moment_orders.push_back(
                    static_cast<int>(x.as_int("estimation.moment_orders[]")));
        }
        if (e.has("window_sizes")) {
            cfg.estimation.window_sizes.clear();
            for (const auto& x : e.at("window_sizes").as_array("estimation.window_sizes"))
                cfg.estimation.window_sizes.push_back(x.as_double("estimation.window_sizes[]"));
        }
        if (e.has("fit_lo")) cfg.estimation.fit_lo = e.at("fit_lo").as_double("estimation.fit_lo");
        if (e.has("fit_hi")) cfg.estimation.fit_hi = e.at("fit_hi").as_double("estimation.fit_hi");
        if (e.has("moment_fit_lo"))
            cfg.estimation.moment_fit_lo = e.at("moment_fit_lo").as_double("estimation.moment_fit_lo");
        if (e.has("moment_fit_hi"))
            cfg.estimation.moment_fit_hi = e.at("moment_fit_hi").as_double("estimation.moment_fit_hi");
    }

    if (doc.has("output")) {
        const ConfigValue& o = doc.at("output");
        reject_unknown(o.as_table("output"), {"dir", "store"}, "[output]");
        if (o.has("dir")) cfg.out_dir = o.at("dir").as_string("output.dir");
        if (o.has("store")) cfg.store_fields = o.at("store").as_bool("output.store");
    }
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    return parse_run_config(parse_config_file(path));
}

AmbitBoundary boundary_of(const RunConfig& cfg) {
    return build_boundary(cfg.tau2, cfg.basis, cfg.t_scal, cfg.T_scal, cfg.decorrelation_time());
}

namespace {

std::vector<int> log_spaced_cells(double lo, double hi, double cell, int count, int min_cells,
                                  int max_cells) {
    std::vector<int> out;
    const int lo_c = std::max(min_cells, static_cast<int>(std::ceil(lo / cell - 1e-9)));
    const int hi_c = std::min(max_cells, static_cast<int>(std::floor(hi / cell + 1e-9)));
    if (hi_c < lo_c) return out;
    for (int k = 0; k < count; ++k) {
        const double f = count == 1 ? 0.0 : static_cast<double>(k) / (count - 1);
        const int c = static_cast<int>(
            std::lround(std::exp(std::log(static_cast<double>(lo_c)) +
                                 f * (std::log(static_cast<double>(hi_c)) -
                                      std::log(static_cast<double>(lo_c))))));
        if (out.empty() || c > out.back()) out.push_back(c);
    }
    return out;
}

}  // namespace

ResolvedPlan resolve_plan(const RunConfig& cfg) {
    const AmbitBoundary boundary = boundary_of(cfg);
    const double l_scal = boundary.spec().l_scal();
    const double L_scal = boundary.spec().L_scal();
    ResolvedPlan plan;
    plan.fit_lo = cfg.estimation.fit_lo > 0.0 ? cfg.estimation.fit_lo : 3.0 * cfg.t_scal;
    plan.fit_hi = cfg.estimation.fit_hi > 0.0 ? cfg.estimation.fit_hi : cfg.T_scal / 3.0;
    plan.moment_fit_lo =
        cfg.estimation.moment_fit_lo > 0.0 ? cfg.estimation.moment_fit_lo : 5.0 * l_scal;
    plan.moment_fit_hi =
        cfg.estimation.moment_fit_hi > 0.0 ? cfg.estimation.moment_fit_hi : L_scal / 2.0;

    if (cfg.estimation.temporal_lags.empty()) {
        plan.temporal_lag_cells =
            log_spaced_cells(plan.fit_lo, plan.fit_hi, cfg.lattice.dt, 16, 1, cfg.lattice.nt - 1);
    } else {
        for (double lag : cfg.estimation.temporal_lags) {
            const int c = static_cast<int>(std::lround(lag / cfg.lattice.dt));
            if (plan.temporal_lag_cells.empty() || c != plan.temporal_lag_cells.back())
                plan.temporal_lag_cells.push_back(c);
        }
    }
    if (cfg.estimation.window_sizes.empty()) {
        plan.window_cells = log_spaced_cells(plan.moment_fit_lo, plan.moment_fit_hi,
                                             cfg.lattice.dx, 12, 2, cfg.lattice.nx);
    } else {
        for (double w : cfg.estimation.window_sizes) {
            const int c = static_cast<int>(std::lround(w / cfg.lattice.dx));
            if (plan.window_cells.empty() || c != plan.window_cells.back())
                plan.window_cells.push_back(c);
        }
    }
    return plan;
}

std::vector<std::string> validate_run_config(const RunConfig& cfg) {
    std::vector<std::string> bad;
    auto fail = [&](const std::string& m) { bad.push_back(m); };

    if (cfg.schema != 1) fail("schema must be 1");
    if (!(cfg.tau2 > 0.0)) fail("scaling.tau2 must be positive");
    if (!(cfg.t_scal > 0.0)) fail("scaling.t_scal must be positive");
    if (!(cfg.t_scal < cfg.T_scal)) fail("scaling must satisfy t_scal < T_scal");
    if (!(cfg.T_scal <= cfg.decorrelation_time())) fail("scaling must satisfy T_scal <= T");
    if (cfg.out_dir.empty()) fail("output.dir must not be empty");

    double kappa = 0.0;
    bool basis_ok = true;
    try {
        kappa = cfg.basis.cumulant_gap(1.0, 1.0);
        if (!(kappa > 0.0)) {
            fail("basis cumulant gap K[2]-2K[1] must be positive");
            basis_ok = false;
        }
    } catch (const DomainError& e) {
        fail(std::string("basis cannot support two-point correlations: ") + e.what());
        basis_ok = false;
    }

    if (bad.empty() && basis_ok) {
        const AmbitBoundary boundary = boundary_of(cfg);
        if (!cfg.analytic_only)
            for (const std::string& m : validate_lattice(cfg.lattice, boundary)) fail(m);

        const ResolvedPlan plan = resolve_plan(cfg);
        for (double lag : cfg.estimation.temporal_lags) {
            const double cells = lag / cfg.lattice.dt;
            if (std::abs(cells - std::lround(cells)) > 1e-6 * std::max(1.0, cells))
                fail("temporal lag " + std::to_string(lag) + " is not a multiple of dt");
            if (!(lag >= cfg.lattice.dt) || std::lround(cells) >= cfg.lattice.nt)
                fail("temporal lag " + std::to_string(lag) + " outside the grid depth");
        }
        for (double w : cfg.estimation.window_sizes) {
            const double cells = w / cfg.lattice.dx;
            if (std::abs(cells - std::lround(cells)) > 1e-6 * std::max(1.0, cells))
                fail("window size " + std::to_string(w) + " is not a multiple of dx");
            if (std::lround(cells) < 2 || std::lround(cells) > cfg.lattice.nx)
                fail("window size " + std::to_string(w) + " outside the grid width");
        }
        if (!cfg.analytic_only) {
            if (plan.temporal_lag_cells.size() < 5)
                fail("fewer than 5 usable temporal lags in the fit range [" +
                     std::to_string(plan.fit_lo) + ", " + std::to_string(plan.fit_hi) + "]");
            if (plan.window_cells.size() < 5)
                fail("fewer than 5 usable window sizes in the moment fit range [" +
                     std::to_string(plan.moment_fit_lo) + ", " + std::to_string(plan.moment_fit_hi) +
                     "]");
        }

        const auto [n1, n2] = cfg.estimation.two_point_orders;
        if (n1 < 1 || n2 < 1) fail("estimation.orders must be positive integers");
        else if (!cfg.basis.cumulant_defined(n1 + n2))
            fail("two-point orders (" + std::to_string(n1) + "," + std::to_string(n2) +
                 "): K[" + std::to_string(n1 + n2) + "] is outside the basis domain");

        for (int n : cfg.estimation.moment_orders) {
            if (n < 1) {
                fail("moment orders must be positive integers");
                continue;
            }
            for (int k = 2; k <= n; ++k) {
                const ConditionStatus st = check_multifractal_condition(cfg.basis, cfg.tau2, k);
                if (st == ConditionStatus::undefined) {
                    fail("moment order " + std::to_string(n) + ": K[" + std::to_string(k) +
                         "] is outside the basis domain, the moment does not exist");
                    break;
                }
                if (st == ConditionStatus::violated) {
                    fail("moment order " + std::to_string(n) +
                         ": multifractality condition mu(k)-mu(k-1) < 1 is violated at k=" +
                         std::to_string(k));
                    break;
                }
            }
        }

        if (plan.fit_lo >= plan.fit_hi) fail("temporal fit range is empty (fit_lo >= fit_hi)");
        if (plan.moment_fit_lo >= plan.moment_fit_hi)
            fail("moment fit range is empty (moment_fit_lo >= moment_fit_hi)");
    }
    return bad;
}

}  // namespace ambit

#include "ambit/levy.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace ambit {

namespace {

std::string num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

[[noreturn]] void bad(const std::string& msg) { throw std::invalid_argument(msg); }

// Michael-Schucany-Haas inverse-Gaussian sampler, IG(mean mu, shape lambda).
// The root is evaluated in the rationalized form y = mu/(1+q+sqrt(q^2+2q))
// which avoids cancellation for large chi-square draws.
double sample_inverse_gaussian(double mu, double lambda, RandomStream& rng) {
    const double z = rng.normal();
    const double q = mu * z * z / (2.0 * lambda);
    const double y = mu / (1.0 + q + std::sqrt(q * (q + 2.0)));
    if (rng.uniform() <= mu / (mu + y)) return y;
    return mu * mu / y;
}

// Chambers-Mallows-Stuck sampler for a standard stable variate
// S_alpha(sigma=1, beta, mu=0), alpha != 1.
double sample_stable_standard(double alpha, double beta, RandomStream& rng) {
    const double t = beta * std::tan(std::numbers::pi * alpha / 2.0);
    const double b = std::atan(t) / alpha;
    const double s = std::pow(1.0 + t * t, 1.0 / (2.0 * alpha));
    const double v = std::numbers::pi * (rng.uniform() - 0.5);
    double w = rng.exponential();
    while (w <= 0.0) w = rng.exponential();
    const double av = alpha * (v + b);
    return s * std::sin(av) / std::pow(std::cos(v), 1.0 / alpha) *
           std::pow(std::cos(v - av) / w, (1.0 - alpha) / alpha);
}

}  // namespace

LevyBasisSpec LevyBasisSpec::gaussian(double drift, double volatility) {
    if (!(volatility > 0.0)) bad("Gaussian basis requires volatility b > 0 (b=" + num(volatility) + ")");
    return LevyBasisSpec(Params{GaussianBasis{drift, volatility}});
}

LevyBasisSpec LevyBasisSpec::poisson(double intensity, double jump) {
    if (!(intensity > 0.0)) bad("Poisson basis requires intensity lambda > 0 (lambda=" + num(intensity) + ")");
    if (!(jump > 0.0)) bad("Poisson basis requires jump size > 0 (jump=" + num(jump) + ")");
    return LevyBasisSpec(Params{PoissonBasis{intensity, jump}});
}

LevyBasisSpec LevyBasisSpec::gamma(double rate, double inv_scale) {
    if (!(rate > 0.0)) bad("Gamma basis requires rate > 0 (rate=" + num(rate) + ")");
    if (!(inv_scale > 0.0)) bad("Gamma basis requires inverse scale gamma > 0 (gamma=" + num(inv_scale) + ")");
    return LevyBasisSpec(Params{GammaBasis{rate, inv_scale}});
}

LevyBasisSpec LevyBasisSpec::stable_skewed(double alpha, double scale) {
    if (!(alpha > 1.0 && alpha <= 2.0))
        bad("StableSkewed basis requires alpha in (1, 2] (alpha=" + num(alpha) +
            "): K[xi]=c*xi^alpha with c > 0 is not a valid (convex) cumulant for alpha <= 1");
    if (!(scale > 0.0)) bad("StableSkewed basis requires scale c > 0 (c=" + num(scale) + ")");
    return LevyBasisSpec(Params{StableSkewedBasis{alpha, scale}});
}

LevyBasisSpec LevyBasisSpec::nig(double steepness, double asymmetry, double scale, double drift) {
    if (!(steepness > 0.0)) bad("NIG basis requires steepness alpha > 0 (alpha=" + num(steepness) + ")");
    if (!(std::abs(asymmetry) < steepness))
        bad("NIG basis requires |beta| < alpha (alpha=" + num(steepness) + ", beta=" + num(asymmetry) + ")");
    if (!(scale > 0.0)) bad("NIG basis requires scale delta > 0 (delta=" + num(scale) + ")");
    return LevyBasisSpec(Params{NigBasis{steepness, asymmetry, scale, drift}});
}

double LevyBasisSpec::cumulant(double xi) const {
    if (xi == 0.0) return 0.0;
    return std::visit(
        [xi](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, GaussianBasis>) {
                return p.drift * xi + 0.5 * p.volatility * p.volatility * xi * xi;
            } else if constexpr (std::is_same_v<T, PoissonBasis>) {
                return p.intensity * std::expm1(p.jump * xi);
            } else if constexpr (std::is_same_v<T, GammaBasis>) {
                if (!(xi < p.inv_scale))
                    throw DomainError("Gamma cumulant undefined at xi=" + num(xi) +
                                      ": requires xi < gamma (gamma=" + num(p.inv_scale) + ")");
                return -p.rate * std::log1p(-xi / p.inv_scale);
            } else if constexpr (std::is_same_v<T, StableSkewedBasis>) {
                if (!(xi >= 0.0))
                    throw DomainError("StableSkewed cumulant undefined at xi=" + num(xi) +
                                      ": requires xi >= 0");
                return p.scale * std::pow(xi, p.alpha);
            } else {
                const double a = p.steepness, b = p.asymmetry;
                if (!(std::abs(b + xi) <= a))
                    throw DomainError("NIG cumulant undefined at xi=" + num(xi) +
                                      ": requires |beta + xi| <= alpha (alpha=" + num(a) +
                                      ", beta=" + num(b) + ")");
                return p.drift * xi +
                       p.scale * (std::sqrt(a * a - b * b) - std::sqrt(a * a - (b + xi) * (b + xi)));
            }
        },
        params_);
}

bool LevyBasisSpec::cumulant_defined(double xi) const noexcept {
    return std::visit(
        [xi](const auto& p) -> bool {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, GammaBasis>) {
                return xi == 0.0 || xi < p.inv_scale;
            } else if constexpr (std::is_same_v<T, StableSkewedBasis>) {
                return xi >= 0.0;
            } else if constexpr (std::is_same_v<T, NigBasis>) {
                return xi == 0.0 || std::abs(p.asymmetry + xi) <= p.steepness;
            } else {
                return true;
            }
        },
        params_);
}

double LevyBasisSpec::cumulant_gap(double n1, double n2) const {
    return cumulant(n1 + n2) - cumulant(n1) - cumulant(n2);
}

double LevyBasisSpec::sample_cell(double area, RandomStream& rng) const {
    if (!(area > 0.0)) throw std::invalid_argument("sample_cell requires area > 0 (area=" + num(area) + ")");
    return std::visit(
        [area, &rng](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, GaussianBasis>) {
                return p.drift * area + p.volatility * std::sqrt(area) * rng.normal();
            } else if constexpr (std::is_same_v<T, PoissonBasis>) {
                std::poisson_distribution<long long> count(p.intensity * area);
                return p.jump * static_cast<double>(count(rng.engine()));
            } else if constexpr (std::is_same_v<T, GammaBasis>) {
                std::gamma_distribution<double> g(p.rate * area, 1.0 / p.inv_scale);
                return g(rng.engine());
            } else if constexpr (std::is_same_v<T, StableSkewedBasis>) {
                // Aggregate cumulant area*c*xi^alpha corresponds to
                // S_alpha(sigma_area, -1, 0) with
                // sigma_area^alpha = area*c*|cos(pi*alpha/2)|.
                const double cosf = std::abs(std::cos(std::numbers::pi * p.alpha / 2.0));
                const double sigma = std::pow(area * p.scale * cosf, 1.0 / p.alpha);
                return sigma * sample_stable_standard(p.alpha, -1.0, rng);
            } else {
                // Normal variance-mean mixture with an inverse-Gaussian
                // subordinator; delta and nu aggregate linearly in area.
                const double gamma0 = std::sqrt(p.steepness * p.steepness - p.asymmetry * p.asymmetry);
                const double delta_a = p.scale * area;
                const double y = sample_inverse_gaussian(delta_a / gamma0, delta_a * delta_a, rng);
                return p.drift * area + p.asymmetry * y + std::sqrt(y) * rng.normal();
            }
        },
        params_);
}

std::string LevyBasisSpec::kind() const {
    return std::visit(
        [](const auto& p) -> std::string {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, GaussianBasis>) return "gaussian";
            else if constexpr (std::is_same_v<T, PoissonBasis>) return "poisson";
            else if constexpr (std::is_same_v<T, GammaBasis>) return "gamma";
            else if constexpr (std::is_same_v<T, StableSkewedBasis>) return "stable";
            else return "nig";
        },
        params_);
}

std::string LevyBasisSpec::describe() const {
    return std::visit(
        [](const auto& p) -> std::string {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, GaussianBasis>) {
                return "gaussian(a=" + num(p.drift) + ", b=" + num(p.volatility) + ")";
            } else if constexpr (std::is_same_v<T, PoissonBasis>) {
                return "poisson(lambda=" + num(p.intensity) + ", jump=" + num(p.jump) + ")";
            } else if constexpr (std::is_same_v<T, GammaBasis>) {
                return "gamma(rate=" + num(p.rate) + ", gamma=" + num(p.inv_scale) + ")";
            } else if constexpr (std::is_same_v<T, StableSkewedBasis>) {
                return "stable(alpha=" + num(p.alpha) + ", c=" + num(p.scale) + ")";
            } else {
                return "nig(alpha=" + num(p.steepness) + ", beta=" + num(p.asymmetry) +
                       ", delta=" + num(p.scale) + ", nu=" + num(p.drift) + ")";
            }
        },
        params_);
}

}  // namespace ambit

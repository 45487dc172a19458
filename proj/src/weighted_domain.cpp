#include "sharpineq/weighted_domain.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "sharpineq/quadrature.hpp"
#include "sharpineq/special_functions.hpp"

namespace sharpineq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.14159265358979323846;

// ln V_B for the l^q ball. Liouville-Dirichlet over the orthant piece:
//   V_B = 2^{n-m} q^{-n} Gamma(1/q)^{n-m} prod Gamma((a_i+1)/q)
//         / Gamma(1 + n_a/q),
// which degenerates to the box 2^{n-m} / prod(a_i+1) as q -> inf.
double log_lq_ball(int n, int m, const std::vector<double>& a, double q,
                   double n_a) {
    if (q == kInf) {
        double s = (n - m) * std::log(2.0);
        for (double ai : a) s -= std::log(ai + 1.0);
        return s;
    }
    double s = (n - m) * std::log(2.0) - n * std::log(q) +
               (n - m) * lgamma(1.0 / q) - lgamma(1.0 + n_a / q);
    for (double ai : a) s += lgamma((ai + 1.0) / q);
    return s;
}

// ln vol of the unit l^q ball in R^d: 2^d Gamma(1+1/q)^d / Gamma(1+d/q).
double log_lq_volume(int d, double q) {
    const double invq = (q == kInf) ? 0.0 : 1.0 / q;
    return d * std::log(2.0) + d * lgamma(1.0 + invq) - lgamma(1.0 + d * invq);
}

// Product norm (||x||_inner^q + |t|^q)^{1/q}, scalar slot = the single
// weighted coordinate (m = 1) or a plain free coordinate (m = 0):
//   V_B = c * vol(K) / q * B((a+1)/q, d/q + 1),  c = 1 (m=1) or 2 (m=0),
// K the inner unit ball in R^d; q = inf gives c * vol(K) / (a+1).
double log_product_ball(const NormSpec& norm, int m, const std::vector<double>& a) {
    const int d = norm.dim - 1;
    const double ascal = (m == 1) ? a[0] : 0.0;
    const double c = (m == 1) ? 0.0 : std::log(2.0);
    const double lvol = log_lq_volume(d, norm.inner->q);
    if (norm.q == kInf) return c + lvol - std::log(ascal + 1.0);
    return c + lvol - std::log(norm.q) +
           lbeta((ascal + 1.0) / norm.q, static_cast<double>(d) / norm.q + 1.0);
}

// Last resort: uniform sampling of the bounding box [-1,1]^{n-m} x [0,1]^m.
double log_ball_monte_carlo(int n, int m, const std::vector<double>& a,
                            const NormSpec& norm) {
    std::mt19937_64 rng(kDefaultSeed);
    auto u01 = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    const std::int64_t samples = 4'000'000;
    std::vector<double> z(n);
    double sum = 0.0;
    for (std::int64_t s = 0; s < samples; ++s) {
        for (int i = 0; i < n - m; ++i) z[i] = 2.0 * u01() - 1.0;
        for (int j = 0; j < m; ++j) z[n - m + j] = u01();
        if (sharpineq::norm(norm, z) >= 1.0) continue;
        double w = 1.0;
        for (int j = 0; j < m; ++j) w *= std::pow(z[n - m + j], a[j]);
        sum += w;
    }
    return (n - m) * std::log(2.0) +
           std::log(sum / static_cast<double>(samples));
}

} // namespace

double WeightedDomain::sum_a() const {
    double s = 0.0;
    for (double ai : a) s += ai;
    return s;
}

WeightedDomain WeightedDomain::make(int n, int m, std::vector<double> a,
                                    NormSpec norm) {
    if (n < 1 || m < 0 || m > n)
        throw std::invalid_argument("WeightedDomain: need 1 <= n, 0 <= m <= n");
    if (static_cast<int>(a.size()) != m)
        throw std::invalid_argument("WeightedDomain: a must have m entries");
    for (double ai : a)
        if (!(ai >= 0.0) || !std::isfinite(ai))
            throw std::invalid_argument("WeightedDomain: exponents must be >= 0");
    if (norm.dim != n)
        throw std::invalid_argument("WeightedDomain: norm dimension != n");

    WeightedDomain dom;
    dom.n = n;
    dom.m = m;
    dom.a = std::move(a);
    dom.norm = std::move(norm);
    dom.n_a = n + dom.sum_a();

    if (dom.norm.kind == NormSpec::Kind::Lq) {
        dom.log_ball_measure = log_lq_ball(n, m, dom.a, dom.norm.q, dom.n_a);
    } else if (m <= 1) {
        dom.log_ball_measure = log_product_ball(dom.norm, m, dom.a);
    } else {
        dom.log_ball_measure = log_ball_monte_carlo(n, m, dom.a, dom.norm);
        dom.ball_measure_approximate = true;
    }
    return dom;
}

WeightedDomain WeightedDomain::half_space(int n, double a, NormSpec norm) {
    return make(n, 1, {a}, std::move(norm));
}

double ball_perimeter(const WeightedDomain& dom) {
    return dom.n_a * dom.ball_measure();
}

double radial_integral(const WeightedDomain& dom, const RadialFn& g,
                       double moment_shift, double rel_tol) {
    const double power = dom.n_a - 1.0 + moment_shift;
    auto f = [&](double r) {
        // the tail substitution can reach r where the profile underflows to 0
        // while r^power overflows; the true product is 0 there
        const double v = g.value(r);
        if (v == 0.0) return 0.0;
        const double w = v * std::pow(r, power);
        return std::isfinite(w) ? w : 0.0;
    };
    QuadratureOptions opts;
    opts.rel_tol = rel_tol;

    QuadratureResult res;
    if (std::isfinite(g.support_radius)) {
        const double R = g.support_radius;
        if (!(R > 0.0)) return 0.0;
        if (std::isfinite(g.edge_exponent) && g.edge_exponent != 0.0) {
            if (!(g.edge_exponent > -1.0))
                throw std::domain_error("radial_integral: non-integrable edge");
            res = integrate_edge_singular(f, 0.0, R, g.edge_exponent, opts);
        } else {
            res = integrate_interval(f, 0.0, R, opts);
        }
    } else {
        // divergence screen: r |f(r)| must decay at infinity
        const double h3 = std::abs(f(1e3)) * 1e3;
        const double h6 = std::abs(f(1e6)) * 1e6;
        if (h6 > h3 && h6 > 1e-280)
            throw std::domain_error("radial_integral: tail does not decay");
        res = integrate_halfline(f, opts);
    }
    return dom.n_a * dom.ball_measure() *
           require_converged(res, "radial_integral");
}

double surface_perimeter_quadrature(const WeightedDomain& dom) {
    if (!dom.norm.is_euclidean() || dom.m != 1 || (dom.n != 2 && dom.n != 3))
        throw std::invalid_argument(
            "surface_perimeter_quadrature: Euclidean norm, m = 1, n in {2, 3}");
    const double a = dom.a[0];
    QuadratureOptions opts;
    opts.rel_tol = 1e-12;
    if (dom.n == 2) {
        // upper unit half-circle (cos h, sin h), weight sin^a
        auto f = [a](double h) { return std::pow(std::sin(h), a); };
        return require_converged(integrate_interval(f, 0.0, kPi, opts),
                                 "surface_perimeter_quadrature");
    }
    // upper unit hemisphere, elevation e: weight sin^a e, area cos e de dl
    auto f = [a](double e) { return std::pow(std::sin(e), a) * std::cos(e); };
    return 2.0 * kPi *
           require_converged(integrate_interval(f, 0.0, 0.5 * kPi, opts),
                             "surface_perimeter_quadrature");
}

WeightedDomain parse_domain(const std::string& text) {
    if (text.rfind("domain:", 0) != 0)
        throw std::invalid_argument("parse_domain: expected 'domain:...'");
    const auto npos = std::string::npos;
    const auto norm_at = text.find("norm=");
    if (norm_at == npos)
        throw std::invalid_argument("parse_domain: missing norm=");
    std::string head = text.substr(7, norm_at - 7); // "n=..,m=..,a=..,"
    std::string norm_text = text.substr(norm_at + 5);

    int n = -1, m = -1;
    std::vector<double> a;
    std::istringstream hs(head);
    std::string field;
    while (std::getline(hs, field, ',')) {
        if (field.empty()) continue;
        if (field.rfind("n=", 0) == 0) {
            n = std::stoi(field.substr(2));
        } else if (field.rfind("m=", 0) == 0) {
            m = std::stoi(field.substr(2));
        } else if (field.rfind("a=", 0) == 0) {
            std::istringstream as(field.substr(2));
            std::string item;
            while (std::getline(as, item, ';'))
                a.push_back(std::stod(item));
        } else {
            throw std::invalid_argument("parse_domain: unknown field '" + field + "'");
        }
    }
    if (n < 1 || m < 0)
        throw std::invalid_argument("parse_domain: need n= and m=");
    if (norm_text.find(":dim=") == npos && norm_text.find("prod(", 0) == npos)
        norm_text += ":dim=" + std::to_string(n);
    return WeightedDomain::make(n, m, std::move(a), parse_norm(norm_text));
}

std::string to_string(const WeightedDomain& dom) {
    std::ostringstream os;
    os << "domain:n=" << dom.n << ",m=" << dom.m << ",a=";
    for (size_t i = 0; i < dom.a.size(); ++i)
        os << (i ? ";" : "") << dom.a[i];
    os << ",norm=" << to_string(dom.norm);
    return os.str();
}

} // namespace sharpineq

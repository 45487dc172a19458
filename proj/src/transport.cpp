#include "sharpineq/transport.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "sharpineq/quadrature.hpp"
#include "sharpineq/special_functions.hpp"

namespace sharpineq {

namespace {

constexpr int kTableSize = 4096;

double seg_mass(const WeightedDomain& dom, const RadialProfile& H, double a,
                double b) {
    if (b <= a) return 0.0;
    const double power = dom.n_a - 1.0;
    auto f = [&](double r) { return H.value(r) * std::pow(r, power); };
    QuadratureOptions o;
    o.rel_tol = 1e-12;
    o.max_subdivisions = 80;
    return integrate_interval(f, a, b, o).value;
}

// effective radius containing all but ~1e-12 of the mass
double effective_support(const WeightedDomain& dom, const RadialProfile& H) {
    if (std::isfinite(H.support_radius)) return H.support_radius;
    double peak = 0.0;
    for (int k = -20; k <= 40; ++k)
        peak = std::max(peak, H.value(std::pow(2.0, 0.5 * k)));
    double R = 1.0;
    while (R < 1e12 &&
           H.value(R) * std::pow(R, dom.n_a) > 1e-15 * std::max(peak, 1e-300))
        R *= 2.0;
    return R;
}

void build_table(const WeightedDomain& dom, const RadialProfile& H, double R,
                 std::vector<double>& grid, std::vector<double>& cum) {
    grid.resize(kTableSize);
    cum.resize(kTableSize);
    const double lo = std::log(R * 1e-5), hi = std::log(R);
    for (int i = 0; i < kTableSize; ++i)
        grid[i] = std::exp(lo + (hi - lo) * i / (kTableSize - 1));
    grid.back() = R;
    const double scale = dom.n_a * dom.ball_measure();
    cum[0] = scale * seg_mass(dom, H, 0.0, grid[0]);
    for (int i = 1; i < kTableSize; ++i)
        cum[i] = cum[i - 1] + scale * seg_mass(dom, H, grid[i - 1], grid[i]);
}

double table_mass(const WeightedDomain& dom, const RadialProfile& H,
                  const std::vector<double>& grid,
                  const std::vector<double>& cum, double r) {
    if (r <= 0.0) return 0.0;
    if (r >= grid.back()) return cum.back();
    const double scale = dom.n_a * dom.ball_measure();
    if (r <= grid.front()) return scale * seg_mass(dom, H, 0.0, r);
    const auto it = std::upper_bound(grid.begin(), grid.end(), r);
    const size_t j = it - grid.begin() - 1;
    return cum[j] + scale * seg_mass(dom, H, grid[j], r);
}

} // namespace

double TransportMap1D::mass_source(double r) const {
    return table_mass(dom, source, grid_f, cum_f, r);
}

double TransportMap1D::mass_target(double r) const {
    return table_mass(dom, target, grid_g, cum_g, r);
}

double TransportMap1D::psi(double r) const {
    if (r >= source_support) return target_support;
    const double m = std::min(mass_source(r), cum_g.back());
    if (m <= 0.0) return 0.0;
    const auto it = std::upper_bound(cum_g.begin(), cum_g.end(), m);
    size_t j = it - cum_g.begin();
    double lo, hi;
    if (j == 0) {
        lo = 0.0;
        hi = grid_g.front();
    } else if (j >= cum_g.size()) {
        return target_support;
    } else {
        lo = grid_g[j - 1];
        hi = grid_g[j];
    }
    const double base = j == 0 ? 0.0 : cum_g[j - 1];
    const double base_r = j == 0 ? 0.0 : grid_g[j - 1];
    const double scale = dom.n_a * dom.ball_measure();
    // safeguarded Newton on M_G(x) = m within the bracketing segment
    double x = 0.5 * (lo + hi);
    for (int it2 = 0; it2 < 60; ++it2) {
        const double h = base + scale * seg_mass(dom, target, base_r, x) - m;
        if (h > 0.0)
            hi = x;
        else
            lo = x;
        if (hi - lo < 1e-15 * hi) break;
        const double d = scale * target.value(x) * std::pow(x, dom.n_a - 1.0);
        double step = d > 0.0 ? x - h / d : 0.5 * (lo + hi);
        x = (step > lo && step < hi) ? step : 0.5 * (lo + hi);
    }
    return x;
}

double TransportMap1D::psi_prime(double r) const {
    const double F = source.value(r);
    if (!(F > 0.0) || r <= 0.0) return 0.0;
    const double p = psi(r);
    const double G = target.value(p);
    if (!(G > 0.0) || p <= 0.0) return 0.0;
    return F * std::pow(r, dom.n_a - 1.0) / (G * std::pow(p, dom.n_a - 1.0));
}

TransportMap1D radial_brenier(const WeightedDomain& dom,
                              const RadialProfile& F, const RadialProfile& G) {
    if (!dom.norm.is_euclidean())
        throw std::invalid_argument(
            "radial_brenier: radial maps are Brenier maps only for the "
            "Euclidean norm");
    if (dom.m > 1)
        throw std::invalid_argument("radial_brenier: need m <= 1");
    TransportMap1D map{dom, F, G, {}, {}, {}, {}};
    map.source_support = effective_support(dom, F);
    map.target_support = effective_support(dom, G);
    build_table(dom, F, map.source_support, map.grid_f, map.cum_f);
    build_table(dom, G, map.target_support, map.grid_g, map.cum_g);
    if (std::abs(map.cum_f.back() - 1.0) > 1e-8 ||
        std::abs(map.cum_g.back() - 1.0) > 1e-8)
        throw std::invalid_argument(
            "radial_brenier: densities must have unit mass");
    return map;
}

namespace {

void require_gamma(const WeightedDomain& dom, double gamma) {
    if (!(gamma >= 1.0 - 1.0 / dom.n_a) || gamma == 1.0)
        throw std::domain_error(
            "lemma21: need gamma >= 1 - 1/n_a, gamma != 1");
}

struct Lemma21Integrals {
    double IF = 0.0;  // int F^gamma
    double IG = 0.0;  // int G^gamma
    double Ipsi = 0.0; // int (F^gamma)' psi
    double J1 = 0.0;  // int F^gamma psi'
    double J2 = 0.0;  // int F^gamma psi / r
    double J3 = 0.0;  // int F G(psi)^{gamma-1}  (the pushforward image)
};

Lemma21Integrals lemma21_integrals(const WeightedDomain& dom, double gamma,
                                   const RadialProfile& F,
                                   const RadialProfile& G,
                                   const TransportMap1D& map, bool decompose) {
    Lemma21Integrals I;
    I.IF = radial_integral(dom, F.power(gamma), 0.0, 1e-9);
    I.IG = radial_integral(dom, G.power(gamma), 0.0, 1e-9);

    const double kF =
        std::isfinite(F.edge_exponent) ? F.edge_exponent
                                       : std::numeric_limits<double>::quiet_NaN();
    RadialFn dpsi;
    dpsi.support_radius = F.support_radius;
    if (std::isfinite(kF)) dpsi.edge_exponent = gamma * kF - 1.0;
    dpsi.value = [&](double r) {
        const double v = F.value(r);
        if (!(v > 0.0)) return 0.0;
        return gamma * std::pow(v, gamma - 1.0) * F.slope(r) * map.psi(r);
    };
    I.Ipsi = radial_integral(dom, dpsi, 0.0, 1e-9);

    if (!decompose) return I;

    RadialFn j1, j2, j3;
    j1.support_radius = j2.support_radius = j3.support_radius =
        F.support_radius;
    if (std::isfinite(kF)) {
        j1.edge_exponent = gamma * kF;
        j2.edge_exponent = gamma * kF;
        const double kG = std::isfinite(G.edge_exponent)
                              ? G.edge_exponent
                              : std::numeric_limits<double>::quiet_NaN();
        j3.edge_exponent =
            std::isfinite(kG) ? kF + (gamma - 1.0) * kG : kF;
    }
    j1.value = [&](double r) {
        const double v = F.value(r);
        if (!(v > 0.0)) return 0.0;
        return std::pow(v, gamma) * map.psi_prime(r);
    };
    j2.value = [&](double r) {
        const double v = F.value(r);
        if (!(v > 0.0) || r <= 0.0) return 0.0;
        return std::pow(v, gamma) * map.psi(r) / r;
    };
    j3.value = [&](double r) {
        const double v = F.value(r);
        if (!(v > 0.0)) return 0.0;
        const double g = G.value(map.psi(r));
        if (!(g > 0.0)) return 0.0;
        return v * std::pow(g, gamma - 1.0);
    };
    I.J1 = radial_integral(dom, j1, 0.0, 1e-9);
    I.J2 = radial_integral(dom, j2, 0.0, 1e-9);
    I.J3 = radial_integral(dom, j3, 0.0, 1e-9);
    return I;
}

Lemma21Result lemma21_from(const WeightedDomain& dom, double gamma,
                           const Lemma21Integrals& I) {
    const double c0 = (1.0 - dom.n_a * (1.0 - gamma)) / (1.0 - gamma);
    Lemma21Result r;
    r.lhs = I.IG / (1.0 - gamma);
    r.rhs = c0 * I.IF - I.Ipsi;
    r.gap = r.rhs - r.lhs;
    return r;
}

} // namespace

Lemma21Result lemma21_check(const WeightedDomain& dom, double gamma,
                            const RadialProfile& F, const RadialProfile& G) {
    require_gamma(dom, gamma);
    const auto map = radial_brenier(dom, F, G);
    const auto I = lemma21_integrals(dom, gamma, F, G, map, false);
    return lemma21_from(dom, gamma, I);
}

AmGmSlack amgm_slack(double A, const std::vector<double>& M_diag, double a,
                     double gamma) {
    if (!(A > 0.0) || a < 0.0)
        throw std::domain_error("amgm_slack: need A > 0, a >= 0");
    const int n = static_cast<int>(M_diag.size());
    const double na = n + a;
    if (!(gamma >= 1.0 - 1.0 / na) || gamma == 1.0)
        throw std::domain_error("amgm_slack: gamma out of range");
    double det = 1.0, tr = 0.0;
    for (double m : M_diag) {
        if (m < 0.0) throw std::domain_error("amgm_slack: need M >= 0");
        det *= m;
        tr += m;
    }
    AmGmSlack s;
    s.lhs = std::pow(A, a * (1.0 - gamma)) * std::pow(det, 1.0 - gamma) /
            (1.0 - gamma);
    s.rhs = (1.0 - na * (1.0 - gamma)) / (1.0 - gamma) + a * A + tr;
    s.slack = s.rhs - s.lhs;
    if (gamma > 1.0) {
        const double t = 1.0 + na * (gamma - 1.0);
        s.rearranged = (std::pow(A, a * (1.0 - gamma)) *
                            std::pow(det, 1.0 - gamma) +
                        a * (gamma - 1.0) * A + (gamma - 1.0) * tr) /
                       t;
    } else {
        s.rearranged = std::numeric_limits<double>::quiet_NaN();
    }
    return s;
}

Lemma21Decomposition lemma21_decomposition(const WeightedDomain& dom,
                                           double gamma,
                                           const RadialProfile& F,
                                           const RadialProfile& G) {
    require_gamma(dom, gamma);
    const auto map = radial_brenier(dom, F, G);
    const auto I = lemma21_integrals(dom, gamma, F, G, map, true);
    Lemma21Decomposition d;
    d.totals = lemma21_from(dom, gamma, I);
    const double c0 = (1.0 - dom.n_a * (1.0 - gamma)) / (1.0 - gamma);
    const double LA = I.J1 + (dom.n_a - 1.0) * I.J2; // int F^gamma L_A phi
    d.amgm_term = c0 * I.IF + LA - I.J3 / (1.0 - gamma);
    d.boundary_term = -I.Ipsi - LA;
    d.residual = d.totals.gap - d.amgm_term - d.boundary_term;
    return d;
}

RadialProfile bump_density(const WeightedDomain& dom, double radius,
                           double k) {
    if (!(radius > 0.0) || !(k >= 1.0))
        throw std::domain_error("bump_density: need radius > 0, k >= 1");
    const double na = dom.n_a;
    // int = n_a V_B c R^{n_a} B(n_a/2, k+1)/2 = 1
    const double lnc = -std::log(0.5 * na) - dom.log_ball_measure -
                       na * std::log(radius) - lbeta(0.5 * na, k + 1.0);
    const double c = std::exp(lnc);
    RadialProfile f;
    f.kind = RadialProfile::Kind::Custom;
    f.support_radius = radius;
    f.edge_exponent = k;
    f.value = [c, radius, k](double r) {
        const double u = 1.0 - (r / radius) * (r / radius);
        return u > 0.0 ? c * std::pow(u, k) : 0.0;
    };
    f.slope = [c, radius, k](double r) {
        const double u = 1.0 - (r / radius) * (r / radius);
        return u > 0.0
                   ? -2.0 * c * k * std::pow(u, k - 1.0) * r / (radius * radius)
                   : 0.0;
    };
    f.params = {{"radius", radius}, {"k", k}, {"c", c}};
    return f;
}

RadialProfile random_bump_density(const WeightedDomain& dom,
                                  std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto u01 = [&rng]() {
        return static_cast<double>(rng() >> 11) * 0x1.0p-53;
    };
    const double R1 = 0.5 + 2.5 * u01();
    const double R2 = 0.5 + 2.5 * u01();
    const double k1 = 2.0 + 3.0 * u01();
    const double k2 = 2.0 + 3.0 * u01();
    const double w = 0.2 + 0.6 * u01();
    const auto f1 = bump_density(dom, R1, k1);
    const auto f2 = bump_density(dom, R2, k2);
    RadialProfile f;
    f.kind = RadialProfile::Kind::Custom;
    f.support_radius = std::max(R1, R2);
    f.edge_exponent = R1 >= R2 ? k1 : k2;
    auto v1 = f1.value, v2 = f2.value, s1 = f1.slope, s2 = f2.slope;
    f.value = [v1, v2, w](double r) {
        return w * v1(r) + (1.0 - w) * v2(r);
    };
    f.slope = [s1, s2, w](double r) {
        return w * s1(r) + (1.0 - w) * s2(r);
    };
    f.params = {{"R1", R1}, {"R2", R2}, {"k1", k1}, {"k2", k2}, {"w", w},
                {"seed", static_cast<double>(seed)}};
    return f;
}

} // namespace sharpineq

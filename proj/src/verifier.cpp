#include "sharpineq/verifier.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "sharpineq/quadrature.hpp"

namespace sharpineq {

namespace {

double conj(double p) { return p / (p - 1.0); }

void require_unit_norm(const WeightedDomain& dom, const RadialProfile& f,
                       double s, const char* what) {
    const double v = lp_norm(dom, f, s);
    if (std::abs(v - 1.0) > 1e-7)
        throw std::invalid_argument(std::string(what) +
                                    ": profile is not unit-normalized");
}

} // namespace

QuotientReport sobolev_quotient(const WeightedDomain& dom, double p,
                                const RadialProfile& f, double tol) {
    const double ps = dom.n_a * p / (dom.n_a - p);
    QuotientReport r;
    r.inequality_kind = "sobolev";
    r.profile = describe(f);
    r.sharp_value = sobolev_constant(dom, p).value();
    r.lhs = lp_norm(dom, f, ps);
    r.rhs = r.sharp_value * grad_lp_norm(dom, f, p);
    r.deficit = r.rhs / r.lhs - 1.0;
    r.tolerance = tol;
    r.pass = r.deficit >= -tol;
    return r;
}

QuotientReport gn_quotient(const WeightedDomain& dom, double p, double alpha,
                           const RadialProfile& f, double tol) {
    const auto c = gn_constant(dom, p, alpha);
    const double pa = alpha * p - alpha + 1.0;
    QuotientReport r;
    r.inequality_kind = alpha > 1.0 ? "gn_super" : "gn_sub";
    r.profile = describe(f);
    r.sharp_value = c.value();
    const double grad = grad_lp_norm(dom, f, p);
    if (alpha > 1.0) {
        r.lhs = lp_norm(dom, f, alpha * p);
        r.rhs = c.value() * std::pow(grad, c.theta) *
                std::pow(lp_norm(dom, f, pa), 1.0 - c.theta);
    } else {
        r.lhs = lp_norm(dom, f, pa);
        r.rhs = c.value() * std::pow(grad, c.theta) *
                std::pow(lp_norm(dom, f, alpha * p), 1.0 - c.theta);
    }
    r.deficit = r.rhs / r.lhs - 1.0;
    r.tolerance = tol;
    r.pass = r.deficit >= -tol;
    return r;
}

namespace {

// int |f|^p ln(|f|^p) sigma for a radial profile, guarded at f = 0. The
// integrand changes sign at f = 1, so the two single-signed parts are
// integrated separately; their sum can be near zero without breaking the
// relative-tolerance convergence test.
double entropy_integral(const WeightedDomain& dom, const RadialProfile& f,
                        double p) {
    auto part = [&](bool positive) {
        RadialFn g;
        auto v = f.value;
        g.value = [v, p, positive](double r) {
            const double x = v(r);
            if (!(x > 0.0)) return 0.0;
            const double l = std::log(x);
            if (positive != (l > 0.0)) return 0.0;
            return p * std::pow(x, p) * l;
        };
        g.support_radius = f.support_radius;
        if (std::isfinite(f.edge_exponent))
            g.edge_exponent = p * f.edge_exponent;
        return radial_integral(dom, g, 0.0, 1e-9);
    };
    return part(true) + part(false);
}

} // namespace

QuotientReport logsob_deficit(const WeightedDomain& dom, double p,
                              const RadialProfile& f, double tol) {
    if (!(p >= 1.0)) throw std::domain_error("logsob_deficit: need p >= 1");
    QuotientReport r;
    r.inequality_kind = "logsob";
    r.profile = describe(f);
    const double na = dom.n_a;
    const auto L = logsob_constant(dom, p);
    r.sharp_value = L.value();
    if (p == 1.0) {
        if (f.kind != RadialProfile::Kind::Indicator)
            throw std::invalid_argument(
                "logsob_deficit: p = 1 needs an indicator profile "
                "(gradient mass = weighted perimeter)");
        const double R = f.support_radius;
        const double b = f.value(0.5 * R);
        const double mass = b * dom.ball_measure() * std::pow(R, na);
        const double bn = b / mass; // renormalized height, ||f||_1 = 1
        const double entropy = std::log(bn); // int f ln f = ln b on the ball
        const double grad_mass =
            bn * ball_perimeter(dom) * std::pow(R, na - 1.0);
        r.lhs = entropy;
        r.rhs = na * (L.log_value + std::log(grad_mass));
        r.deficit = r.rhs - r.lhs;
        r.tolerance = tol;
        r.pass = r.deficit >= -tol;
        return r;
    }
    const double nrm = lp_norm(dom, f, p);
    const double c = 1.0 / nrm;
    // entropy of c f: c^p [ int f^p ln f^p ] + p ln(c) c^p int f^p
    const double ent_f = entropy_integral(dom, f, p);
    const double cp = std::pow(c, p);
    r.lhs = cp * ent_f + p * std::log(c); // using c^p int f^p = 1
    const double grad = c * grad_lp_norm(dom, f, p);
    r.rhs = (na / p) * (L.log_value + p * std::log(grad));
    r.deficit = r.rhs - r.lhs;
    r.tolerance = tol;
    r.pass = r.deficit >= -tol;
    return r;
}

DualityGap duality_gap_sobolev(const WeightedDomain& dom, double p,
                               const RadialProfile& f, const RadialProfile& g) {
    const double na = dom.n_a, q = conj(p);
    const double ps = na * p / (na - p);
    require_unit_norm(dom, f, ps, "duality_gap_sobolev(f)");
    require_unit_norm(dom, g, ps, "duality_gap_sobolev(g)");
    const double num =
        radial_integral(dom, g.power(ps * (1.0 - 1.0 / na)), 0.0, 1e-10);
    const double den = radial_integral(dom, g.power(ps), q, 1e-10);
    DualityGap d;
    d.lhs = num / std::pow(den, 1.0 / q);
    d.rhs = p * (na - 1.0) / (na * (na - p)) * grad_lp_norm(dom, f, p, 1e-10);
    d.gap = d.rhs - d.lhs;
    return d;
}

DualityGap duality_gap_gn(const WeightedDomain& dom, double p, double alpha,
                          const RadialProfile& f, const RadialProfile& g,
                          double mu) {
    if (!(mu > 0.0)) throw std::domain_error("duality_gap_gn: need mu > 0");
    const double na = dom.n_a, q = conj(p);
    const double pa = alpha * p - alpha + 1.0;
    require_unit_norm(dom, f, alpha * p, "duality_gap_gn(f)");
    require_unit_norm(dom, g, alpha * p, "duality_gap_gn(g)");
    const double T1 = radial_integral(dom, g.power(pa), 0.0, 1e-10);
    const double T2 = radial_integral(dom, g.power(alpha * p), q, 1e-10);
    const double T3 = radial_integral(dom, f.power(pa), 0.0, 1e-10);
    const double T4 = radial_integral(dom, f.slope_power(p), 0.0, 1e-10);
    DualityGap d;
    d.lhs = alpha * p / ((alpha - 1.0) * pa) * T1 - std::pow(mu, q) / q * T2;
    d.rhs = (alpha * p - na * (alpha - 1.0)) / ((alpha - 1.0) * pa) * T3 +
            T4 / (p * std::pow(mu, p));
    d.gap = d.rhs - d.lhs;
    return d;
}

DimensionReductionReport dimension_reduction_check(int n, double p, double a,
                                                   const NormSpec& norm) {
    DimensionReductionReport rep;
    rep.n = n;
    rep.p = p;
    rep.a = a;
    const auto closed = euclidean_gn_constant(n, p, a, norm, &rep.factors);
    rep.assembled_log = euclidean_gn_assembled(n, p, a, norm);
    rep.closed_log = closed.log_value;
    rep.diff = rep.assembled_log - rep.closed_log;
    rep.alpha = closed.alpha;
    rep.theta = closed.theta;
    rep.branch = rep.factors.branch;

    // direct quotient of f = (1 + ||x||^q)^{-1/(alpha-1)} on unweighted R^n
    const double q = conj(p);
    const double alpha = closed.alpha;
    const auto flat = WeightedDomain::make(n, 0, {}, norm);
    RadialProfile f;
    f.kind = RadialProfile::Kind::Custom;
    const double e = -1.0 / (alpha - 1.0);
    f.value = [q, e](double r) { return std::pow(1.0 + std::pow(r, q), e); };
    f.slope = [q, e](double r) {
        return e * q * std::pow(1.0 + std::pow(r, q), e - 1.0) *
               std::pow(r, q - 1.0);
    };
    const double pa = alpha * p - alpha + 1.0;
    const double grad = grad_lp_norm(flat, f, p, 1e-10);
    double ratio;
    if (alpha > 1.0)
        ratio = closed.value() * std::pow(grad, rep.theta) *
                std::pow(lp_norm(flat, f, pa, 1e-10), 1.0 - rep.theta) /
                lp_norm(flat, f, alpha * p, 1e-10);
    else
        ratio = closed.value() * std::pow(grad, rep.theta) *
                std::pow(lp_norm(flat, f, alpha * p, 1e-10), 1.0 - rep.theta) /
                lp_norm(flat, f, pa, 1e-10);
    rep.extremal_ratio = ratio;
    return rep;
}

TensorizationReport tensorization_limit(const WeightedDomain& block, double p,
                                        const std::vector<std::int64_t>& ks) {
    TensorizationReport rep;
    rep.log_limit = logsob_constant(block, p).log_value / p;
    double prev_abs = -1.0;
    for (std::int64_t k : ks) {
        const double lnck = tensor_constant_log(block, p, k);
        rep.k.push_back(k);
        rep.log_ck.push_back(lnck);
        const double gap = std::exp(lnck - rep.log_limit) - 1.0;
        rep.rel_gap.push_back(gap);
        if (k >= 2 && prev_abs >= 0.0 && std::abs(gap) > prev_abs)
            rep.gap_monotone = false;
        if (k >= 2) prev_abs = std::abs(gap);
    }
    return rep;
}

RadialProfile random_spline_profile(const WeightedDomain& dom,
                                    std::uint64_t seed, double min_tail) {
    std::mt19937_64 rng(seed);
    auto u01 = [&rng]() {
        return static_cast<double>(rng() >> 11) * 0x1.0p-53;
    };
    const int knots = 12;
    std::vector<double> v(knots);
    double lv = -1.0 + 2.0 * u01(); // ln of the first knot value
    for (int i = 0; i < knots; ++i) {
        v[i] = std::exp(lv);
        lv -= 0.1 + 1.1 * u01(); // strictly decreasing
    }
    const double tail = min_tail * (1.05 + u01());
    (void)dom;
    return spline_profile(v, tail);
}

double solve_theta_scaling(const WeightedDomain& dom, double p, double alpha) {
    const double pa = alpha * p - alpha + 1.0;
    const auto h = gn_extremal(dom, p, alpha);
    const double s_main = alpha > 1.0 ? alpha * p : pa;
    const double s_other = alpha > 1.0 ? pa : alpha * p;
    double lg[2], lm[2], lo[2];
    const double lambdas[2] = {0.5, 2.0};
    for (int i = 0; i < 2; ++i) {
        const auto hl = dilate(h, dom, lambdas[i], s_main);
        lg[i] = std::log(grad_lp_norm(dom, hl, p, 1e-11));
        lm[i] = std::log(lp_norm(dom, hl, s_main, 1e-11));
        lo[i] = std::log(lp_norm(dom, hl, s_other, 1e-11));
    }
    // ratio C grad^theta other^{1-theta} / main is dilation invariant:
    // theta (lg1-lg0) + (1-theta)(lo1-lo0) = lm1-lm0
    const double dg = lg[1] - lg[0], dm = lm[1] - lm[0], do_ = lo[1] - lo[0];
    return (dm - do_) / (dg - do_);
}

} // namespace sharpineq

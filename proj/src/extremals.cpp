#include "sharpineq/extremals.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "sharpineq/quadrature.hpp"
#include "sharpineq/special_functions.hpp"

namespace sharpineq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double conj(double p) { return p / (p - 1.0); }

void require_p_range(const WeightedDomain& dom, double p) {
    if (!(p > 1.0) || !(p < dom.n_a))
        throw std::domain_error("extremal: need 1 < p < n_a");
}

void require_alpha_range(const WeightedDomain& dom, double p, double alpha) {
    require_p_range(dom, p);
    const double amax = dom.n_a / (dom.n_a - p);
    if (!(alpha > 0.0) || alpha == 1.0 || alpha > amax + 1e-15)
        throw std::domain_error(
            "extremal: need alpha in (0, n_a/(n_a-p)], alpha != 1");
}

void check_normalized(const WeightedDomain& dom, const RadialProfile& f,
                      double exponent, const char* what) {
    const double v = radial_integral(dom, f.power(exponent), 0.0, 1e-9);
    if (std::abs(v - 1.0) > 1e-8) {
        std::ostringstream os;
        os << what << ": normalization check failed, integral = " << v;
        throw std::runtime_error(os.str());
    }
}

} // namespace

RadialFn RadialProfile::power(double s) const {
    RadialFn g;
    auto v = value;
    g.value = [v, s](double r) { return std::pow(v(r), s); };
    g.support_radius = support_radius;
    if (std::isfinite(edge_exponent)) g.edge_exponent = s * edge_exponent;
    return g;
}

RadialFn RadialProfile::slope_power(double s) const {
    RadialFn g;
    auto d = slope;
    g.value = [d, s](double r) { return std::pow(std::abs(d(r)), s); };
    g.support_radius = support_radius;
    if (std::isfinite(edge_exponent) && edge_exponent != 0.0)
        g.edge_exponent = s * (edge_exponent - 1.0);
    return g;
}

double lp_norm(const WeightedDomain& dom, const RadialProfile& f, double s,
               double rel_tol) {
    if (s == 0.0) throw std::invalid_argument("lp_norm: s must be nonzero");
    return std::pow(radial_integral(dom, f.power(s), 0.0, rel_tol), 1.0 / s);
}

double grad_lp_norm(const WeightedDomain& dom, const RadialProfile& f, double p,
                    double rel_tol) {
    if (!f.slope) throw std::invalid_argument("grad_lp_norm: profile has no slope");
    return std::pow(radial_integral(dom, f.slope_power(p), 0.0, rel_tol),
                    1.0 / p);
}

double log_sigma_sobolev(const WeightedDomain& dom, double p) {
    require_p_range(dom, p);
    const double na = dom.n_a, q = conj(p);
    return (p / na) * (lgamma(na / p) + lgamma(na / q + 1.0) - lgamma(na) +
                       dom.log_ball_measure);
}

double log_sigma_gn(const WeightedDomain& dom, double p, double alpha) {
    require_alpha_range(dom, p, alpha);
    const double na = dom.n_a, q = conj(p);
    if (alpha > 1.0) {
        const double w = alpha * p / (alpha - 1.0);
        const double lnbr = -(na / q) * std::log(alpha - 1.0) +
                            lgamma(w - na / q) + lgamma(na / q + 1.0) -
                            lgamma(w) + dom.log_ball_measure;
        return lnbr * q * (alpha - 1.0) / (alpha * p * q - na * (alpha - 1.0));
    }
    const double w = alpha * p / (1.0 - alpha);
    const double lnbr = -(na / q) * std::log(1.0 - alpha) + lgamma(w + 1.0) +
                        lgamma(na / q + 1.0) - lgamma(w + na / q + 1.0) +
                        dom.log_ball_measure;
    // same prefactor as the alpha > 1 branch; it is negative here, which is
    // exactly what int h^{alpha p} sigma = 1 requires
    return lnbr * q * (alpha - 1.0) / (alpha * p * q - na * (alpha - 1.0));
}

namespace {

// Bisection on ln sigma for a monotone normalization integral.
double bisect_sigma(const std::function<double(double)>& mass) {
    // true normalizers are O(1); a narrow bracket keeps the endpoint
    // integrands away from near-divergent regimes
    double lo = std::log(1e-3), hi = std::log(1e3);
    const double mlo = mass(std::exp(lo)), mhi = mass(std::exp(hi));
    if ((mlo - 1.0) * (mhi - 1.0) >= 0.0)
        throw std::runtime_error("bisect_sigma: bracket failed");
    const bool decreasing = mlo > mhi;
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        const bool above = mass(std::exp(mid)) > 1.0;
        ((above == decreasing) ? lo : hi) = mid;
    }
    return std::exp(0.5 * (lo + hi));
}

} // namespace

double solve_sigma_sobolev(const WeightedDomain& dom, double p) {
    require_p_range(dom, p);
    const double na = dom.n_a, q = conj(p);
    return bisect_sigma([&](double sig) {
        RadialFn h;
        h.value = [sig, na, q](double r) {
            return std::pow(sig + std::pow(r, q), -na);
        };
        return radial_integral(dom, h, 0.0, 1e-10);
    });
}

double solve_sigma_gn(const WeightedDomain& dom, double p, double alpha) {
    require_alpha_range(dom, p, alpha);
    const double q = conj(p);
    const double e = alpha * p / (alpha - 1.0); // exponent of h^{alpha p}
    return bisect_sigma([&](double sig) {
        RadialFn h;
        if (alpha > 1.0) {
            h.value = [sig, alpha, q, e](double r) {
                return std::pow(sig + (alpha - 1.0) * std::pow(r, q), -std::abs(e));
            };
        } else {
            h.support_radius = std::pow(sig / (1.0 - alpha), 1.0 / q);
            h.edge_exponent = alpha * p / (1.0 - alpha);
            h.value = [sig, alpha, q, p](double r) {
                const double u = sig - (1.0 - alpha) * std::pow(r, q);
                return u > 0.0 ? std::pow(u, alpha * p / (1.0 - alpha)) : 0.0;
            };
        }
        return radial_integral(dom, h, 0.0, 1e-10);
    });
}

RadialProfile sobolev_extremal(const WeightedDomain& dom, double p) {
    require_p_range(dom, p);
    const double na = dom.n_a, q = conj(p);
    const double sig = std::exp(log_sigma_sobolev(dom, p));
    const double e = (na - p) / p;

    RadialProfile h;
    h.kind = RadialProfile::Kind::SobolevExtremal;
    h.value = [sig, q, e](double r) {
        return std::pow(sig + std::pow(r, q), -e);
    };
    // h' = -(n_a-p)/(p-1) (sigma + r^q)^{-n_a/p} r^{q-1}
    const double c = (na - p) / (p - 1.0);
    h.slope = [sig, q, c, na, p](double r) {
        return -c * std::pow(sig + std::pow(r, q), -na / p) * std::pow(r, q - 1.0);
    };
    h.params = {{"p", p}, {"sigma", sig}};
    check_normalized(dom, h, na * p / (na - p), "sobolev_extremal");
    return h;
}

RadialProfile gn_extremal(const WeightedDomain& dom, double p, double alpha) {
    require_alpha_range(dom, p, alpha);
    const double q = conj(p);
    const double sig = std::exp(log_sigma_gn(dom, p, alpha));
    const double e = 1.0 / (1.0 - alpha); // value exponent
    RadialProfile h;
    h.kind = RadialProfile::Kind::GNExtremal;
    if (alpha > 1.0) {
        h.value = [sig, alpha, q, e](double r) {
            return std::pow(sig + (alpha - 1.0) * std::pow(r, q), e);
        };
        h.slope = [sig, alpha, q](double r) {
            return -q *
                   std::pow(sig + (alpha - 1.0) * std::pow(r, q),
                            alpha / (1.0 - alpha)) *
                   std::pow(r, q - 1.0);
        };
    } else {
        h.support_radius = std::pow(sig / (1.0 - alpha), 1.0 / q);
        h.edge_exponent = e;
        h.value = [sig, alpha, q, e](double r) {
            const double u = sig - (1.0 - alpha) * std::pow(r, q);
            return u > 0.0 ? std::pow(u, e) : 0.0;
        };
        h.slope = [sig, alpha, q](double r) {
            const double u = sig - (1.0 - alpha) * std::pow(r, q);
            return u > 0.0 ? -q * std::pow(u, alpha / (1.0 - alpha)) *
                                 std::pow(r, q - 1.0)
                           : 0.0;
        };
    }
    h.params = {{"p", p}, {"alpha", alpha}, {"sigma", sig}};
    check_normalized(dom, h, alpha * p, "gn_extremal");
    return h;
}

RadialProfile logsob_extremal(const WeightedDomain& dom, double p, double c) {
    if (!(p > 1.0)) throw std::domain_error("logsob_extremal: need p > 1");
    if (!(c > 0.0)) throw std::domain_error("logsob_extremal: need scale > 0");
    const double na = dom.n_a, q = conj(p);
    // |b|^{-p} = V_B Gamma(n_a/q + 1) (p c)^{-n_a/q}
    const double ln_binv_p = dom.log_ball_measure + lgamma(na / q + 1.0) -
                             (na / q) * std::log(p * c);
    const double b = std::exp(-ln_binv_p / p);
    RadialProfile f;
    f.kind = RadialProfile::Kind::LogSobExtremal;
    f.value = [b, c, q](double r) { return b * std::exp(-c * std::pow(r, q)); };
    f.slope = [b, c, q](double r) {
        return -b * c * q * std::pow(r, q - 1.0) * std::exp(-c * std::pow(r, q));
    };
    f.params = {{"p", p}, {"c", c}, {"b", b}};
    check_normalized(dom, f, p, "logsob_extremal");
    return f;
}

RadialProfile indicator_extremal(const WeightedDomain& dom, double radius,
                                 double p) {
    if (!(radius > 0.0) || !(p >= 1.0))
        throw std::domain_error("indicator_extremal: need radius > 0, p >= 1");
    // ||f||_p^p = b^p V_B R^{n_a}
    const double b = std::exp(
        -(dom.log_ball_measure + dom.n_a * std::log(radius)) / p);
    RadialProfile f;
    f.kind = RadialProfile::Kind::Indicator;
    f.value = [b, radius](double r) { return r < radius ? b : 0.0; };
    f.slope = [](double) { return 0.0; }; // a.e.; the jump lives in the perimeter
    f.support_radius = radius;
    f.edge_exponent = 0.0;
    f.params = {{"p", p}, {"radius", radius}, {"b", b}};
    return f;
}

// ---------------------------------------------------------------------------
// Monotone cubic (Fritsch-Carlson) spline with a power tail.

namespace {

struct SplineData {
    std::vector<double> x, y, d; // knots, values, endpoint slopes
    double tail;                 // value(x_n) (x_n/r)^tail for r > x_n
};

SplineData build_spline(const std::vector<double>& values, double tail,
                        double r_lo, double r_hi) {
    const size_t n = values.size();
    if (n < 3) throw std::invalid_argument("spline_profile: need >= 3 knots");
    for (double v : values)
        if (!(v > 0.0)) throw std::invalid_argument("spline_profile: values must be > 0");
    if (!(tail > 0.0)) throw std::invalid_argument("spline_profile: tail exponent must be > 0");
    SplineData s;
    s.tail = tail;
    s.x.resize(n);
    const double lr = std::log(r_lo), dr = (std::log(r_hi) - lr) / (n - 1);
    for (size_t i = 0; i < n; ++i) s.x[i] = std::exp(lr + dr * i);
    s.y = values;
    // Fritsch-Carlson slopes
    std::vector<double> h(n - 1), del(n - 1);
    for (size_t i = 0; i + 1 < n; ++i) {
        h[i] = s.x[i + 1] - s.x[i];
        del[i] = (s.y[i + 1] - s.y[i]) / h[i];
    }
    s.d.assign(n, 0.0);
    s.d[0] = del[0];
    s.d[n - 1] = del[n - 2];
    for (size_t i = 1; i + 1 < n; ++i) {
        if (del[i - 1] * del[i] <= 0.0) {
            s.d[i] = 0.0;
        } else {
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            s.d[i] = (w1 + w2) / (w1 / del[i - 1] + w2 / del[i]);
        }
    }
    return s;
}

double spline_eval(const SplineData& s, double r, bool deriv) {
    const size_t n = s.x.size();
    if (r <= s.x[0]) return deriv ? 0.0 : s.y[0]; // flat cap
    if (r >= s.x[n - 1]) {
        const double f = s.y[n - 1] * std::pow(s.x[n - 1] / r, s.tail);
        return deriv ? -s.tail * f / r : f;
    }
    const size_t i =
        std::upper_bound(s.x.begin(), s.x.end(), r) - s.x.begin() - 1;
    const double h = s.x[i + 1] - s.x[i], t = (r - s.x[i]) / h;
    const double y0 = s.y[i], y1 = s.y[i + 1], d0 = s.d[i], d1 = s.d[i + 1];
    const double h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
    const double h10 = t * (1.0 - t) * (1.0 - t);
    const double h01 = t * t * (3.0 - 2.0 * t);
    const double h11 = t * t * (t - 1.0);
    if (!deriv)
        return h00 * y0 + h * h10 * d0 + h01 * y1 + h * h11 * d1;
    const double g00 = 6.0 * t * (t - 1.0);
    const double g10 = (1.0 - t) * (1.0 - 3.0 * t);
    const double g11 = t * (3.0 * t - 2.0);
    return (g00 * (y0 - y1)) / h + g10 * d0 + g11 * d1;
}

} // namespace

RadialProfile spline_profile(const std::vector<double>& values,
                             double tail_exponent, double r_lo, double r_hi) {
    auto data = std::make_shared<SplineData>(
        build_spline(values, tail_exponent, r_lo, r_hi));
    RadialProfile f;
    f.kind = RadialProfile::Kind::Spline;
    f.value = [data](double r) { return std::max(spline_eval(*data, r, false), 0.0); };
    f.slope = [data](double r) { return spline_eval(*data, r, true); };
    f.params = {{"tail", tail_exponent}, {"r_lo", r_lo}, {"r_hi", r_hi}};
    for (size_t i = 0; i < values.size(); ++i)
        f.params["v" + std::to_string(i)] = values[i];
    return f;
}

RadialProfile perturb(const WeightedDomain& dom, const RadialProfile& f,
                      double center, double width, double amplitude,
                      double norm_exponent) {
    if (!(width > 0.0)) throw std::invalid_argument("perturb: need width > 0");
    const double target = lp_norm(dom, f, norm_exponent);
    auto base_v = f.value;
    auto base_s = f.slope;
    auto bump = [center, width, amplitude](double r) {
        const double u = (r - center) / width;
        if (std::abs(u) >= 1.0) return 0.0;
        return amplitude * std::exp(1.0 - 1.0 / (1.0 - u * u));
    };
    auto bump_slope = [center, width, amplitude](double r) {
        const double u = (r - center) / width;
        if (std::abs(u) >= 1.0) return 0.0;
        const double w = 1.0 - u * u;
        return amplitude * std::exp(1.0 - 1.0 / w) * (-2.0 * u / (w * w)) / width;
    };
    RadialProfile g;
    g.kind = RadialProfile::Kind::Custom;
    g.support_radius = std::max(f.support_radius,
                                amplitude != 0.0 ? center + width : 0.0);
    g.value = [base_v, bump](double r) { return base_v(r) + bump(r); };
    g.slope = [base_s, bump_slope](double r) { return base_s(r) + bump_slope(r); };
    // negativity scan on the bump's footprint
    for (int i = 0; i <= 400; ++i) {
        const double r = center - width + 2.0 * width * i / 400.0;
        if (r >= 0.0 && g.value(r) < 0.0)
            throw std::domain_error("perturb: profile went negative");
    }
    const double scale = target / lp_norm(dom, g, norm_exponent);
    auto v = g.value;
    auto sl = g.slope;
    g.value = [v, scale](double r) { return scale * v(r); };
    g.slope = [sl, scale](double r) { return scale * sl(r); };
    g.params = f.params;
    g.params["bump_center"] = center;
    g.params["bump_width"] = width;
    g.params["bump_amplitude"] = amplitude;
    return g;
}

RadialProfile dilate(const RadialProfile& f, const WeightedDomain& dom,
                     double lambda, double norm_exponent) {
    if (!(lambda > 0.0)) throw std::invalid_argument("dilate: need lambda > 0");
    const double s = std::pow(lambda, dom.n_a / norm_exponent);
    auto v = f.value;
    auto d = f.slope;
    RadialProfile g;
    g.kind = f.kind;
    g.value = [v, s, lambda](double r) { return s * v(lambda * r); };
    g.slope = [d, s, lambda](double r) { return s * lambda * d(lambda * r); };
    g.support_radius = f.support_radius / lambda;
    g.edge_exponent = f.edge_exponent;
    g.params = f.params;
    g.params["lambda"] = lambda;
    return g;
}

std::string describe(const RadialProfile& f) {
    static const char* names[] = {"sobolev_extremal", "gn_extremal",
                                  "logsob_extremal", "indicator", "spline",
                                  "custom"};
    std::ostringstream os;
    os.precision(17);
    os << "{\"kind\":\"" << names[static_cast<int>(f.kind)] << "\"";
    for (const auto& [k, v] : f.params) os << ",\"" << k << "\":" << v;
    os << "}";
    return os.str();
}

} // namespace sharpineq

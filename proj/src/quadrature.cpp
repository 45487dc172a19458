#include "sharpineq/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>

namespace sharpineq {

namespace {

// QUADPACK 7/15 Gauss-Kronrod abscissae and weights on [-1, 1].
constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
constexpr double kWgk[8] = {
    0.0229353220105292, 0.0630920926299786, 0.1047900103222502,
    0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
    0.2044329400752989, 0.2094821410847278};
constexpr double kWg[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
    0.4179591836734694};

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const ScalarFn& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const double fc = f(c);
    double kron = kWgk[7] * fc;
    double gauss = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double fl = f(c - h * kXgk[i]);
        const double fr = f(c + h * kXgk[i]);
        kron += kWgk[i] * (fl + fr);
        if (i % 2 == 1) gauss += kWg[i / 2] * (fl + fr);
    }
    kron *= h;
    gauss *= h;
    // QUADPACK-style error sharpening: (200 |K - G|)^{3/2} when small.
    const double diff = std::abs(kron - gauss);
    double err = diff;
    if (diff > 0.0) {
        const double sharp = std::pow(200.0 * diff, 1.5);
        if (sharp < diff) err = sharp;
    }
    return {a, b, kron, err};
}

} // namespace

QuadratureResult integrate_interval(const ScalarFn& f, double a, double b,
                                    const QuadratureOptions& opts) {
    QuadratureResult res;
    if (a == b) {
        res.converged = true;
        return res;
    }
    std::priority_queue<Panel> heap;
    Panel p0 = gk15(f, a, b);
    double total = p0.value, err = p0.error;
    heap.push(p0);
    int subs = 1;
    while (err > std::max(opts.rel_tol * std::abs(total), opts.abs_tol) &&
           subs < opts.max_subdivisions) {
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // interval at machine resolution; keep its estimate
            total += 0.0;
            err -= worst.error; // accept as-is
            worst.error = 0.0;
            heap.push(worst);
            if (heap.top().error == 0.0) break;
            continue;
        }
        Panel l = gk15(f, worst.a, mid);
        Panel r = gk15(f, mid, worst.b);
        total += l.value + r.value - worst.value;
        err += l.error + r.error - worst.error;
        heap.push(l);
        heap.push(r);
        ++subs;
    }
    res.value = total;
    res.abs_error_estimate = std::max(err, 0.0);
    res.subdivisions = subs;
    res.converged = res.abs_error_estimate <=
                    std::max(opts.rel_tol * std::abs(total), opts.abs_tol);
    return res;
}

QuadratureResult integrate_halfline(const ScalarFn& f, const QuadratureOptions& opts) {
    // Locate the bulk of |f| on a coarse log grid, then split off the tail.
    double fmax = 0.0;
    double r_at_max = 1.0;
    for (int k = -40; k <= 60; ++k) {
        const double r = std::pow(2.0, 0.5 * k);
        const double v = std::abs(f(r));
        if (v > fmax) {
            fmax = v;
            r_at_max = r;
        }
    }
    double r_split = r_at_max;
    if (fmax > 0.0) {
        for (int k = 0; k <= 200; ++k) {
            r_split = r_at_max * std::pow(2.0, 0.5 * k);
            if (std::abs(f(r_split)) < 1e-3 * fmax) break;
        }
    }
    r_split = std::max(r_split, 1.0);

    QuadratureOptions half = opts;
    half.rel_tol *= 0.5;
    QuadratureResult head = integrate_interval(f, 0.0, r_split, half);

    // Tail by dyadic panels [R 2^j, R 2^{j+1}]: each panel is smooth, and
    // the panel sequence decays geometrically for any integrable tail, so
    // the truncation error can be bounded from the observed ratio.
    QuadratureResult res;
    res.value = head.value;
    res.abs_error_estimate = head.abs_error_estimate;
    res.subdivisions = head.subdivisions;
    double lo = r_split, prev = 0.0, last = 0.0, trunc = 0.0;
    bool tail_ok = false;
    for (int j = 0; j < 1200 && lo < 1e300; ++j) {
        const double hi = 2.0 * lo;
        const QuadratureResult panel = integrate_interval(f, lo, hi, half);
        res.value += panel.value;
        res.abs_error_estimate += panel.abs_error_estimate;
        res.subdivisions += panel.subdivisions;
        prev = last;
        last = std::abs(panel.value);
        lo = hi;
        const double goal =
            0.01 * std::max(opts.rel_tol * std::abs(res.value), opts.abs_tol);
        const double rho = prev > 0.0 ? last / prev : 0.0;
        // stop only once the panels are both small and clearly geometric,
        // so the remainder bound last * rho / (1 - rho) is trustworthy
        if (last <= goal && (j == 0 || (prev <= goal && rho <= 0.95))) {
            // a flat stretch followed by a late bump can fake decay; probe
            // the next octaves densely before trusting the remainder bound
            bool clear = true;
            for (int k = 0; clear && k < 96; ++k) {
                const double r = lo * std::pow(2.0, (k + 0.5) / 8.0);
                if (std::abs(f(r)) * r > goal) clear = false;
            }
            if (clear) {
                trunc = last * rho / (1.0 - rho);
                tail_ok = true;
                break;
            }
        }
    }
    res.abs_error_estimate += trunc;
    res.converged =
        tail_ok &&
        res.abs_error_estimate <=
            std::max(opts.rel_tol * std::abs(res.value), opts.abs_tol);
    return res;
}

QuadratureResult integrate_edge_singular(const ScalarFn& f, double a, double b,
                                         double beta, const QuadratureOptions& opts) {
    if (!(beta > -1.0))
        throw std::domain_error("integrate_edge_singular: need beta > -1");
    const double L = b - a;
    const double g = 1.0 / (1.0 + beta);
    // r = b - L u^g maps u in (0,1]; the (b-r)^beta factor becomes L^beta u^{beta g}
    // and with the Jacobian g L u^{g-1} the combined power of u is
    // beta g + g - 1 = 0: smooth at u = 0.
    auto sub = [&](double u) {
        const double ug = std::pow(u, g);
        return f(b - L * ug) * g * L * (u > 0.0 ? ug / u : 0.0);
    };
    // At u = 0 the Jacobian factor u^{g-1} may diverge but f's edge factor
    // cancels it; GK never evaluates the endpoint itself.
    return integrate_interval(sub, 0.0, 1.0, opts);
}

double require_converged(const QuadratureResult& r, const char* what) {
    if (!r.converged)
        throw accuracy_error(std::string("quadrature did not converge in ") + what, r);
    return r.value;
}

// ---------------------------------------------------------------------------
// Gauss-Jacobi via Golub-Welsch. Recurrence coefficients for the weight
// (1-x)^alpha (1+x)^beta on [-1,1], then an implicit-QL tridiagonal
// eigensolve tracking only the first eigenvector component.

namespace {

void tql_first_row(std::vector<double>& d, std::vector<double>& e,
                   std::vector<double>& z) {
    const int n = static_cast<int>(d.size());
    z.assign(n, 0.0);
    z[0] = 1.0;
    if (n == 1) return;
    e.push_back(0.0);
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= 1e-15 * dd) break;
            }
            if (m == l) break;
            if (++iter > 50)
                throw std::runtime_error("gauss_jacobi_unit: QL failed to converge");
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            for (int i = m - 1; i >= l; --i) {
                double fi = s * e[i], b = c * e[i];
                r = std::hypot(fi, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    break;
                }
                s = fi / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                const double zt = z[i + 1];
                z[i + 1] = s * z[i] + c * zt;
                z[i] = c * z[i] - s * zt;
            }
            if (r == 0.0 && m - 1 >= l) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        } while (true);
    }
    // sort ascending
    for (int i = 0; i < n - 1; ++i) {
        int k = i;
        for (int j = i + 1; j < n; ++j)
            if (d[j] < d[k]) k = j;
        std::swap(d[i], d[k]);
        std::swap(z[i], z[k]);
    }
}

} // namespace

JacobiRule gauss_jacobi_unit(int points, double a) {
    if (points < 1 || a < 0.0)
        throw std::invalid_argument("gauss_jacobi_unit: need points >= 1, a >= 0");
    const double al = 0.0, be = a; // weight (1-x)^0 (1+x)^a on [-1,1]
    std::vector<double> d(points), e;
    d[0] = (be - al) / (al + be + 2.0);
    for (int k = 1; k < points; ++k) {
        const double s = 2.0 * k + al + be;
        d[k] = (be * be - al * al) / (s * (s + 2.0));
        const double num = 4.0 * k * (k + al) * (k + be) * (k + al + be);
        const double den = s * s * (s + 1.0) * (s - 1.0);
        e.push_back(std::sqrt(num / den));
    }
    std::vector<double> z;
    tql_first_row(d, e, z);
    // mu0 = int_{-1}^1 (1+x)^a dx = 2^{a+1}/(a+1)
    const double mu0 = std::pow(2.0, a + 1.0) / (a + 1.0);
    JacobiRule rule;
    rule.nodes.resize(points);
    rule.weights.resize(points);
    for (int i = 0; i < points; ++i) {
        rule.nodes[i] = 0.5 * (1.0 + d[i]); // map to [0,1]
        // weight on [-1,1] is mu0 z^2; mapping u=(1+x)/2 turns
        // (1+x)^a dx into 2^{a+1} u^a du, so the u^a-weighted rule keeps
        // w_i / 2^{a+1}.
        rule.weights[i] = mu0 * z[i] * z[i] / std::pow(2.0, a + 1.0);
    }
    return rule;
}

// ---------------------------------------------------------------------------
// Tensor path (n <= 3, m <= 1).

QuadratureResult integrate_tensor(const WeightedDomain& dom,
                                  const std::function<double(std::span<const double>)>& f,
                                  const TensorBox& box,
                                  const QuadratureOptions& opts) {
    if (dom.n > 3)
        throw std::invalid_argument("integrate_tensor: n > 3 unsupported");
    if (dom.m > 1)
        throw std::invalid_argument("integrate_tensor: m > 1 unsupported");
    const int nfree = dom.n - dom.m;
    if (static_cast<int>(box.free_bounds.size()) != nfree)
        throw std::invalid_argument("integrate_tensor: bounds/dimension mismatch");

    const double aexp = dom.m == 1 ? dom.a[0] : 0.0;
    static thread_local JacobiRule cached;
    static thread_local double cached_a = -1.0;
    if (cached_a != aexp) {
        cached = gauss_jacobi_unit(48, aexp);
        cached_a = aexp;
    }
    const JacobiRule& jac = cached;

    std::vector<double> point(dom.n, 0.0);

    // innermost: weighted coordinate by Gauss-Jacobi over [0, t_max]
    auto eval_weighted = [&]() -> double {
        if (dom.m == 0) return f(point);
        const double tmax =
            box.t_max ? box.t_max(std::span<const double>(point.data(), nfree)) : 1.0;
        if (!(tmax > 0.0)) return 0.0;
        double s = 0.0;
        for (size_t i = 0; i < jac.nodes.size(); ++i) {
            point[dom.n - 1] = tmax * jac.nodes[i];
            s += jac.weights[i] * f(point);
        }
        return s * std::pow(tmax, aexp + 1.0);
    };

    QuadratureOptions inner_opts = opts;
    inner_opts.rel_tol = std::max(opts.rel_tol * 0.1, 1e-13);
    int total_subs = 0;

    std::function<QuadratureResult(int)> level = [&](int i) -> QuadratureResult {
        if (i == nfree) {
            QuadratureResult r;
            r.value = eval_weighted();
            r.converged = true;
            return r;
        }
        auto g = [&](double x) {
            point[i] = x;
            return level(i + 1).value;
        };
        const QuadratureOptions& o = (i == 0) ? opts : inner_opts;
        QuadratureResult r =
            integrate_interval(g, box.free_bounds[i].first, box.free_bounds[i].second, o);
        total_subs += r.subdivisions;
        return r;
    };

    QuadratureResult res = level(0);
    res.subdivisions = total_subs;
    return res;
}

// ---------------------------------------------------------------------------
// Monte Carlo oracle.

namespace {

constexpr double kPi = 3.14159265358979323846;

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace

MonteCarloEstimate monte_carlo_sigma(const WeightedDomain& dom,
                                     const std::function<double(std::span<const double>)>& f,
                                     std::int64_t samples,
                                     std::uint64_t seed) {
    if (samples < 1000)
        throw std::invalid_argument("monte_carlo_sigma: need samples >= 1000");
    std::mt19937_64 rng(seed);
    std::vector<double> z(dom.n);
    const int nfree = dom.n - dom.m;
    double sum = 0.0, sumsq = 0.0;
    for (std::int64_t s = 0; s < samples; ++s) {
        double log_w = 0.0;
        for (int i = 0; i < nfree; ++i) {
            // standard Cauchy: density 1/(pi (1+x^2))
            const double u = uniform01(rng);
            const double x = std::tan(kPi * (u - 0.5));
            z[i] = x;
            log_w += std::log(kPi * (1.0 + x * x));
        }
        for (int j = 0; j < dom.m; ++j) {
            // half-Cauchy: density (2/pi)/(1+t^2) on (0, inf)
            const double u = uniform01(rng);
            const double t = std::tan(0.5 * kPi * u);
            z[nfree + j] = t;
            log_w += std::log(0.5 * kPi * (1.0 + t * t));
            log_w += dom.a[j] * std::log(t); // the monomial weight itself
        }
        const double fx = f(z);
        const double val = (fx == 0.0) ? 0.0 : fx * std::exp(log_w);
        sum += val;
        sumsq += val * val;
    }
    MonteCarloEstimate est;
    est.samples = samples;
    est.seed = seed;
    est.estimate = sum / static_cast<double>(samples);
    const double var =
        std::max(sumsq / static_cast<double>(samples) - est.estimate * est.estimate, 0.0);
    est.std_error = std::sqrt(var / static_cast<double>(samples));
    return est;
}

} // namespace sharpineq

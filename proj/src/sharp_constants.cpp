#include "sharpineq/sharp_constants.hpp"

#include <cmath>
#include <stdexcept>

#include "sharpineq/special_functions.hpp"

namespace sharpineq {

namespace {

double conj(double p) { return p / (p - 1.0); }

void require_p_range(const WeightedDomain& dom, double p) {
    if (!(p > 1.0) || !(p < dom.n_a))
        throw std::domain_error("sharp_constants: need 1 < p < n_a");
}

} // namespace

SharpConstant sobolev_constant(const WeightedDomain& dom, double p) {
    require_p_range(dom, p);
    const double na = dom.n_a, q = conj(p);
    SharpConstant c;
    c.kind = ConstantKind::SobolevP;
    c.approximate = dom.ball_measure_approximate;
    c.log_value =
        (1.0 / p) * ((p - 1.0) * std::log(p - 1.0) - std::log(na) -
                     (p - 1.0) * std::log(na - p)) -
        (1.0 / na) * (lgamma(na / p) + lgamma(na / q + 1.0) - lgamma(na) +
                      dom.log_ball_measure);
    return c;
}

SharpConstant sobolev_l1_constant(const WeightedDomain& dom) {
    if (!(dom.n_a > 1.0))
        throw std::domain_error("sobolev_l1_constant: need n_a > 1");
    SharpConstant c;
    c.kind = ConstantKind::SobolevL1;
    c.approximate = dom.ball_measure_approximate;
    c.log_value = -std::log(dom.n_a) - dom.log_ball_measure / dom.n_a;
    return c;
}

double gn_theta(const WeightedDomain& dom, double p, double alpha) {
    require_p_range(dom, p);
    const double na = dom.n_a;
    const double ps = na * p / (na - p);
    if (alpha > 1.0)
        return ps * (alpha - 1.0) /
               (alpha * p * (ps - alpha * p + alpha - 1.0));
    return ps * (1.0 - alpha) / ((ps - alpha * p) * (alpha * p + 1.0 - alpha));
}

SharpConstant gn_constant(const WeightedDomain& dom, double p, double alpha) {
    require_p_range(dom, p);
    const double na = dom.n_a, q = conj(p);
    const double amax = na / (na - p);
    if (!(alpha > 0.0) || alpha == 1.0 || alpha > amax + 1e-15)
        throw std::domain_error(
            "gn_constant: need alpha in (0, n_a/(n_a-p)], alpha != 1");
    const double lnVB = dom.log_ball_measure;
    const double theta = gn_theta(dom, p, alpha);
    SharpConstant c;
    c.alpha = alpha;
    c.theta = theta;
    c.approximate = dom.ball_measure_approximate;
    if (alpha > 1.0) {
        c.kind = ConstantKind::GNsuper;
        const double y = (alpha * (p - 1.0) + 1.0) / (alpha - 1.0);
        c.log_value =
            (theta / p) * (std::log(y) + p * std::log(alpha - 1.0) -
                           (p - 1.0) * std::log(q) - std::log(na)) +
            (1.0 / (alpha * p)) * std::log((q * y - na) / (q * y)) +
            (theta / na) * (lgamma(y) - lgamma(y - na / q) -
                            lgamma(na / q + 1.0) - lnVB);
    } else {
        c.kind = ConstantKind::GNsub;
        const double z = (alpha * p - alpha + 1.0) / (1.0 - alpha);
        c.log_value =
            (theta / p) * (std::log(z) + p * std::log(1.0 - alpha) -
                           (p - 1.0) * std::log(q) - std::log(na)) +
            ((1.0 - theta) / (alpha * p)) *
                std::log(q * z / (q * z + na)) +
            (theta / na) * (lgamma(z + 1.0 + na / q) - lgamma(z + 1.0) -
                            lgamma(na / q + 1.0) - lnVB);
    }
    return c;
}

SharpConstant logsob_constant(const WeightedDomain& dom, double p) {
    if (!(p >= 1.0)) throw std::domain_error("logsob_constant: need p >= 1");
    const double na = dom.n_a;
    SharpConstant c;
    c.kind = ConstantKind::LogSob;
    c.approximate = dom.ball_measure_approximate;
    if (p == 1.0) {
        c.log_value = -std::log(na) - dom.log_ball_measure / na;
        return c;
    }
    const double q = conj(p);
    c.log_value = std::log(p / na) + (p - 1.0) * (std::log(p - 1.0) - 1.0) -
                  (p / na) * (lgamma(na / q + 1.0) + dom.log_ball_measure);
    return c;
}

// ---------------------------------------------------------------------------
// Euclidean GN family by dimension reduction.

namespace {

void require_euclidean_gn_range(int n, double p, double a,
                                const NormSpec& norm) {
    if (norm.kind != NormSpec::Kind::Lq || norm.dim != n)
        throw std::invalid_argument(
            "euclidean_gn: norm must be an lq norm on R^n");
    if (!(a >= 0.0)) throw std::domain_error("euclidean_gn: need a >= 0");
    const double boundary = 0.5 * (n + std::sqrt(n * n + 4.0 * (1.0 + a)));
    if (!(p > 1.0) || !(p < n + 1.0 + a))
        throw std::domain_error("euclidean_gn: need 1 < p < n+1+a");
    if (std::abs(p - boundary) < 1e-12)
        throw std::domain_error(
            "euclidean_gn: p at the branch boundary (alpha undefined)");
}

double log_unit_ball_volume(int n, const NormSpec& norm) {
    return WeightedDomain::make(n, 0, {}, norm).log_ball_measure;
}

} // namespace

SharpConstant euclidean_gn_constant(int n, double p, double a,
                                    const NormSpec& norm,
                                    EuclideanGnFactors* factors) {
    require_euclidean_gn_range(n, p, a, norm);
    const double q = conj(p);
    const double alpha = (n * p + a + 1.0) / (p * n + a + 1.0 - p * p);
    const double lnvolK = log_unit_ball_volume(n, norm);
    const double y = n + (a + 1.0 - p) / p; // = z in the second branch
    SharpConstant c;
    c.alpha = alpha;
    if (alpha > 1.0) {
        c.kind = ConstantKind::EuclideanGN;
        const double theta =
            n * (alpha - 1.0) /
            (alpha * (n * p - (alpha * p + 1.0 - alpha) * (n - p)));
        c.theta = theta;
        c.log_value =
            (theta / p) * (std::log(y) + p * std::log(alpha - 1.0) -
                           (p - 1.0) * std::log(q) - std::log((double)n)) +
            (1.0 / (alpha * p)) * std::log((q * y - n) / (q * y)) +
            (theta / n) *
                (lgamma(y) - lnvolK - lgamma(y - n / q) - lgamma(n / q + 1.0));
    } else {
        c.kind = ConstantKind::EuclideanGNneg;
        const double theta = n * (1.0 - alpha) /
                             ((alpha * p - alpha + 1.0) * (n - alpha * (n - p)));
        c.theta = theta;
        c.log_value =
            (theta / p) * (std::log(y) + p * std::log(1.0 - alpha) -
                           (p - 1.0) * std::log(q) - std::log((double)n)) +
            ((1.0 - theta) / (alpha * p)) * std::log(q * y / (q * y - n)) +
            (theta / n) *
                (lgamma(y) - lnvolK - lgamma(n / q + 1.0) - lgamma(y - n / q));
    }
    if (factors) {
        factors->alpha = alpha;
        factors->theta = c.theta;
        factors->branch = alpha > 1.0 ? 1 : 2;
    }
    return c;
}

double euclidean_gn_assembled(int n, double p, double a, const NormSpec& norm,
                              EuclideanGnFactors* factors) {
    require_euclidean_gn_range(n, p, a, norm);
    const double q = conj(p);
    const double N1 = n + 1.0 + a;
    const auto dom = WeightedDomain::half_space(
        n + 1, a, NormSpec::product(norm, q));
    const double lnS = sobolev_constant(dom, p).log_value;
    const double lnS1 =
        lbeta((a + 1.0) / q, N1 - (a + 1.0) / q) - std::log(q);
    const double lnS3 =
        lbeta((q + a + 1.0) / q, N1 - 1.0 - (a + 1.0) / q) - std::log(q);
    const double beta = 1.0 - n / p - (a + 1.0) / (p * p);
    const double e = (N1 - p) / N1;
    const double lnA = p * lnS + p * std::log((N1 - p) / p) -
                       p * std::log(std::abs(beta)) + (p / N1) * lnS1;
    const double lnB = p * lnS + p * std::log((N1 - p) / p) +
                       p * std::log(q) + lnS3 - e * lnS1;
    const double alpha = (n * p + a + 1.0) / (p * n + a + 1.0 - p * p);
    const double pa = alpha * p - alpha + 1.0;

    double lnC, theta;
    if (alpha > 1.0) {
        // Optimize A lam^u + B lam^v over lam > 0 (u > 0 > v).
        const double u = p - alpha * p * e;
        const double v = pa - alpha * p * e;
        const double s = -v / (u - v), t = u / (u - v);
        const double mu = std::pow(-v / u, 1.0 / (u - v));
        const double K = std::pow(mu, u) + std::pow(mu, v);
        lnC = (std::log(K) + s * lnA + t * lnB) / (alpha * p * e);
        theta = p * s / (alpha * p * e);
    } else {
        const double u2 = alpha * p * e - pa;
        const double v2 = p - pa;
        lnC = (std::log(std::pow(u2 / v2, u2 / (v2 - u2)) * (1.0 - u2 / v2)) -
               (u2 / (v2 - u2)) * lnA - lnB) /
              pa;
        theta = -p * u2 / ((v2 - u2) * pa);
    }
    if (factors) {
        factors->alpha = alpha;
        factors->theta = theta;
        factors->lnS1 = lnS1;
        factors->lnS2 = lnS1; // the middle Beta integral coincides with S1
        factors->lnS3 = lnS3;
        factors->lnA = lnA;
        factors->lnB = lnB;
        factors->beta = beta;
        factors->branch = alpha > 1.0 ? 1 : 2;
    }
    return lnC;
}

double tensor_constant_log(const WeightedDomain& block, double p,
                           std::int64_t k) {
    if (block.m != 1)
        throw std::invalid_argument("tensor_constant_log: block needs m = 1");
    if (k < 1) throw std::invalid_argument("tensor_constant_log: need k >= 1");
    const double na = block.n_a, q = conj(p);
    const double kna = k * na;
    if (!(p > 1.0) || !(p < kna))
        throw std::domain_error("tensor_constant_log: need 1 < p < k n_a");
    const double lnVB = block.log_ball_measure;
    // ball measure of the k-fold product domain under the q-combined norm:
    // V_{B_k} = (q / (k n_a)) [ (n_a/q) Gamma(n_a/q) V_B ]^k / Gamma(k n_a / q)
    const double lnVBk = std::log(q) - std::log(kna) +
                         k * (std::log(na / q) + lnVB) + k * lgamma(na / q) -
                         lgamma(kna / q);
    const double lnSk =
        (1.0 / p) * ((p - 1.0) * std::log(p - 1.0) - std::log(kna) -
                     (p - 1.0) * std::log(kna - p)) -
        (1.0 / kna) *
            (lgamma(kna / p) + lgamma(kna / q + 1.0) - lgamma(kna) + lnVBk);
    return std::log((double)k) / p + lnSk;
}

} // namespace sharpineq

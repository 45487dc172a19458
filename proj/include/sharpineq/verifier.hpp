#pragma once

// Evaluates each sharp inequality as a numeric functional on radial profiles
// and compares against the closed-form constants: Sobolev and GN quotients,
// the entropy deficit, the two-sided duality functionals, the
// dimension-reduction assembly, and the tensorization limit.

#include <cstdint>
#include <string>
#include <vector>

#include "sharpineq/extremals.hpp"
#include "sharpineq/sharp_constants.hpp"

namespace sharpineq {

struct QuotientReport {
    std::string inequality_kind; // "sobolev", "gn_super", "gn_sub", "logsob"
    std::string profile;         // describe(f)
    double lhs = 0.0;            // inequality left side (norm or entropy)
    double rhs = 0.0;            // inequality right side at the sharp constant
    double sharp_value = 0.0;    // the constant used
    // deficit convention: rhs/lhs - 1 for the norm inequalities (relative),
    // rhs - lhs for the entropy inequality (absolute). Nonnegative up to
    // quadrature noise for every valid profile; 0 at the extremal.
    double deficit = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

QuotientReport sobolev_quotient(const WeightedDomain& dom, double p,
                                const RadialProfile& f, double tol = 1e-8);

QuotientReport gn_quotient(const WeightedDomain& dom, double p, double alpha,
                           const RadialProfile& f, double tol = 1e-7);

/// Entropy inequality int |f|^p ln|f|^p <= (n_a/p) ln(L int ||grad f||^p);
/// f is renormalized to ||f||_p = 1 internally. p = 1 is supported for
/// indicator profiles (gradient mass = perimeter).
QuotientReport logsob_deficit(const WeightedDomain& dom, double p,
                              const RadialProfile& f, double tol = 1e-7);

struct DualityGap {
    double lhs = 0.0, rhs = 0.0, gap = 0.0; // gap = rhs - lhs >= 0
};

/// Two-sided Sobolev duality functional; needs ||f||_{p*} = ||g||_{p*} = 1.
DualityGap duality_gap_sobolev(const WeightedDomain& dom, double p,
                               const RadialProfile& f, const RadialProfile& g);

/// Nonhomogeneous GN duality functional at parameter mu > 0;
/// needs ||f||_{alpha p} = ||g||_{alpha p} = 1. Equality at the GN extremal
/// pair requires mu = q^{1/q}.
DualityGap duality_gap_gn(const WeightedDomain& dom, double p, double alpha,
                          const RadialProfile& f, const RadialProfile& g,
                          double mu);

struct DimensionReductionReport {
    int n = 0;
    double p = 0.0, a = 0.0;
    double alpha = 0.0, theta = 0.0;
    int branch = 1;
    double closed_log = 0.0;    // closed-form ln GN
    double assembled_log = 0.0; // assembled from the weighted Sobolev route
    double diff = 0.0;          // assembled - closed
    double extremal_ratio = 0.0; // GN quotient at (1+||x||^q)^{-1/(alpha-1)}
    EuclideanGnFactors factors;
};

DimensionReductionReport dimension_reduction_check(int n, double p, double a,
                                                   const NormSpec& norm);

struct TensorizationReport {
    std::vector<std::int64_t> k;
    std::vector<double> log_ck;
    std::vector<double> rel_gap; // c_k / L - 1
    double log_limit = 0.0;
    bool gap_monotone = true; // |rel_gap| nonincreasing past k = 2 (flagged)
};

TensorizationReport tensorization_limit(const WeightedDomain& block, double p,
                                        const std::vector<std::int64_t>& ks);

/// Seeded monotone spline profile with log-uniform knot values; tail
/// exponent sampled above min_tail so the caller's norms are finite.
RadialProfile random_spline_profile(const WeightedDomain& dom,
                                    std::uint64_t seed, double min_tail);

/// Recovers the interpolation exponent theta from dilation invariance of the
/// GN ratio (two-point lambda solve on the extremal family); matches
/// gn_theta to quadrature accuracy.
double solve_theta_scaling(const WeightedDomain& dom, double p, double alpha);

} // namespace sharpineq

#pragma once

// The extremal families of the sharp weighted inequalities as radial
// profiles: (sigma + r^q)^{-(n_a-p)/p} for Sobolev, the two-branch
// (sigma + (alpha-1) r^q)_+^{1/(1-alpha)} family for Gagliardo-Nirenberg,
// Gaussians e^{-c r^q} for the entropy inequality, ball indicators, and
// spline profiles for the optimizer. Normalizers are evaluated from the
// closed Gamma-product forms and cross-checked by quadrature.

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "sharpineq/weighted_domain.hpp"

namespace sharpineq {

struct RadialProfile {
    enum class Kind { SobolevExtremal, GNExtremal, LogSobExtremal, Indicator,
                      Spline, Custom };

    Kind kind = Kind::Custom;
    std::function<double(double)> value;  // f(r), >= 0
    std::function<double(double)> slope;  // f'(r)
    double support_radius = std::numeric_limits<double>::infinity();
    // f ~ C (support_radius - r)^edge_exponent near a finite edge.
    double edge_exponent = std::numeric_limits<double>::quiet_NaN();
    std::map<std::string, double> params;

    /// r -> f(r)^s as an integrand, with edge metadata scaled accordingly.
    RadialFn power(double s) const;
    /// r -> |f'(r)|^s.
    RadialFn slope_power(double s) const;
};

/// ||f||_{L^s(Sigma, sigma)} = (n_a V_B int f^s r^{n_a-1} dr)^{1/s}.
/// Negative s is allowed when the integral converges.
double lp_norm(const WeightedDomain& dom, const RadialProfile& f, double s,
               double rel_tol = 1e-9);
/// ||grad f||_{L^p} using ||grad f||_* = |f'(r)| for norm-radial f.
double grad_lp_norm(const WeightedDomain& dom, const RadialProfile& f, double p,
                    double rel_tol = 1e-9);

/// ln sigma_{p,a}: normalizer with int h^{p*} sigma = 1.
double log_sigma_sobolev(const WeightedDomain& dom, double p);
/// ln sigma_{alpha,p,a}: normalizer with int h^{alpha p} sigma = 1.
double log_sigma_gn(const WeightedDomain& dom, double p, double alpha);

/// Root-solve of the normalization by bisection on the quadrature; the
/// independent oracle for the closed forms above.
double solve_sigma_sobolev(const WeightedDomain& dom, double p);
double solve_sigma_gn(const WeightedDomain& dom, double p, double alpha);

/// h(r) = (sigma_{p,a} + r^q)^{-(n_a-p)/p}, 1 < p < n_a.
RadialProfile sobolev_extremal(const WeightedDomain& dom, double p);

/// h(r) = (sigma_{alpha,p,a} + (alpha-1) r^q)_+^{1/(1-alpha)}; compactly
/// supported for alpha < 1 with support radius (sigma/(1-alpha))^{1/q}.
RadialProfile gn_extremal(const WeightedDomain& dom, double p, double alpha);

/// f(r) = b e^{-c r^q}, b chosen so ||f||_p = 1; p > 1, c > 0.
RadialProfile logsob_extremal(const WeightedDomain& dom, double p, double c);

/// f = b 1_{B_R} with ||f||_p = 1.
RadialProfile indicator_extremal(const WeightedDomain& dom, double radius,
                                 double p);

/// Monotone decreasing profile: Fritsch-Carlson monotone cubic through
/// (knot radii, values) with a power tail value(r_last) (r_last/r)^tail
/// beyond the last knot and a flat cap below the first. Knot radii are
/// log-spaced on [r_lo, r_hi].
RadialProfile spline_profile(const std::vector<double>& values, double tail_exponent,
                             double r_lo = 0.05, double r_hi = 20.0);

/// f + amplitude * mollifier bump, renormalized to keep ||.||_{norm_exponent}
/// equal to the input's. Throws if the perturbed profile goes negative.
RadialProfile perturb(const WeightedDomain& dom, const RadialProfile& f,
                      double center, double width, double amplitude,
                      double norm_exponent);

/// r -> lambda^{n_a/norm_exponent} f(lambda r): renormalized dilation that
/// preserves the L^{norm_exponent} norm exactly.
RadialProfile dilate(const RadialProfile& f, const WeightedDomain& dom,
                     double lambda, double norm_exponent);

/// JSON-ish text form {kind, params}; parseable back for CLI round-trips
/// of the analytic kinds (splines serialize their knot values).
std::string describe(const RadialProfile& f);

} // namespace sharpineq

#pragma once

// Geometry of (Sigma, sigma): the orthant R^{n-m} x R_+^m with monomial
// weight t_1^{a_1}...t_m^{a_m}, its weighted ball measure V_B and
// perimeter, and the radial-reduction identity
//   int_Sigma g(||z||) sigma dz = n_a V_B int_0^inf g(r) r^{n_a - 1} dr.

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "sharpineq/norms.hpp"

namespace sharpineq {

/// A scalar radial integrand with optional support/edge metadata so the
/// quadrature can pick the right scheme.
struct RadialFn {
    std::function<double(double)> value;
    double support_radius = std::numeric_limits<double>::infinity();
    // Behavior (support_radius - r)^beta near a finite support edge; NaN
    // when smooth or unknown.
    double edge_exponent = std::numeric_limits<double>::quiet_NaN();
};

struct WeightedDomain {
    int n = 1;                 // ambient dimension
    int m = 0;                 // number of weighted coordinates (last m)
    std::vector<double> a;     // exponents, size m, each >= 0
    NormSpec norm;

    double n_a = 0.0;           // n + sum(a)
    double log_ball_measure = 0.0; // ln V_B
    bool ball_measure_approximate = false; // true when V_B came from Monte Carlo

    static WeightedDomain make(int n, int m, std::vector<double> a, NormSpec norm);

    /// Half-space shortcut: m = 1, weight x_n^a.
    static WeightedDomain half_space(int n, double a, NormSpec norm);

    double ball_measure() const { return std::exp(log_ball_measure); }
    double sum_a() const;
};

/// Weighted perimeter of the unit ball: n_a * V_B.
double ball_perimeter(const WeightedDomain& dom);

/// int_Sigma g(||z||) ||z||^shift sigma(z) dz by radial reduction.
/// Throws accuracy_error on non-convergence and std::domain_error when the
/// tail test detects divergence.
double radial_integral(const WeightedDomain& dom, const RadialFn& g,
                       double moment_shift = 0.0, double rel_tol = 1e-11);

/// Direct surface quadrature of int_{dB cap Sigma} ||n(x)||_* sigma dH^{n-1}
/// for the Euclidean norm, n in {2,3}, m = 1; an independent check of
/// ball_perimeter.
double surface_perimeter_quadrature(const WeightedDomain& dom);

/// Canonical text form "domain:n=3,m=1,a=2.5,norm=lq:2".
WeightedDomain parse_domain(const std::string& text);
std::string to_string(const WeightedDomain& dom);

} // namespace sharpineq

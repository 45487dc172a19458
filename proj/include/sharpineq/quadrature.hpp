#pragma once

// 1-D adaptive Gauss-Kronrod quadrature over finite intervals and [0, inf),
// Gauss-Jacobi rules for the t^a weighted direction, a low-dimensional
// tensor path (n <= 3), and a seeded Monte Carlo oracle over the orthant.

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "sharpineq/weighted_domain.hpp"

namespace sharpineq {

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    int subdivisions = 0;
    bool converged = false;
};

struct QuadratureOptions {
    double rel_tol = 1e-11;
    double abs_tol = 1e-300;
    int max_subdivisions = 4000;
};

/// Thrown when an integrator cannot meet the requested tolerance; carries
/// the best estimate obtained.
struct accuracy_error : std::runtime_error {
    QuadratureResult best;
    accuracy_error(const std::string& msg, QuadratureResult r)
        : std::runtime_error(msg), best(r) {}
};

using ScalarFn = std::function<double(double)>;

/// Adaptive Gauss-Kronrod 7/15 on [a, b].
QuadratureResult integrate_interval(const ScalarFn& f, double a, double b,
                                    const QuadratureOptions& opts = {});

/// Integral over (0, inf): adaptive on [0, R_split] (R_split located by a
/// coarse log-grid scan of |f|) plus the tail under r = s/(1-s).
QuadratureResult integrate_halfline(const ScalarFn& f,
                                    const QuadratureOptions& opts = {});

/// Integral over (a, b) of f with an algebraic endpoint factor (b-r)^beta,
/// beta > -1; substitutes r = b - (b-a) u^{1/(1+beta)} to restore smoothness.
QuadratureResult integrate_edge_singular(const ScalarFn& f, double a, double b,
                                         double beta,
                                         const QuadratureOptions& opts = {});

/// Throws accuracy_error unless r.converged.
double require_converged(const QuadratureResult& r, const char* what);

/// Nodes/weights for int_0^1 g(u) u^a du ~= sum w_i g(u_i) (Gauss-Jacobi;
/// a = 0 reduces to Gauss-Legendre). Exact for polynomial g up to degree
/// 2*points - 1.
struct JacobiRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
JacobiRule gauss_jacobi_unit(int points, double a);

/// Tensor quadrature of int f(z) sigma(z) dz over a box in Sigma, n <= 3,
/// m <= 1. Free coordinates use nested adaptive Gauss-Kronrod on
/// [lo_i, hi_i]; the weighted coordinate uses a Gauss-Jacobi rule on
/// [0, t_max], with t_max a function of the free coordinates (for curved
/// regions such as the unit ball) or a constant.
struct TensorBox {
    std::vector<std::pair<double, double>> free_bounds; // size n - m
    std::function<double(std::span<const double>)> t_max; // weighted bound
};
QuadratureResult integrate_tensor(const WeightedDomain& dom,
                                  const std::function<double(std::span<const double>)>& f,
                                  const TensorBox& box,
                                  const QuadratureOptions& opts = {});

/// Seeded Monte Carlo estimate of int f sigma over Sigma. Free coordinates
/// are drawn from a Cauchy reference, weighted coordinates from half-Cauchy;
/// the estimator divides out the reference density. Deterministic given the
/// seed (mt19937_64 with a fixed uniform mapping).
struct MonteCarloEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    std::int64_t samples = 0;
    std::uint64_t seed = 0;
};
constexpr std::uint64_t kDefaultSeed = 0x5EED;
MonteCarloEstimate monte_carlo_sigma(const WeightedDomain& dom,
                                     const std::function<double(std::span<const double>)>& f,
                                     std::int64_t samples,
                                     std::uint64_t seed = kDefaultSeed);

} // namespace sharpineq

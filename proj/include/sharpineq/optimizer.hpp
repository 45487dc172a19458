#pragma once

// Numerical extremality confirmation: derivative-free minimization of the
// dilation-invariant quotients (whose infimum is the reciprocal sharp
// constant) over the spline profile family. The parametrization is 12
// log-spaced knot values plus a tail exponent; knot radii are frozen so the
// search space stays fixed-dimensional.

#include <cstdint>
#include <string>

#include "sharpineq/extremals.hpp"

namespace sharpineq {

enum class QuotientKind { Sobolev, GNsuper, GNsub, LogSob };

/// The degree-0 homogeneous quotient whose infimum over admissible f is
///   Sobolev: ||grad f||_p / ||f||_{p*}            -> 1/S
///   GNsuper: grad^theta ||f||_{p_a}^{1-theta} / ||f||_{ap}  -> 1/G
///   GNsub:   grad^theta ||f||_{ap}^{1-theta} / ||f||_{p_a}  -> 1/N
///   LogSob:  ||grad f||_p exp(-Ent(f^p)/n_a), ||f||_p = 1   -> L^{-1/p}
/// alpha is ignored except for the GN kinds.
double quotient_value(const WeightedDomain& dom, QuotientKind kind, double p,
                      double alpha, const RadialProfile& f);

/// The infimum the quotient converges to (reciprocal sharp constant).
double quotient_infimum(const WeightedDomain& dom, QuotientKind kind, double p,
                        double alpha);

struct OptimizationRun {
    QuotientKind objective = QuotientKind::Sobolev;
    std::string initial;      // description of the starting profile
    RadialProfile best_profile;
    double initial_value = 0.0;
    double best_value = 0.0;
    double sharp_value = 0.0; // quotient infimum, for reference
    int evaluations = 0;
    bool converged = false;   // simplex collapsed below value_tol in budget
    std::uint64_t seed = 0;
};

struct OptimizerOptions {
    int budget = 5000;          // total objective evaluations
    int restarts = 3;           // perturbed-simplex restarts
    std::uint64_t seed = 0x5EED;
    double value_tol = 1e-10;   // simplex value-spread convergence threshold
};

/// Nelder-Mead over (ln v_0, ln decrements, ln(tail - floor)); infeasible
/// candidates (non-integrable tails) are penalized, never evaluated. The
/// init profile is sampled onto the frozen knot grid first, so a dilated
/// init changes only the start point, not the search space.
OptimizationRun minimize_quotient(const WeightedDomain& dom, QuotientKind kind,
                                  double p, double alpha,
                                  const RadialProfile& init,
                                  const OptimizerOptions& opts = {});

} // namespace sharpineq

#pragma once

// Closed-form sharp constants, all evaluated in the log domain: the weighted
// Sobolev constant S, its p = 1 isoperimetric analogue, the two-branch
// Gagliardo-Nirenberg constants G and N with their interpolation exponent
// theta, the L^p entropy constant, and the Euclidean GN family obtained by
// dimension reduction from the weighted half-space.

#include <cmath>
#include <cstdint>
#include <limits>

#include "sharpineq/weighted_domain.hpp"

namespace sharpineq {

enum class ConstantKind {
    SobolevP,
    SobolevL1,
    GNsuper,       // alpha > 1
    GNsub,         // alpha < 1
    LogSob,
    EuclideanGN,   // branch (i)
    EuclideanGNneg // branch (ii), negative exponents
};

struct SharpConstant {
    ConstantKind kind = ConstantKind::SobolevP;
    double log_value = 0.0;
    double theta = std::numeric_limits<double>::quiet_NaN(); // GN kinds only
    double alpha = std::numeric_limits<double>::quiet_NaN();
    bool approximate = false; // V_B came from Monte Carlo

    double value() const { return std::exp(log_value); }
};

/// S(n, m, a, p) for 1 < p < n_a; the best constant in
/// ||f||_{p*} <= S ||grad f||_p.
SharpConstant sobolev_constant(const WeightedDomain& dom, double p);

/// S(n, a, 1) = n_a^{-1} V_B^{-1/n_a} (isoperimetric form), n_a > 1.
SharpConstant sobolev_l1_constant(const WeightedDomain& dom);

/// The GN constant: G (alpha > 1) or N (alpha < 1), with theta attached.
/// Requires 1 < p < n_a and alpha in (0, n_a/(n_a-p)], alpha != 1.
SharpConstant gn_constant(const WeightedDomain& dom, double p, double alpha);

/// The interpolation exponent alone.
double gn_theta(const WeightedDomain& dom, double p, double alpha);

/// The entropy constant of the L^p logarithmic Sobolev inequality, p >= 1.
SharpConstant logsob_constant(const WeightedDomain& dom, double p);

/// Intermediate quantities of the dimension-reduction assembly, exposed for
/// the consistency check: the Beta-type integrals S1, S3, the constants
/// ln A, ln B of the two-parameter bound, and the derived exponents.
struct EuclideanGnFactors {
    double alpha = 0.0, theta = 0.0;
    double lnS1 = 0.0, lnS2 = 0.0, lnS3 = 0.0;
    double lnA = 0.0, lnB = 0.0;
    double beta = 0.0; // scaling exponent 1 - n/p - (a+1)/p^2
    int branch = 1;    // 1 or 2
};

/// Sharp Euclidean GN constant on R^n with an extra parameter a, covering
/// 1 < p < (n + sqrt(n^2 + 4(1+a)))/2 (branch (i)) and the negative-exponent
/// range up to p < n+1+a (branch (ii)). alpha is determined by p:
/// alpha = (np+a+1)/(np+a+1-p^2).
SharpConstant euclidean_gn_constant(int n, double p, double a,
                                    const NormSpec& norm,
                                    EuclideanGnFactors* factors = nullptr);

/// Assembles the same constant from the weighted Sobolev constant on
/// R^n x R_+ with weight t^a (product norm), the Beta factors, and the
/// analytic optimization over the scaling parameter; the dimension-reduction
/// consistency oracle. Returns ln of the assembled constant; factors as above.
double euclidean_gn_assembled(int n, double p, double a, const NormSpec& norm,
                              EuclideanGnFactors* factors = nullptr);

/// ln c_k = ln( k^{1/p} S(nk, k, a repeated, p) ) on the k-fold product
/// domain, evaluated purely by Gamma arithmetic in the log domain;
/// block_norm is the norm of one factor (the blocks are combined by a
/// q-sum). Valid for k n_a > p.
double tensor_constant_log(const WeightedDomain& block, double p,
                           std::int64_t k);

} // namespace sharpineq

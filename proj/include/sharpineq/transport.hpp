#pragma once

// 1-D radial Brenier map (monotone rearrangement) between norm-radial
// weighted probability densities, and the numerical verification of the
// central transport inequality
//   1/(1-gamma) int G^gamma sigma <= (1-n_a(1-gamma))/(1-gamma) int F^gamma
//                                    sigma - int (F^gamma)' psi sigma,
// including its pointwise AM-GM core and the gap decomposition that
// re-traces the proof.

#include <cstdint>
#include <vector>

#include "sharpineq/extremals.hpp"

namespace sharpineq {

/// Monotone map psi with M_F(r) = M_G(psi(r)), where
/// M_H(r) = n_a V_B int_0^r H(s) s^{n_a-1} ds. Built on a log-spaced
/// cumulative table; evaluations refine the table locally by quadrature.
struct TransportMap1D {
    WeightedDomain dom;
    RadialProfile source, target;
    std::vector<double> grid_f, cum_f; // source radii / cumulative mass
    std::vector<double> grid_g, cum_g; // target radii / cumulative mass
    double source_support = 0.0;       // effective (mass 1 - eps) radius
    double target_support = 0.0;

    /// psi(r) = M_G^{-1}(M_F(r)); constant at target_support beyond the
    /// source support.
    double psi(double r) const;
    /// psi'(r) = F(r) r^{n_a-1} / (G(psi) psi^{n_a-1}) (mass balance).
    double psi_prime(double r) const;
    /// M_F(r), M_G(r) by table + local quadrature.
    double mass_source(double r) const;
    double mass_target(double r) const;
};

/// Requires a Euclidean norm (radial maps are Brenier maps only there) and
/// unit-mass densities (mass mismatch > 1e-8 is an error).
TransportMap1D radial_brenier(const WeightedDomain& dom,
                              const RadialProfile& F, const RadialProfile& G);

struct Lemma21Result {
    double lhs = 0.0;
    double rhs = 0.0;
    double gap = 0.0; // rhs - lhs >= 0
};

/// The transport inequality for gamma >= 1 - 1/n_a, gamma != 1; F^gamma
/// must be C^1 with F, G compactly supported (F needs a slope).
Lemma21Result lemma21_check(const WeightedDomain& dom, double gamma,
                            const RadialProfile& F, const RadialProfile& G);

/// Pointwise core inequality for diagonal M:
///   1/(1-gamma) A^{a(1-gamma)} (det M)^{1-gamma}
///     <= (1-n_a(1-gamma))/(1-gamma) + a A + Tr(M),
/// with n_a = dim(M) + a. For gamma > 1 the rearranged product form
/// (>= 1) is also reported.
struct AmGmSlack {
    double lhs = 0.0, rhs = 0.0;
    double slack = 0.0;      // rhs - lhs >= 0
    double rearranged = 0.0; // gamma > 1 only: the ">= 1" form; NaN otherwise
};

AmGmSlack amgm_slack(double A, const std::vector<double>& M_diag, double a,
                     double gamma);

/// Re-traces the proof: gap = (integrated AM-GM slack) + (integration by
/// parts / boundary term), both individually >= 0; residual is the
/// numerical defect of the decomposition.
struct Lemma21Decomposition {
    Lemma21Result totals;
    double amgm_term = 0.0;
    double boundary_term = 0.0;
    double residual = 0.0;
};

Lemma21Decomposition lemma21_decomposition(const WeightedDomain& dom,
                                           double gamma,
                                           const RadialProfile& F,
                                           const RadialProfile& G);

/// Normalized C^1 compactly supported density c (1 - (r/R)^2)_+^k with
/// int F sigma = 1 in closed form; the workhorse for transport tests.
RadialProfile bump_density(const WeightedDomain& dom, double radius, double k);

/// Seeded mixture of two bumps, normalized; deterministic in the seed.
RadialProfile random_bump_density(const WeightedDomain& dom,
                                  std::uint64_t seed);

} // namespace sharpineq

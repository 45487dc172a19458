#pragma once

// Gamma-family special functions in the log domain. All sharp-constant
// formulas downstream are assembled from these and exponentiated once at
// the end, so accuracy here bounds accuracy everywhere.

namespace sharpineq {

/// Natural log of Gamma(x) for x > 0.
///
/// Lanczos approximation below the switch point, Stirling series above.
/// Relative accuracy ~1e-14 on [1e-3, 1e6]. Throws std::domain_error for
/// non-positive or non-finite arguments.
double lgamma(double x);

/// ln B(x, y) = lgamma(x) + lgamma(y) - lgamma(x + y), x, y > 0.
double lbeta(double x, double y);

} // namespace sharpineq

#pragma once

// l^q norms, the product norm (||x||^q + |t|^q)^{1/q}, exact dual norms,
// and the norm gradient x* with ||x*||_* = 1, x.x* = ||x||.

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace sharpineq {

struct NormSpec {
    enum class Kind { Lq, Product };

    Kind kind = Kind::Lq;
    double q = 2.0;   // exponent; q = infinity allowed for Lq
    int dim = 0;      // total dimension

    // Product: inner norm on the first dim-1 coordinates, last coordinate
    // is the scalar slot. Nesting depth is 2: inner must be Lq.
    std::shared_ptr<const NormSpec> inner;

    static NormSpec lq(double q, int dim);
    static NormSpec product(const NormSpec& inner, double q);

    bool is_euclidean() const;
};

double norm(const NormSpec& spec, std::span<const double> v);
double dual_norm(const NormSpec& spec, std::span<const double> v);

/// The dual norm as a NormSpec: l^q <-> l^p with 1/p + 1/q = 1; the
/// product-q dual is product-p of the component duals.
NormSpec dual(const NormSpec& spec);

/// Gradient of the norm at v != 0. Requires q in (1, inf) (smooth case);
/// q in {1, inf} throws std::domain_error at any point, as does v = 0.
std::vector<double> norm_gradient(const NormSpec& spec, std::span<const double> v);

/// Canonical text form: "lq:2:dim=3", "lq:inf:dim=2", "prod(lq:2:dim=3,q=2)".
NormSpec parse_norm(const std::string& text);
std::string to_string(const NormSpec& spec);

} // namespace sharpineq

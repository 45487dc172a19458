#include "sharpineq/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace sharpineq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_dim(const NormSpec& spec, std::span<const double> v) {
    if (static_cast<int>(v.size()) != spec.dim)
        throw std::invalid_argument("norm: dimension mismatch");
}

double conjugate(double q) {
    if (q == 1.0) return kInf;
    if (q == kInf) return 1.0;
    return q / (q - 1.0);
}

// Scaled l^q sum, robust against overflow for large exponents.
double lq_norm(std::span<const double> v, double q) {
    if (q == kInf) {
        double m = 0.0;
        for (double x : v) m = std::max(m, std::abs(x));
        return m;
    }
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    if (m == 0.0) return 0.0;
    double s = 0.0;
    for (double x : v) s += std::pow(std::abs(x) / m, q);
    return m * std::pow(s, 1.0 / q);
}

} // namespace

NormSpec NormSpec::lq(double q, int dim) {
    if (!(q >= 1.0) || dim < 1)
        throw std::invalid_argument("NormSpec::lq: need q >= 1, dim >= 1");
    NormSpec s;
    s.kind = Kind::Lq;
    s.q = q;
    s.dim = dim;
    return s;
}

NormSpec NormSpec::product(const NormSpec& inner, double q) {
    if (inner.kind != Kind::Lq)
        throw std::invalid_argument("NormSpec::product: inner norm must be Lq (depth 2 only)");
    if (!(q >= 1.0))
        throw std::invalid_argument("NormSpec::product: need q >= 1");
    NormSpec s;
    s.kind = Kind::Product;
    s.q = q;
    s.dim = inner.dim + 1;
    s.inner = std::make_shared<NormSpec>(inner);
    return s;
}

bool NormSpec::is_euclidean() const {
    return kind == Kind::Lq && q == 2.0;
}

double norm(const NormSpec& spec, std::span<const double> v) {
    check_dim(spec, v);
    for (double x : v)
        if (!std::isfinite(x)) throw std::invalid_argument("norm: non-finite component");
    if (spec.kind == NormSpec::Kind::Lq)
        return lq_norm(v, spec.q);
    const double nx = norm(*spec.inner, v.subspan(0, spec.dim - 1));
    const double pair[2] = {nx, v[spec.dim - 1]};
    return lq_norm(pair, spec.q);
}

NormSpec dual(const NormSpec& spec) {
    if (spec.kind == NormSpec::Kind::Lq)
        return NormSpec::lq(conjugate(spec.q), spec.dim);
    return NormSpec::product(dual(*spec.inner), conjugate(spec.q));
}

double dual_norm(const NormSpec& spec, std::span<const double> v) {
    return norm(dual(spec), v);
}

std::vector<double> norm_gradient(const NormSpec& spec, std::span<const double> v) {
    check_dim(spec, v);
    const double n = norm(spec, v);
    if (n == 0.0)
        throw std::domain_error("norm_gradient: gradient undefined at the origin");
    std::vector<double> g(v.size());
    if (spec.kind == NormSpec::Kind::Lq) {
        const double q = spec.q;
        if (q == 1.0 || q == kInf)
            throw std::domain_error("norm_gradient: q in {1, inf} is non-smooth");
        for (size_t i = 0; i < v.size(); ++i) {
            const double a = std::abs(v[i]) / n;
            g[i] = (v[i] == 0.0) ? 0.0
                                 : std::copysign(std::pow(a, q - 1.0), v[i]);
        }
        return g;
    }
    const double q = spec.q;
    if (q == 1.0 || q == kInf)
        throw std::domain_error("norm_gradient: q in {1, inf} is non-smooth");
    const int d = spec.dim;
    const auto head = v.subspan(0, d - 1);
    const double nx = norm(*spec.inner, head);
    // d/dx = (nx/N)^{q-1} * grad(inner), d/dt = sign(t) (|t|/N)^{q-1}
    if (nx > 0.0) {
        auto gi = norm_gradient(*spec.inner, head);
        const double f = std::pow(nx / n, q - 1.0);
        for (int i = 0; i < d - 1; ++i) g[i] = f * gi[i];
    }
    const double t = v[d - 1];
    g[d - 1] = (t == 0.0) ? 0.0 : std::copysign(std::pow(std::abs(t) / n, q - 1.0), t);
    return g;
}

namespace {

double parse_q(const std::string& s) {
    if (s == "inf") return kInf;
    size_t pos = 0;
    double q = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("parse_norm: bad exponent '" + s + "'");
    return q;
}

NormSpec parse_lq(const std::string& text) {
    // lq:<q>:dim=<d>
    if (text.rfind("lq:", 0) != 0)
        throw std::invalid_argument("parse_norm: expected 'lq:...', got '" + text + "'");
    const auto colon = text.find(':', 3);
    if (colon == std::string::npos || text.compare(colon + 1, 4, "dim=") != 0)
        throw std::invalid_argument("parse_norm: expected 'lq:<q>:dim=<d>' in '" + text + "'");
    const double q = parse_q(text.substr(3, colon - 3));
    const int dim = std::stoi(text.substr(colon + 5));
    return NormSpec::lq(q, dim);
}

} // namespace

NormSpec parse_norm(const std::string& text) {
    if (text.rfind("prod(", 0) == 0) {
        if (text.back() != ')')
            throw std::invalid_argument("parse_norm: unbalanced ')' in '" + text + "'");
        const std::string body = text.substr(5, text.size() - 6);
        const auto comma = body.rfind(",q=");
        if (comma == std::string::npos)
            throw std::invalid_argument("parse_norm: expected 'prod(<inner>,q=<q>)'");
        return NormSpec::product(parse_lq(body.substr(0, comma)),
                                 parse_q(body.substr(comma + 3)));
    }
    return parse_lq(text);
}

std::string to_string(const NormSpec& spec) {
    std::ostringstream os;
    auto qstr = [](double q) {
        if (q == kInf) return std::string("inf");
        std::ostringstream o;
        o << q;
        return o.str();
    };
    if (spec.kind == NormSpec::Kind::Lq) {
        os << "lq:" << qstr(spec.q) << ":dim=" << spec.dim;
    } else {
        os << "prod(" << to_string(*spec.inner) << ",q=" << qstr(spec.q) << ")";
    }
    return os.str();
}

} // namespace sharpineq

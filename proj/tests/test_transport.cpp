#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "sharpineq/transport.hpp"
#include "sharpineq/verifier.hpp"

using namespace sharpineq;

namespace {
WeightedDomain dom_half(int n, double a, double qn) {
    return WeightedDomain::half_space(n, a, NormSpec::lq(qn, n));
}

double pushforward_moment(const WeightedDomain& dom, const TransportMap1D& map,
                          double k) {
    RadialFn g;
    g.support_radius = map.source.support_radius;
    g.edge_exponent = map.source.edge_exponent;
    g.value = [&map, k](double r) {
        const double v = map.source.value(r);
        return v > 0.0 ? v * std::pow(map.psi(r), k) : 0.0;
    };
    return radial_integral(dom, g, 0.0, 1e-9);
}
} // namespace

TEST_SUITE("transport") {

TEST_CASE("identity map: F = G gives psi(r) = r") {
    const auto dom = dom_half(2, 1.0, 2.0);
    const auto F = bump_density(dom, 1.5, 3.0);
    const auto map = radial_brenier(dom, F, F);
    CHECK(std::abs(map.cum_f.back() - 1.0) <= 1e-9);
    for (double r : {0.1, 0.4, 0.8, 1.2, 1.45})
        CHECK(map.psi(r) == doctest::Approx(r).epsilon(1e-9));
    CHECK(map.psi(10.0) == doctest::Approx(1.5).epsilon(1e-9));
}

TEST_CASE("dilation pair: psi(r) = lambda r") {
    const auto dom = dom_half(2, 1.0, 2.0);
    const double lambda = 1.8;
    const auto F = bump_density(dom, 1.0, 2.5);
    const auto G = bump_density(dom, lambda, 2.5);
    const auto map = radial_brenier(dom, F, G);
    for (double r : {0.1, 0.3, 0.6, 0.9})
        CHECK(map.psi(r) == doctest::Approx(lambda * r).epsilon(1e-8));
    for (double r : {0.2, 0.5, 0.8})
        CHECK(map.psi_prime(r) == doctest::Approx(lambda).epsilon(1e-7));
}

TEST_CASE("pushforward: moments of psi under F match moments under G") {
    const auto dom = dom_half(2, 1.0, 2.0);
    const auto F = random_bump_density(dom, 3);
    const auto G = random_bump_density(dom, 11);
    const auto map = radial_brenier(dom, F, G);
    for (double k : {1.0, 2.0}) {
        const double lhs = pushforward_moment(dom, map, k);
        const double rhs = radial_integral(dom, G.power(1.0), k, 1e-10);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-7));
    }
}

TEST_CASE("composition: psi_{F->H} = psi_{G->H} o psi_{F->G}") {
    const auto dom = dom_half(2, 0.5, 2.0);
    const auto F = random_bump_density(dom, 1);
    const auto G = random_bump_density(dom, 2);
    const auto H = random_bump_density(dom, 4);
    const auto fg = radial_brenier(dom, F, G);
    const auto gh = radial_brenier(dom, G, H);
    const auto fh = radial_brenier(dom, F, H);
    // compare at the source quantile radii
    for (double q : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        double lo = 0.0, hi = fg.source_support;
        for (int i = 0; i < 60; ++i) {
            const double mid = 0.5 * (lo + hi);
            (fg.mass_source(mid) < q ? lo : hi) = mid;
        }
        const double r = 0.5 * (lo + hi);
        CHECK(fh.psi(r) == doctest::Approx(gh.psi(fg.psi(r))).epsilon(1e-7));
    }
}

TEST_CASE("pointwise AM-GM core: equality at A = 1, M = I") {
    for (double gamma : {0.75, 1.2, 2.0}) {
        const auto eq = amgm_slack(1.0, {1.0, 1.0}, 1.0, gamma);
        CHECK(std::abs(eq.slack) <= 1e-12);
        const auto off = amgm_slack(2.0, {1.0, 1.0}, 1.0, gamma);
        CHECK(off.slack > 1e-3);
        const auto off2 = amgm_slack(1.0, {0.5, 2.0}, 1.0, gamma);
        CHECK(off2.slack > 1e-3);
        if (gamma > 1.0) {
            CHECK(eq.rearranged == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(off.rearranged > 1.0);
        } else {
            CHECK(std::isnan(off.rearranged));
        }
    }
    CHECK_THROWS_AS(amgm_slack(1.0, {1.0, 1.0}, 1.0, 0.1), std::domain_error);
    CHECK_THROWS_AS(amgm_slack(-1.0, {1.0}, 1.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(amgm_slack(1.0, {-1.0}, 1.0, 2.0), std::domain_error);
}

TEST_CASE("transport inequality: equality at F = G, nonnegative gap always") {
    const auto dom = dom_half(2, 1.0, 2.0);
    const double gmin = 1.0 - 1.0 / dom.n_a;
    const auto F = bump_density(dom, 1.2, 3.0);
    const auto eq = lemma21_check(dom, gmin, F, F);
    CHECK(std::abs(eq.gap) <= 1e-7);
    for (std::uint64_t seed : {5, 6, 7, 8}) {
        const auto Fr = random_bump_density(dom, seed);
        const auto Gr = random_bump_density(dom, 50 + seed);
        for (double gamma : {gmin, 1.2, 2.0}) {
            const auto r = lemma21_check(dom, gamma, Fr, Gr);
            CHECK(r.gap >= -1e-8);
        }
    }
}

TEST_CASE("gap decomposition re-traces the proof") {
    const auto dom = dom_half(2, 1.0, 2.0);
    const auto F = random_bump_density(dom, 21);
    const auto G = random_bump_density(dom, 22);
    for (double gamma : {1.0 - 1.0 / dom.n_a, 1.5}) {
        const auto d = lemma21_decomposition(dom, gamma, F, G);
        CHECK(d.amgm_term >= -1e-8);
        CHECK(d.boundary_term >= -1e-8);
        CHECK(std::abs(d.residual) <= 1e-6);
        CHECK(d.totals.gap ==
              doctest::Approx(d.amgm_term + d.boundary_term).epsilon(1e-5));
    }
}

TEST_CASE("bump densities are normalized and C^1") {
    const auto dom = dom_half(3, 2.5, 2.0);
    const auto F = bump_density(dom, 2.0, 4.0);
    CHECK(radial_integral(dom, F.power(1.0), 0.0, 1e-11) ==
          doctest::Approx(1.0).epsilon(1e-10));
    const double h = 1e-6, r = 1.3;
    CHECK(F.slope(r) ==
          doctest::Approx((F.value(r + h) - F.value(r - h)) / (2 * h))
              .epsilon(1e-6));
    const auto R = random_bump_density(dom, 9);
    CHECK(radial_integral(dom, R.power(1.0), 0.0, 1e-11) ==
          doctest::Approx(1.0).epsilon(1e-9));
    // determinism
    CHECK(random_bump_density(dom, 9).value(0.7) == R.value(0.7));
}

TEST_CASE("input validation") {
    const auto dom = dom_half(2, 1.0, 2.0);
    const auto F = bump_density(dom, 1.0, 2.0);
    auto bad = F;
    auto v = F.value;
    bad.value = [v](double r) { return 2.0 * v(r); };
    CHECK_THROWS_AS(radial_brenier(dom, F, bad), std::invalid_argument);
    CHECK_THROWS_AS(lemma21_check(dom, 0.2, F, F), std::domain_error);
    CHECK_THROWS_AS(lemma21_check(dom, 1.0, F, F), std::domain_error);
    const auto dom4 = dom_half(2, 1.0, 4.0);
    const auto F4 = bump_density(dom4, 1.0, 2.0);
    CHECK_THROWS_AS(radial_brenier(dom4, F4, F4), std::invalid_argument);
    CHECK_THROWS_AS(bump_density(dom, -1.0, 2.0), std::domain_error);
}

} // TEST_SUITE

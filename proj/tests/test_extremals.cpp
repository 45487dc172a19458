#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "sharpineq/extremals.hpp"

using namespace sharpineq;

namespace {
WeightedDomain dom_half(int n, double a, double qn) {
    return WeightedDomain::half_space(n, a, NormSpec::lq(qn, n));
}
} // namespace

TEST_SUITE("extremals") {

TEST_CASE("sigma normalizers: closed form vs reference values") {
    CHECK(std::exp(log_sigma_sobolev(dom_half(3, 2.5, 2.0), 2.0)) ==
          doctest::Approx(0.3221045265135176).epsilon(1e-13));
    CHECK(std::exp(log_sigma_sobolev(dom_half(2, 0.5, 4.0), 1.5)) ==
          doctest::Approx(0.8517962551398811).epsilon(1e-13));
    CHECK(std::exp(log_sigma_gn(dom_half(2, 1.0, 2.0), 1.5, 2.0)) ==
          doctest::Approx(0.5773502691896257).epsilon(1e-13));
    CHECK(std::exp(log_sigma_gn(dom_half(2, 1.0, 2.0), 1.5, 0.5)) ==
          doctest::Approx(1.2858801991887605).epsilon(1e-13));
}

TEST_CASE("sigma normalizers: closed form agrees with quadrature root-solve") {
    struct Case { int n; double a, qn, p; };
    for (const Case& c : {Case{2, 1.0, 2.0, 1.5}, Case{1, 2.5, 2.0, 3.0},
                          Case{3, 0.5, 4.0, 2.0}}) {
        const auto dom = dom_half(c.n, c.a, c.qn);
        CHECK(solve_sigma_sobolev(dom, c.p) ==
              doctest::Approx(std::exp(log_sigma_sobolev(dom, c.p)))
                  .epsilon(1e-8));
        for (double alpha : {1.7, 0.6}) {
            CHECK(solve_sigma_gn(dom, c.p, alpha) ==
                  doctest::Approx(std::exp(log_sigma_gn(dom, c.p, alpha)))
                      .epsilon(1e-8));
        }
    }
}

TEST_CASE("extremals are unit-normalized in their natural norms") {
    const auto dom = dom_half(2, 1.0, 2.0);
    const double p = 1.5, na = dom.n_a, ps = na * p / (na - p);
    const auto h = sobolev_extremal(dom, p); // ctor asserts int h^{p*} = 1
    CHECK(lp_norm(dom, h, ps) == doctest::Approx(1.0).epsilon(1e-9));
    const auto g = gn_extremal(dom, p, 1.8);
    CHECK(lp_norm(dom, g, 1.8 * p) == doctest::Approx(1.0).epsilon(1e-9));
    const auto gs = gn_extremal(dom, p, 0.5);
    CHECK(lp_norm(dom, gs, 0.5 * p) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::isfinite(gs.support_radius));
    CHECK(gs.value(gs.support_radius * 1.01) == 0.0);
    const auto f = logsob_extremal(dom, p, 0.7);
    CHECK(lp_norm(dom, f, p) == doctest::Approx(1.0).epsilon(1e-9));
    const auto ind = indicator_extremal(dom, 1.3, 2.0);
    CHECK(lp_norm(dom, ind, 2.0) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("GN family degenerates to the Sobolev extremal at the endpoint") {
    const auto dom = dom_half(2, 1.0, 2.0);
    const double p = 1.5, na = dom.n_a;
    const double amax = na / (na - p);
    const auto g = gn_extremal(dom, p, amax);
    const auto h = sobolev_extremal(dom, p);
    for (double r : {0.1, 0.7, 1.3, 4.0}) {
        CHECK(g.value(r) == doctest::Approx(h.value(r)).epsilon(1e-10));
        CHECK(g.slope(r) == doctest::Approx(h.slope(r)).epsilon(1e-10));
    }
}

TEST_CASE("slope matches a finite difference of the value") {
    const auto dom = dom_half(2, 1.0, 2.0);
    for (const auto& f : {sobolev_extremal(dom, 1.5),
                          gn_extremal(dom, 1.5, 1.8),
                          gn_extremal(dom, 1.5, 0.5),
                          logsob_extremal(dom, 1.5, 0.7)}) {
        for (double r : {0.3, 0.9, 1.7}) {
            if (r >= f.support_radius) continue;
            const double eps = 1e-6;
            const double fd = (f.value(r + eps) - f.value(r - eps)) / (2 * eps);
            CHECK(f.slope(r) == doctest::Approx(fd).epsilon(1e-6));
        }
    }
}

TEST_CASE("dilation preserves the chosen norm and rescales support") {
    const auto dom = dom_half(2, 1.0, 2.0);
    const auto g = gn_extremal(dom, 1.5, 0.5);
    const double s = 0.75; // arbitrary norm exponent
    const double before = lp_norm(dom, g, s);
    const auto gl = dilate(g, dom, 2.5, s);
    CHECK(lp_norm(dom, gl, s) == doctest::Approx(before).epsilon(1e-9));
    CHECK(gl.support_radius == doctest::Approx(g.support_radius / 2.5));
    // gradient norm changes unless the exponent is conformal
    const auto h = sobolev_extremal(dom, 1.5);
    const auto hl = dilate(h, dom, 3.0, dom.n_a * 1.5 / (dom.n_a - 1.5));
    CHECK(lp_norm(dom, hl, dom.n_a * 1.5 / (dom.n_a - 1.5)) ==
          doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("perturbation: renormalized, reversible at zero amplitude") {
    const auto dom = dom_half(2, 1.0, 2.0);
    const auto h = sobolev_extremal(dom, 1.5);
    const double ps = dom.n_a * 1.5 / (dom.n_a - 1.5);
    const auto same = perturb(dom, h, 1.0, 0.5, 0.0, ps);
    for (double r : {0.2, 1.0, 3.0})
        CHECK(same.value(r) == doctest::Approx(h.value(r)).epsilon(1e-10));
    const auto bumped = perturb(dom, h, 1.0, 0.5, 0.05, ps);
    CHECK(lp_norm(dom, bumped, ps) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(bumped.value(1.0) != doctest::Approx(h.value(1.0)).epsilon(1e-6));
    CHECK_THROWS_AS(perturb(dom, h, 6.0, 0.5, -10.0, ps), std::domain_error);
}

TEST_CASE("spline profiles: monotone data stays monotone, tail decays") {
    const auto f = spline_profile({8.0, 4.0, 2.5, 1.0, 0.4, 0.1}, 3.0);
    double prev = f.value(0.01);
    for (double r = 0.05; r < 40.0; r *= 1.17) {
        const double v = f.value(r);
        CHECK(v <= prev + 1e-12);
        CHECK(v >= 0.0);
        prev = v;
    }
    // power tail: f(2r)/f(r) = 2^{-3} far out
    CHECK(f.value(80.0) / f.value(40.0) == doctest::Approx(0.125).epsilon(1e-12));
    CHECK_THROWS_AS(spline_profile({1.0, 2.0}, 3.0), std::invalid_argument);
    CHECK_THROWS_AS(spline_profile({1.0, -2.0, 1.0}, 3.0), std::invalid_argument);
}

TEST_CASE("parameter validation") {
    const auto dom = dom_half(2, 1.0, 2.0); // n_a = 3
    CHECK_THROWS_AS(sobolev_extremal(dom, 3.5), std::domain_error);
    CHECK_THROWS_AS(sobolev_extremal(dom, 1.0), std::domain_error);
    CHECK_THROWS_AS(gn_extremal(dom, 1.5, 1.0), std::domain_error);
    CHECK_THROWS_AS(gn_extremal(dom, 1.5, 2.5), std::domain_error); // > amax
    CHECK_THROWS_AS(logsob_extremal(dom, 1.5, -1.0), std::domain_error);
    CHECK_THROWS_AS(indicator_extremal(dom, 0.0, 2.0), std::domain_error);
}

} // TEST_SUITE

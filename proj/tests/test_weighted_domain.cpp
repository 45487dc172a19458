#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "sharpineq/quadrature.hpp"
#include "sharpineq/special_functions.hpp"
#include "sharpineq/weighted_domain.hpp"

using namespace sharpineq;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_SUITE("weighted_domain") {

TEST_CASE("ball measure: classical cases") {
    // interval [-1,1]
    CHECK(WeightedDomain::make(1, 0, {}, NormSpec::lq(2.0, 1)).ball_measure() ==
          doctest::Approx(2.0).epsilon(1e-14));
    // unit disk, half disk, weighted half disk
    CHECK(WeightedDomain::make(2, 0, {}, NormSpec::lq(2.0, 2)).ball_measure() ==
          doctest::Approx(M_PI).epsilon(1e-14));
    CHECK(WeightedDomain::half_space(2, 0.0, NormSpec::lq(2.0, 2)).ball_measure() ==
          doctest::Approx(M_PI / 2.0).epsilon(1e-14));
    // half disk with weight t: int_{half disk} t = 2/3
    CHECK(WeightedDomain::half_space(2, 1.0, NormSpec::lq(2.0, 2)).ball_measure() ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    // unit 3-ball and cross-polytope
    CHECK(WeightedDomain::make(3, 0, {}, NormSpec::lq(2.0, 3)).ball_measure() ==
          doctest::Approx(4.0 * M_PI / 3.0).epsilon(1e-14));
    CHECK(WeightedDomain::make(2, 0, {}, NormSpec::lq(1.0, 2)).ball_measure() ==
          doctest::Approx(2.0).epsilon(1e-14));
    CHECK(WeightedDomain::make(3, 0, {}, NormSpec::lq(1.0, 3)).ball_measure() ==
          doctest::Approx(4.0 / 3.0).epsilon(1e-14));
    // sup-norm box with weight t^a on [0,1]
    CHECK(WeightedDomain::half_space(3, 2.5, NormSpec::lq(kInf, 3)).ball_measure() ==
          doctest::Approx(4.0 / 3.5).epsilon(1e-14));
}

TEST_CASE("ball measure matches Monte Carlo on a generic case") {
    auto dom = WeightedDomain::half_space(3, 1.7, NormSpec::lq(3.0, 3));
    CHECK_FALSE(dom.ball_measure_approximate);
    auto ind = [&dom](std::span<const double> z) {
        return norm(dom.norm, z) < 1.0 ? 1.0 : 0.0;
    };
    const auto mc = monte_carlo_sigma(dom, ind, 400000);
    CHECK(std::abs(mc.estimate - dom.ball_measure()) < 5.0 * mc.std_error);
}

TEST_CASE("product norm ball agrees with the equivalent lq ball") {
    // (||x||_2^2 + t^2)^{1/2} on R^2 x R_+ is the Euclidean norm on R^3
    auto prod = WeightedDomain::half_space(
        3, 1.2, NormSpec::product(NormSpec::lq(2.0, 2), 2.0));
    auto flat = WeightedDomain::half_space(3, 1.2, NormSpec::lq(2.0, 3));
    CHECK(prod.log_ball_measure ==
          doctest::Approx(flat.log_ball_measure).epsilon(1e-13));

    // max(||x||_1, t) on R^2 x R_+: cross-polytope cylinder, V = 2 / (a+1)
    auto cyl = WeightedDomain::half_space(
        3, 3.0, NormSpec::product(NormSpec::lq(1.0, 2), kInf));
    CHECK(cyl.ball_measure() == doctest::Approx(0.5).epsilon(1e-13));

    // generic product ball cross-checked by Monte Carlo
    auto gen = WeightedDomain::half_space(
        3, 0.8, NormSpec::product(NormSpec::lq(4.0, 2), 1.5));
    auto ind = [&gen](std::span<const double> z) {
        return norm(gen.norm, z) < 1.0 ? 1.0 : 0.0;
    };
    const auto mc = monte_carlo_sigma(gen, ind, 400000);
    CHECK(std::abs(mc.estimate - gen.ball_measure()) < 5.0 * mc.std_error);
}

TEST_CASE("radial reduction: Gaussian moments") {
    // int_{R x R_+} e^{-|z|^2} t dz = sqrt(pi) * 1/2
    auto dom = WeightedDomain::half_space(2, 1.0, NormSpec::lq(2.0, 2));
    RadialFn g;
    g.value = [](double r) { return std::exp(-r * r); };
    CHECK(radial_integral(dom, g) ==
          doctest::Approx(std::sqrt(M_PI) / 2.0).epsilon(1e-11));
    // with a moment shift: int e^{-|z|^2} |z|^2 t dz
    // = n_a V_B int e^{-r^2} r^{n_a+1} dr, n_a = 3 -> n_a V_B Gamma(5/2)/2
    const double exact =
        dom.n_a * dom.ball_measure() * 0.5 * std::exp(sharpineq::lgamma(2.5));
    CHECK(radial_integral(dom, g, 2.0) == doctest::Approx(exact).epsilon(1e-11));
}

TEST_CASE("radial reduction: compact support with an edge") {
    // f = (1 - r)_+^{1/2} on the weighted half plane, a = 0.5, n_a = 2.5:
    // integral = n_a V_B B(n_a, 3/2)
    auto dom = WeightedDomain::half_space(2, 0.5, NormSpec::lq(2.0, 2));
    RadialFn g;
    g.value = [](double r) { return r < 1.0 ? std::sqrt(1.0 - r) : 0.0; };
    g.support_radius = 1.0;
    g.edge_exponent = 0.5;
    const double exact =
        dom.n_a * dom.ball_measure() * std::exp(sharpineq::lbeta(dom.n_a, 1.5));
    CHECK(radial_integral(dom, g) == doctest::Approx(exact).epsilon(1e-11));
}

TEST_CASE("radial reduction rejects divergent tails") {
    auto dom = WeightedDomain::half_space(2, 1.0, NormSpec::lq(2.0, 2));
    RadialFn g;
    g.value = [](double r) { return 1.0 / (1.0 + r * r); }; // r^{n_a-1} wins
    CHECK_THROWS_AS(radial_integral(dom, g), std::domain_error);
}

TEST_CASE("perimeter: surface quadrature vs n_a V_B") {
    for (double a : {0.0, 0.5, 2.0}) {
        auto d2 = WeightedDomain::half_space(2, a, NormSpec::lq(2.0, 2));
        CHECK(surface_perimeter_quadrature(d2) ==
              doctest::Approx(ball_perimeter(d2)).epsilon(1e-11));
        auto d3 = WeightedDomain::half_space(3, a, NormSpec::lq(2.0, 3));
        CHECK(surface_perimeter_quadrature(d3) ==
              doctest::Approx(ball_perimeter(d3)).epsilon(1e-11));
    }
}

TEST_CASE("parse and print") {
    auto dom = parse_domain("domain:n=3,m=1,a=2.5,norm=lq:2");
    CHECK(dom.n == 3);
    CHECK(dom.m == 1);
    CHECK(dom.a[0] == doctest::Approx(2.5));
    CHECK(dom.n_a == doctest::Approx(5.5));
    CHECK(to_string(dom) == "domain:n=3,m=1,a=2.5,norm=lq:2:dim=3");
    auto rt = parse_domain(to_string(dom));
    CHECK(rt.log_ball_measure == doctest::Approx(dom.log_ball_measure));

    auto two = parse_domain("domain:n=4,m=2,a=1;0.5,norm=lq:2");
    CHECK(two.m == 2);
    CHECK(two.n_a == doctest::Approx(5.5));

    CHECK_THROWS_AS(parse_domain("domain:n=2,m=3,a=1;1;1,norm=lq:2"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_domain("ball:n=2"), std::invalid_argument);
}

TEST_CASE("invalid construction") {
    CHECK_THROWS_AS(WeightedDomain::make(2, 1, {-0.5}, NormSpec::lq(2.0, 2)),
                    std::invalid_argument);
    CHECK_THROWS_AS(WeightedDomain::make(2, 1, {1.0}, NormSpec::lq(2.0, 3)),
                    std::invalid_argument);
    CHECK_THROWS_AS(WeightedDomain::make(2, 2, {1.0}, NormSpec::lq(2.0, 2)),
                    std::invalid_argument);
}

} // TEST_SUITE

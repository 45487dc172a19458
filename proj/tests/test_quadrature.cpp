#include <doctest.h>

#include <cmath>

#include "sharpineq/quadrature.hpp"

using namespace sharpineq;

TEST_SUITE("quadrature") {

TEST_CASE("finite intervals: known integrals") {
    auto I = [](auto f, double a, double b) {
        return require_converged(integrate_interval(f, a, b), "test");
    };
    CHECK(I([](double x) { return x * x; }, 0.0, 1.0) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-13));
    CHECK(I([](double x) { return std::sin(x); }, 0.0, M_PI) ==
          doctest::Approx(2.0).epsilon(1e-13));
    CHECK(I([](double x) { return std::exp(x); }, -1.0, 2.0) ==
          doctest::Approx(std::exp(2.0) - std::exp(-1.0)).epsilon(1e-13));
    CHECK(I([](double x) { return 1.0 / (1.0 + x * x); }, 0.0, 1.0) ==
          doctest::Approx(M_PI / 4.0).epsilon(1e-13));
    // oscillatory
    CHECK(I([](double x) { return std::cos(50.0 * x); }, 0.0, 1.0) ==
          doctest::Approx(std::sin(50.0) / 50.0).epsilon(1e-11));
    // sharp peak
    CHECK(I([](double x) { return std::exp(-1000.0 * (x - 0.3) * (x - 0.3)); },
            0.0, 1.0) ==
          doctest::Approx(std::sqrt(M_PI / 1000.0)).epsilon(1e-11));
}

TEST_CASE("error estimates are honest") {
    QuadratureOptions opts;
    opts.rel_tol = 1e-10;
    struct Case {
        ScalarFn f;
        double a, b, exact;
    };
    const Case cases[] = {
        {[](double x) { return std::sqrt(x); }, 0.0, 1.0, 2.0 / 3.0},
        {[](double x) { return std::log(x + 1e-3); }, 0.0, 1.0,
         1.001 * std::log(1.001) - 1.0 - 1e-3 * std::log(1e-3)},
        {[](double x) { return std::pow(std::abs(x - 0.5), 0.3); }, 0.0, 1.0,
         2.0 * std::pow(0.5, 1.3) / 1.3},
        {[](double x) { return 1.0 / std::sqrt(std::abs(x)); }, 1e-8, 1.0,
         2.0 * (1.0 - 1e-4)},
    };
    for (const auto& c : cases) {
        const QuadratureResult r = integrate_interval(c.f, c.a, c.b, opts);
        CHECK(std::abs(r.value - c.exact) <=
              std::max(10.0 * r.abs_error_estimate, 1e-12));
    }
}

TEST_CASE("half-line integrals") {
    auto H = [](auto f) {
        return require_converged(integrate_halfline(f), "test");
    };
    CHECK(H([](double r) { return std::exp(-r); }) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(H([](double r) { return std::exp(-r) * r * r * r * r; }) ==
          doctest::Approx(24.0).epsilon(1e-12));
    CHECK(H([](double r) { return std::exp(-r * r); }) ==
          doctest::Approx(std::sqrt(M_PI) / 2.0).epsilon(1e-12));
    // slowly decaying but integrable
    CHECK(H([](double r) { return 1.0 / ((1.0 + r) * (1.0 + r))
                                  / std::sqrt(1.0 + r); }) ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-11));
    // bulk far from the origin
    CHECK(H([](double r) { return std::exp(-(r - 200.0) * (r - 200.0)); }) ==
          doctest::Approx(std::sqrt(M_PI)).epsilon(1e-11));
}

TEST_CASE("edge singularities") {
    // int_0^1 (1-r)^{-1/2} dr = 2
    auto f = [](double r) { return 1.0 / std::sqrt(1.0 - r); };
    CHECK(require_converged(integrate_edge_singular(f, 0.0, 1.0, -0.5), "test") ==
          doctest::Approx(2.0).epsilon(1e-12));
    // int_0^2 (2-r)^{1/3} r dr = 2^{7/3} (3/4 - 3/7)
    auto g = [](double r) { return std::cbrt(2.0 - r) * r; };
    const double exact = std::pow(2.0, 7.0 / 3.0) * (3.0 / 4.0 - 3.0 / 7.0);
    CHECK(require_converged(integrate_edge_singular(g, 0.0, 2.0, 1.0 / 3.0), "test") ==
          doctest::Approx(exact).epsilon(1e-10));
    CHECK_THROWS_AS(integrate_edge_singular(f, 0.0, 1.0, -1.5), std::domain_error);
}

TEST_CASE("Gauss-Jacobi rules on [0,1] with weight u^a") {
    for (double a : {0.0, 0.5, 2.5, 7.0}) {
        const JacobiRule rule = gauss_jacobi_unit(12, a);
        // moments int_0^1 u^k u^a du = 1/(k+a+1), exact through degree 23
        for (int k = 0; k <= 23; ++k) {
            double s = 0.0;
            for (size_t i = 0; i < rule.nodes.size(); ++i)
                s += rule.weights[i] * std::pow(rule.nodes[i], k);
            CHECK(s == doctest::Approx(1.0 / (k + a + 1.0)).epsilon(1e-12));
        }
        for (double u : rule.nodes) {
            CHECK(u > 0.0);
            CHECK(u < 1.0);
        }
    }
}

TEST_CASE("tensor quadrature reproduces the weighted ball measure") {
    // n = 2, m = 1, a = 1.5, Euclidean ball: integrate 1 over the unit ball
    auto dom = WeightedDomain::half_space(2, 1.5, NormSpec::lq(2.0, 2));
    TensorBox box;
    box.free_bounds = {{-1.0, 1.0}};
    box.t_max = [](std::span<const double> x) {
        const double s = 1.0 - x[0] * x[0];
        return s > 0.0 ? std::sqrt(s) : 0.0;
    };
    auto one = [](std::span<const double>) { return 1.0; };
    QuadratureOptions opts;
    opts.rel_tol = 1e-9;
    const QuadratureResult r = integrate_tensor(dom, one, box, opts);
    CHECK(r.value == doctest::Approx(dom.ball_measure()).epsilon(1e-8));
}

TEST_CASE("tensor quadrature in three dimensions") {
    // n = 3, m = 1, a = 2: int over the box [0,1]^2 x [0,2] of x y t^2 dsigma
    // with sigma = t^2: int x dx int y dy int t^4 dt = 1/4 * 32/5
    auto dom = WeightedDomain::half_space(3, 2.0, NormSpec::lq(2.0, 3));
    TensorBox box;
    box.free_bounds = {{0.0, 1.0}, {0.0, 1.0}};
    box.t_max = [](std::span<const double>) { return 2.0; };
    auto f = [](std::span<const double> z) { return z[0] * z[1] * z[2] * z[2]; };
    const QuadratureResult r = integrate_tensor(dom, f, box, {});
    CHECK(r.value == doctest::Approx(0.25 * 32.0 / 5.0).epsilon(1e-10));
}

TEST_CASE("Monte Carlo: deterministic and consistent") {
    auto dom = WeightedDomain::half_space(2, 1.0, NormSpec::lq(2.0, 2));
    auto f = [](std::span<const double> z) {
        const double r2 = z[0] * z[0] + z[1] * z[1];
        return std::exp(-r2);
    };
    const auto e1 = monte_carlo_sigma(dom, f, 200000);
    const auto e2 = monte_carlo_sigma(dom, f, 200000);
    CHECK(e1.estimate == e2.estimate); // bit-identical under the default seed
    CHECK(e1.seed == kDefaultSeed);
    // exact value: int_R e^{-x^2} dx * int_0^inf e^{-t^2} t dt = sqrt(pi)/2
    const double exact = std::sqrt(M_PI) / 2.0;
    CHECK(std::abs(e1.estimate - exact) < 5.0 * e1.std_error);
    CHECK(e1.std_error < 0.01);

    const auto e3 = monte_carlo_sigma(dom, f, 200000, 123);
    CHECK(e3.estimate != e1.estimate);
    CHECK(std::abs(e3.estimate - exact) < 5.0 * e3.std_error);
}

} // TEST_SUITE

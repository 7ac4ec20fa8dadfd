#include <cmath>

#include <doctest.h>

#include "fob/quadrature.hpp"

TEST_CASE("polynomial and trigonometric integrals") {
    auto sq = [](double x) { return x * x; };
    CHECK(fob::integrate(sq, 0.0, 1.0).value == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    auto s = [](double x) { return std::sin(x); };
    CHECK(fob::integrate(s, 0.0, M_PI).value == doctest::Approx(2.0).epsilon(1e-12));

    auto osc = [](double x) { return std::cos(37.0 * x); };
    CHECK(fob::integrate(osc, 0.0, 2.0).value ==
          doctest::Approx(std::sin(74.0) / 37.0).epsilon(1e-10));
}

TEST_CASE("breakpoints steer the panels") {
    // narrow bump at 0.5 on a wide interval
    auto bump = [](double x) {
        const double t = (x - 0.5) / 1e-5;
        return std::exp(-0.5 * t * t);
    };
    const double exact = 1e-5 * std::sqrt(2.0 * M_PI);
    const fob::QuadResult r = fob::integrate(bump, {0.0, 0.5 - 1e-4, 0.5 + 1e-4, 100.0});
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(exact).epsilon(1e-8));
}

TEST_CASE("half line integration matches known tails") {
    // the default window truncates at 12 decay scales; compare against the
    // exactly truncated integrals
    auto e = [](double x) { return std::exp(-x); };
    CHECK(fob::integrate_half_line(e, 1.0).value ==
          doctest::Approx(1.0 - std::exp(-12.0)).epsilon(1e-9));

    // Gamma(3) density on a 1e-6 scale
    const double scale = 1e-6;
    auto g3 = [&](double x) {
        const double t = x / scale;
        return 0.5 * t * t * std::exp(-t) / scale;
    };
    const double tail = std::exp(-12.0) * (1.0 + 12.0 + 72.0);
    CHECK(fob::integrate_half_line(g3, scale).value ==
          doctest::Approx(1.0 - tail).epsilon(1e-8));
}

TEST_CASE("node budget exhaustion is reported") {
    fob::QuadratureSpec spec;
    spec.max_nodes = 50;
    spec.abs_tol = 1e-300;
    spec.rel_tol = 1e-16;
    auto f = [](double x) { return std::cos(300.0 * x); };
    const fob::QuadResult r = fob::integrate(f, 0.0, 10.0, spec);
    CHECK_FALSE(r.converged);
    CHECK(r.nodes_used <= 50 + 22);  // at most one panel beyond the budget
}

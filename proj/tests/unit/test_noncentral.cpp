#include <cmath>

#include <doctest.h>

#include "fob/cubic.hpp"
#include "fob/noncentral.hpp"
#include "fob/params.hpp"
#include "fob/quadrature.hpp"

namespace {

const fob::DiscreteChannelParams kD = fob::derive_discrete(fob::PhysicalParams{});

}  // namespace

TEST_CASE("rician density normalizes and matches reference entropies") {
    const double pn = kD.noise_power_w;
    fob::QuadratureSpec spec;

    // high precision references for h(r | r0) and E[log r | r0]
    struct Ref {
        double mult, h_r, e_log_r;
    };
    const Ref refs[] = {{0.5, -5.2083828601418, -6.08016951479339},
                        {1.0, -5.03209991177086, -5.79947168425756},
                        {3.0, -4.85188699160767, -4.81054513911012}};
    for (const Ref& ref : refs) {
        const double r0 = ref.mult * std::sqrt(pn);
        const auto bp = fob::rician_breakpoints(r0, pn, spec);
        auto f = [&](double r) { return std::exp(fob::log_rician(r, r0, pn)); };
        CHECK(fob::integrate(f, bp, spec).value == doctest::Approx(1.0).epsilon(1e-8));

        auto fh = [&](double r) {
            const double l = fob::log_rician(r, r0, pn);
            return (l > -700.0) ? -std::exp(l) * l : 0.0;
        };
        CHECK(fob::integrate(fh, bp, spec).value == doctest::Approx(ref.h_r).epsilon(1e-9));

        auto fe = [&](double r) {
            const double l = fob::log_rician(r, r0, pn);
            return (l > -700.0) ? std::exp(l) * std::log(r) : 0.0;
        };
        CHECK(fob::integrate(fe, bp, spec).value == doctest::Approx(ref.e_log_r).epsilon(1e-9));
    }
}

TEST_CASE("log rician survives huge arguments") {
    const double pn = kD.noise_power_w;
    const double r0 = 1.0;  // 2 r r0 / P_N is about 3e5
    const double l = fob::log_rician(r0, r0, pn);
    CHECK(std::isfinite(l));
    // at r = r0 the density is about 1/sqrt(pi P_N) by the I0 asymptote
    CHECK(l == doctest::Approx(-0.5 * std::log(M_PI * pn)).epsilon(1e-3));
}

TEST_CASE("noncentral moments match closed forms") {
    for (double s : {0.0, 1e-6, 1e-3, 0.3}) {
        const double g = fob::g_map(s, kD.eta);
        const double pn = kD.noise_power_w;

        CHECK(fob::noncentral_expectation([](double) { return 1.0; }, s, kD).value ==
              doctest::Approx(1.0).epsilon(1e-8));
        CHECK(fob::noncentral_expectation([](double v) { return v; }, s, kD).value ==
              doctest::Approx(g + pn).epsilon(1e-8));

        // second moment of a noncentral chi squared with two degrees of freedom
        const double m2 = g * g + 4.0 * g * pn + 2.0 * pn * pn;
        CHECK(fob::noncentral_expectation([](double v) { return v * v; }, s, kD).value ==
              doctest::Approx(m2).epsilon(1e-7));
    }
}

TEST_CASE("expectations reduce to the central case at zero conditioning") {
    const double pn = kD.noise_power_w;
    // |y|^2 is exponential with mean P_N; E[log] = log(P_N) - gamma_E
    const double e_log = fob::noncentral_expectation(
                             [](double v) { return std::log(v + 1e-300); }, 0.0, kD)
                             .value;
    CHECK(e_log == doctest::Approx(std::log(pn) - 0.5772156649015329).epsilon(1e-8));
}

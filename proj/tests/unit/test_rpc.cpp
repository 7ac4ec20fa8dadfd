#include <cmath>
#include <complex>

#include <doctest.h>

#include "fob/cubic.hpp"
#include "fob/lpc.hpp"
#include "fob/optimize.hpp"
#include "fob/params.hpp"
#include "fob/rpc.hpp"

namespace {

const fob::DiscreteChannelParams kD = fob::derive_discrete(fob::PhysicalParams{});

}  // namespace

TEST_CASE("lower bound law satisfies its stationarity cubic and power constraint") {
    for (double dbm : {-25.0, 0.0, 35.0}) {
        const double p = fob::dbm_to_watt(dbm);
        const auto [bits, law] = fob::rpc::lower_bound(p, kD);
        CHECK(bits > 0.0);

        const fob::CubicCoeffs c{p, -1.0, 6.0 * p * kD.eta * kD.eta, -18.0 * kD.eta * kD.eta};
        const double l = law.lambda;
        const double scale = std::max({std::abs(c.c3) * l * l * l, std::abs(c.c2) * l * l,
                                       std::abs(c.c1) * l, std::abs(c.c0)});
        CHECK(std::abs(c.eval(l)) <= 1e-9 * scale);
        CHECK(fob::rpc::input_law_mean(law) == doctest::Approx(p).epsilon(1e-9));
        CHECK(law.zeta == doctest::Approx(l * l * l / (l * l + 6.0 * kD.eta * kD.eta)));
    }
}

TEST_CASE("closed form and quadrature entropies of the distorted power agree") {
    for (double dbm : {-15.0, 5.0, 25.0}) {
        const auto law = fob::rpc::lower_bound(fob::dbm_to_watt(dbm), kD).second;
        const double a = fob::rpc::entropy_w2_closed_form(law);
        const double b = fob::rpc::entropy_w2_quadrature(law);
        CHECK(a == doctest::Approx(b).epsilon(1e-6));
    }
}

TEST_CASE("simple upper bound equals direct minimization of its objective") {
    const double pn = kD.noise_power_w;
    const double e2 = kD.eta * kD.eta;
    const double b_const = pn + std::sqrt(M_PI * pn) /
                                    (std::pow(12.0, 3.0 / 8.0) *
                                     std::sqrt((std::sqrt(3.0) - 1.0) * kD.eta));
    for (double dbm : {-20.0, 10.0, 40.0}) {
        const double p = fob::dbm_to_watt(dbm);
        auto objective = [&](double mu) {
            return std::log((mu * mu + 6.0 * e2) / (mu * mu * mu * pn)) - 1.0 +
                   mu * (p + b_const);
        };
        // bracket around the closed-form optimizer, then polish by search
        const double mu_star = fob::rpc::upper_bound_simple_mu(p, kD);
        const fob::ScalarOpt direct = fob::minimize_scalar(objective, mu_star / 50.0,
                                                           mu_star * 50.0);
        CHECK(direct.arg == doctest::Approx(mu_star).epsilon(1e-5));
        CHECK(fob::rpc::upper_bound_simple(p, kD) ==
              doctest::Approx(fob::nats_to_bits(direct.value)).epsilon(1e-7));
    }
}

TEST_CASE("bound ordering holds") {
    for (double dbm : {-30.0, -10.0, 10.0, 30.0}) {
        const double p = fob::dbm_to_watt(dbm);
        const double lb = fob::rpc::lower_bound(p, kD).first;
        const auto ub = fob::rpc::upper_bound(p, kD);
        CHECK(ub.converged);
        CHECK(lb <= ub.bits + 1e-6);
        CHECK(ub.bits <= fob::rpc::upper_bound_simple(p, kD) + 1e-6);
    }
}

TEST_CASE("linear channel collapses to the AWGN capacity") {
    fob::DiscreteChannelParams lin = kD;
    lin.eta = 0.0;
    for (double dbm : {-35.0, 0.0, 50.0}) {
        const double p = fob::dbm_to_watt(dbm);
        const double awgn = std::log2(1.0 + p / lin.noise_power_w);
        CHECK(std::abs(fob::rpc::lower_bound(p, lin).first - awgn) < 1e-4);
        CHECK(std::abs(fob::rpc::upper_bound(p, lin).bits - awgn) < 1e-4);
    }
}

TEST_CASE("input sampler reproduces the law's moments") {
    const double p = fob::dbm_to_watt(5.0);
    const auto law = fob::rpc::lower_bound(p, kD).second;
    const std::size_t n = 400000;
    const auto s = fob::rpc::sample_input(law, n, 42);
    REQUIRE(s.size() == n);
    double mean = 0.0;
    for (double v : s) mean += v;
    mean /= double(n);
    // mixture variance is below (3/lambda)^2; allow five sigma
    CHECK(std::abs(mean - p) < 5.0 * 3.0 / (law.lambda * std::sqrt(double(n))));

    const auto again = fob::rpc::sample_input(law, n, 42);
    CHECK(s == again);  // seeded determinism
}

TEST_CASE("channel simulation has the composed output power") {
    const double p = fob::dbm_to_watt(0.0);
    const std::size_t n = 200000;
    const std::vector<std::complex<double>> x(n, std::complex<double>(std::sqrt(p), 0.0));
    const auto y = fob::rpc::simulate(x, kD, 9);
    double m2 = 0.0;
    for (const auto& z : y) m2 += std::norm(z);
    m2 /= double(n);
    const double expect = fob::g_map(p, kD.eta) + kD.noise_power_w;
    CHECK(m2 == doctest::Approx(expect).epsilon(0.01));
}

TEST_CASE("exact mutual information sits inside the bounds") {
    for (double dbm : {-20.0, 5.0}) {
        const double p = fob::dbm_to_watt(dbm);
        const double lb = fob::rpc::lower_bound(p, kD).first;
        const double ub = fob::rpc::upper_bound(p, kD).bits;
        const double mi = fob::rpc::exact_mi(p, kD);
        CHECK(lb <= mi + 1e-6);
        CHECK(mi <= ub + 1e-6);
    }
}

TEST_CASE("asymptote constants bracket the shifted bounds") {
    const auto [lower_c, upper_c] = fob::rpc::prelog_constants(kD);
    CHECK(lower_c == doctest::Approx(43.03).epsilon(2e-3));
    CHECK(upper_c == doctest::Approx(44.90).epsilon(2e-3));
    CHECK(upper_c - lower_c == doctest::Approx(std::log2(27.0 / std::exp(2.0))).epsilon(1e-9));
}

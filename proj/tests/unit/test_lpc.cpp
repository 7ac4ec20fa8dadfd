#include <cmath>
#include <complex>

#include <doctest.h>

#include "fob/lpc.hpp"
#include "fob/params.hpp"
#include "fob/rpc.hpp"

namespace {

const fob::DiscreteChannelParams kD = fob::derive_discrete(fob::PhysicalParams{});

}  // namespace

TEST_CASE("capacity is the AWGN formula at any nonlinearity") {
    for (double dbm : {-35.0, 0.0, 50.0}) {
        const double p = fob::dbm_to_watt(dbm);
        const double awgn = std::log2(1.0 + p / kD.noise_power_w);
        CHECK(fob::lpc::capacity(p, kD) == doctest::Approx(awgn).epsilon(1e-14));
        fob::DiscreteChannelParams other = kD;
        other.eta *= 17.0;  // the rotation never changes the capacity
        CHECK(fob::lpc::capacity(p, other) == doctest::Approx(awgn).epsilon(1e-14));
    }
}

TEST_CASE("simulation preserves the input power plus noise") {
    const double p = fob::dbm_to_watt(3.0);
    const std::size_t n = 200000;
    const std::vector<std::complex<double>> x(n, std::complex<double>(std::sqrt(p), 0.0));
    const auto y = fob::lpc::simulate(x, kD, 5);
    double m2 = 0.0;
    for (const auto& z : y) m2 += std::norm(z);
    m2 /= double(n);
    CHECK(m2 == doctest::Approx(p + kD.noise_power_w).epsilon(0.01));
}

TEST_CASE("rotation is a deterministic phase shift of the noiseless input") {
    const double p = fob::dbm_to_watt(0.0);
    fob::DiscreteChannelParams noiseless = kD;
    // tiny noise so the rotation dominates; exact zero noise is not a channel
    noiseless.noise_power_w = 1e-30;
    const std::vector<std::complex<double>> x{std::complex<double>(std::sqrt(p), 0.0)};
    const auto y = fob::lpc::simulate(x, noiseless, 1);
    const double expect = kD.eta * p;
    CHECK(std::arg(y[0]) == doctest::Approx(std::remainder(expect, 2.0 * M_PI)).epsilon(1e-5));
    CHECK(std::abs(y[0]) == doctest::Approx(std::sqrt(p)).epsilon(1e-6));
}

TEST_CASE("linear limit makes the perturbative channels identical per sample") {
    fob::DiscreteChannelParams lin = kD;
    lin.eta = 0.0;
    const double p = fob::dbm_to_watt(-5.0);
    const std::vector<std::complex<double>> x(64, std::complex<double>(std::sqrt(p), 0.2));
    const auto a = fob::rpc::simulate(x, lin, 77);
    const auto b = fob::lpc::simulate(x, lin, 77);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(std::abs(a[i] - b[i]) < 1e-15);
    }
}

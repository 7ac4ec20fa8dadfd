#include <cmath>
#include <complex>

#include <doctest.h>

#include "fob/mnc.hpp"
#include "fob/noncentral.hpp"
#include "fob/params.hpp"
#include "fob/quadrature.hpp"

using cplx = std::complex<double>;

namespace {

const fob::DiscreteChannelParams kD = fob::derive_discrete(fob::PhysicalParams{});
const fob::mnc::MncPdfParams kP = fob::mnc::make_pdf_params(kD);

double theta_marginal(double r, double r0, const fob::mnc::MncPdfParams& p, int n = 512) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double th = -M_PI + 2.0 * M_PI * i / n;
        acc += fob::mnc::conditional_pdf(r, th, r0, 0.0, p) * (2.0 * M_PI / n);
    }
    return acc;
}

}  // namespace

TEST_CASE("fourier coefficients match high precision references") {
    const double rt = std::sqrt(kD.noise_power_w);
    struct Ref {
        int m;
        double r_mult, r0_mult, re, im;
    };
    // computed independently from the coefficient definition at 40 digits
    const Ref refs[] = {
        {1, 1.0, 1.0, 158.49591959878856, 5.6599979888224452},
        {3, 1.2, 1.0, 31.056998786471503, 4.6618051977451574},
        {10, 0.8, 1.0, 2.6021190582916249e-6, 2.4151827283541380e-6},
        {2, 1.0, 20.0, 5.7329052947358329e-156, 3.5702690184932844e-156},
    };
    for (const Ref& ref : refs) {
        const fob::ComplexLog lc =
            fob::mnc::log_fourier_coeff(ref.m, ref.r_mult * rt, ref.r0_mult * rt, kP);
        REQUIRE_FALSE(lc.log_of_zero);
        const cplx expect(ref.re, ref.im);
        const cplx got = std::exp(lc.value);
        CHECK(std::abs(got - expect) <= 1e-10 * std::abs(expect));
    }
}

TEST_CASE("conditional pdf normalizes over the plane") {
    fob::QuadratureSpec spec;
    for (double ratio : {0.1, 1.0, 10.0}) {
        const double r0 = std::sqrt(ratio * kD.noise_power_w);
        auto f = [&](double r) { return theta_marginal(r, r0, kP, 256); };
        const auto bp = fob::rician_breakpoints(r0, kD.noise_power_w, spec);
        CHECK(fob::integrate(f, bp, spec).value == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("theta marginal equals the rician amplitude density") {
    for (double ratio : {0.5, 2.0}) {
        const double r0 = std::sqrt(ratio * kD.noise_power_w);
        const double r = r0 * 1.1;
        CHECK(theta_marginal(r, r0, kP) ==
              doctest::Approx(fob::mnc::amplitude_pdf(r, r0, kP)).epsilon(1e-8));
    }
}

TEST_CASE("zero nonlinearity reduces to the polar gaussian") {
    fob::DiscreteChannelParams lin = kD;
    lin.eta = 0.0;
    const auto lp = fob::mnc::make_pdf_params(lin);
    const double pn = lin.noise_power_w;
    const double r0 = std::sqrt(pn);
    for (double rm : {0.4, 1.0, 1.9}) {
        for (double th : {0.0, 0.8, -2.0}) {
            const double r = rm * r0;
            const double expect =
                r / (M_PI * pn) * std::exp(-(r * r + r0 * r0 - 2.0 * r * r0 * std::cos(th)) / pn);
            CHECK(fob::mnc::conditional_pdf(r, th, r0, 0.0, lp) ==
                  doctest::Approx(expect).epsilon(1e-6));
        }
    }
}

TEST_CASE("pdf depends only on the phase difference") {
    const double r0 = std::sqrt(kD.noise_power_w);
    const double r = 1.3 * r0;
    for (double shift : {0.6, -1.9}) {
        CHECK(fob::mnc::conditional_pdf(r, 0.4 + shift, r0, shift, kP) ==
              doctest::Approx(fob::mnc::conditional_pdf(r, 0.4, r0, 0.0, kP)).epsilon(1e-12));
    }
}

TEST_CASE("pdf is nonnegative on a grid") {
    const double r0 = std::sqrt(10.0 * kD.noise_power_w);
    for (int i = 1; i <= 20; ++i) {
        for (int j = 0; j < 16; ++j) {
            const double r = r0 * (0.1 * i);
            const double th = -M_PI + 2.0 * M_PI * j / 16;
            CHECK(fob::mnc::conditional_pdf(r, th, r0, 0.0, kP) >= 0.0);
        }
    }
}

TEST_CASE("phase entropy is bounded by the uniform law") {
    const double cap = std::log(2.0 * M_PI);
    for (double ratio : {0.3, 1.0, 8.0}) {
        const double r0 = std::sqrt(ratio * kD.noise_power_w);
        const double h = fob::mnc::phase_entropy_at(r0, r0, kP);
        CHECK(std::isfinite(h));
        CHECK(h <= cap + 1e-9);
    }
    CHECK(fob::mnc::phase_entropy_at(std::sqrt(kD.noise_power_w), 1e-14, kP) ==
          doctest::Approx(cap).epsilon(1e-8));
}

TEST_CASE("chi input law normalizes with the requested power") {
    fob::QuadratureSpec spec;
    for (double k : {0.5, 1.0, 2.0}) {
        const fob::mnc::ChiInputLaw law{k, 2.5e-4};
        const double scale = std::sqrt(law.power_w);
        auto f = [&](double r0) { return std::exp(fob::mnc::chi_log_pdf(r0, law)); };
        auto f2 = [&](double r0) { return r0 * r0 * f(r0); };
        CHECK(fob::integrate_half_line(f, scale, spec).value == doctest::Approx(1.0).epsilon(1e-7));
        CHECK(fob::integrate_half_line(f2, scale, spec).value ==
              doctest::Approx(law.power_w).epsilon(1e-7));
    }
    // k = 2 is the rayleigh law
    const fob::mnc::ChiInputLaw r2{2.0, 1e-3};
    const double r = 0.02;
    const double rayleigh = std::log(2.0 * r / r2.power_w) - r * r / r2.power_w;
    CHECK(fob::mnc::chi_log_pdf(r, r2) == doctest::Approx(rayleigh).epsilon(1e-12));
}

TEST_CASE("split step oracle is seeded deterministic with correct power") {
    const double p = fob::dbm_to_watt(-10.0);
    const std::size_t n = 50000;
    const std::vector<cplx> x(n, cplx(std::sqrt(p), 0.0));
    const auto a = fob::mnc::simulate_ssf(x, 100, kD, 3);
    const auto b = fob::mnc::simulate_ssf(x, 100, kD, 3);
    CHECK(a == b);
    double m2 = 0.0;
    for (const auto& z : a) m2 += std::norm(z);
    m2 /= double(n);
    // rotations preserve magnitude; total added noise power is P_N
    CHECK(m2 == doctest::Approx(p + kD.noise_power_w).epsilon(0.02));
}

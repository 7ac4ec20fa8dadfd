#include <cmath>
#include <complex>

#include <benchmark/benchmark.h>

#include "fob/bessel.hpp"
#include "fob/cubic.hpp"
#include "fob/mnc.hpp"
#include "fob/params.hpp"
#include "fob/quadrature.hpp"
#include "fob/rpc.hpp"

namespace {

const fob::DiscreteChannelParams kD = fob::derive_discrete(fob::PhysicalParams{});

void BM_QInverse(benchmark::State& state) {
    double v = 1e-3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fob::q_inverse(v, kD.eta));
        v = (v < 1.0) ? v * 1.0001 : 1e-3;
    }
}
BENCHMARK(BM_QInverse);

void BM_BesselScaledReal(benchmark::State& state) {
    const double x = static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(fob::log_bessel_i_scaled_real(0, x));
    }
}
BENCHMARK(BM_BesselScaledReal)->Arg(5)->Arg(100)->Arg(100000);

void BM_BesselScaledComplex(benchmark::State& state) {
    const std::complex<double> z = std::polar(static_cast<double>(state.range(0)), 0.6);
    const int m = static_cast<int>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(fob::log_bessel_i_scaled(m, z));
    }
}
BENCHMARK(BM_BesselScaledComplex)->Args({20, 3})->Args({2000, 3})->Args({20, 40});

void BM_AdaptiveQuadrature(benchmark::State& state) {
    auto f = [](double x) { return std::exp(-x) * std::cos(40.0 * x); };
    for (auto _ : state) {
        benchmark::DoNotOptimize(fob::integrate(f, 0.0, 20.0));
    }
}
BENCHMARK(BM_AdaptiveQuadrature);

void BM_RpcLowerBound(benchmark::State& state) {
    const double p = fob::dbm_to_watt(static_cast<double>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(fob::rpc::lower_bound(p, kD));
    }
}
BENCHMARK(BM_RpcLowerBound)->Arg(-20)->Arg(0)->Arg(40);

void BM_MncFourierStack(benchmark::State& state) {
    const fob::mnc::MncPdfParams mp = fob::mnc::make_pdf_params(kD);
    const double r0 = std::sqrt(kD.noise_power_w) * static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(fob::mnc::fourier_coeffs(1.1 * r0, r0, mp));
    }
}
BENCHMARK(BM_MncFourierStack)->Arg(1)->Arg(10);

void BM_MncPhaseEntropy(benchmark::State& state) {
    const fob::mnc::MncPdfParams mp = fob::mnc::make_pdf_params(kD);
    const double r0 = std::sqrt(kD.noise_power_w);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fob::mnc::phase_entropy_at(r0, r0, mp));
    }
}
BENCHMARK(BM_MncPhaseEntropy);

}  // namespace

BENCHMARK_MAIN();

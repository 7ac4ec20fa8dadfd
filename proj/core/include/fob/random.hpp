#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace fob {

/// n i.i.d. draws from the circular complex Gaussian with total variance
/// `variance_w` (so each quadrature has variance variance_w/2).
inline std::vector<std::complex<double>> circular_gaussian(std::size_t n, double variance_w,
                                                           std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, std::sqrt(variance_w / 2.0));
    std::vector<std::complex<double>> out(n);
    for (auto& z : out) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        z = {re, im};
    }
    return out;
}

}  // namespace fob

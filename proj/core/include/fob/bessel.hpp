#pragma once

#include <complex>

namespace fob {

/// Carrier for a complex logarithm (log C_m, log I_m). A "log of zero"
/// marker stands in for log 0 = -inf.
struct ComplexLog {
    std::complex<double> value{0.0, 0.0};
    bool log_of_zero = false;
};

/// log I_m(z) for non-negative integer order m and complex argument.
/// Power series for small |z|, large-argument expansion beyond an
/// m-dependent switch. Both paths are assembled in the log domain.
ComplexLog log_bessel_i(int m, std::complex<double> z, int m_limit = 200);

/// log(I_m(z) * e^{-z}). Finite (no overflow) for arbitrarily large
/// arguments in the right half plane; the unscaled value is this plus z.
ComplexLog log_bessel_i_scaled(int m, std::complex<double> z, int m_limit = 200);

/// Real-argument conveniences, x >= 0. The scaled form never overflows
/// for x up to 1e6 and beyond.
double log_bessel_i_real(int m, double x);
double log_bessel_i_scaled_real(int m, double x);

namespace detail {
// Exposed for the branch-consistency checks.
std::complex<double> log_bessel_i_series(int m, std::complex<double> z);
std::complex<double> log_bessel_i_asymptotic(int m, std::complex<double> z);
}  // namespace detail

}  // namespace fob

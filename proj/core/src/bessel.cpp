#include "fob/bessel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fob {

namespace {

using cplx = std::complex<double>;

// log(e^a + e^b) for complex a, b.
cplx logsumexp(cplx a, cplx b) {
    if (a.real() < b.real()) std::swap(a, b);
    return a + std::log(1.0 + std::exp(b - a));
}

}  // namespace

namespace detail {

std::complex<double> log_bessel_i_series(int m, std::complex<double> z) {
    // I_m(z) = (z/2)^m sum_k (z^2/4)^k / (k! (m+k)!), accumulated with a
    // running scale so the partial sum never overflows.
    const cplx z24 = z * z / 4.0;
    cplx term(1.0, 0.0);
    cplx sum(1.0, 0.0);
    double log_offset = 0.0;
    const double zabs = std::abs(z);
    const long max_terms = 4000000;
    for (long k = 0;; ++k) {
        term *= z24 / ((k + 1.0) * (m + k + 1.0));
        sum += term;
        const double asum = std::abs(sum);
        if (std::abs(term) < 1e-18 * asum && 2.0 * (k + 1) > zabs) break;
        if (asum > 1e280 || std::abs(term) > 1e280) {
            sum *= 1e-280;
            term *= 1e-280;
            log_offset += 280.0 * std::log(10.0);
        }
        if (k >= max_terms) throw std::runtime_error("log_bessel_i: series did not converge");
    }
    return double(m) * std::log(z / 2.0) - std::lgamma(m + 1.0) + std::log(sum) + log_offset;
}

std::complex<double> log_bessel_i_asymptotic(int m, std::complex<double> z) {
    // DLMF 10.40.5 with both exponential branches kept; returns the
    // scaled value log(I_m(z) e^{-z}).
    const double mu = 4.0 * double(m) * double(m);
    cplx s1(1.0, 0.0), s2(1.0, 0.0);
    double a = 1.0;       // a_k(m) numerator product / (k! 8^k)
    cplx zp(1.0, 0.0);    // z^k
    double prev = std::numeric_limits<double>::max();
    for (int k = 0; k < 40; ++k) {
        const double odd = 2.0 * k + 1.0;
        a *= (mu - odd * odd) / (8.0 * (k + 1.0));
        zp *= z;
        const cplx t = a / zp;
        const double at = std::abs(t);
        if (at >= prev) break;  // divergent tail reached
        s1 += ((k % 2 == 0) ? -t : t);  // (-1)^{k+1} for index k+1
        s2 += t;
        prev = at;
        if (at < 1e-18) break;
    }
    const cplx lead = -0.5 * std::log(2.0 * M_PI * z);
    const cplx b1 = std::log(s1);
    const cplx b2 = -2.0 * z + cplx(0.0, M_PI * (m + 0.5)) + std::log(s2);
    return lead + logsumexp(b1, b2);
}

}  // namespace detail

ComplexLog log_bessel_i_scaled(int m, std::complex<double> z, int m_limit) {
    if (m < 0) throw std::invalid_argument("log_bessel_i: order must be >= 0");
    if (m > m_limit) throw std::invalid_argument("log_bessel_i: order exceeds limit");

    if (z == cplx(0.0, 0.0)) {
        ComplexLog r;
        if (m == 0) return r;  // log 1
        r.log_of_zero = true;
        return r;
    }

    // I_m(-z) = (-1)^m I_m(z); fold into the right half plane
    cplx extra(0.0, 0.0);
    if (z.real() < 0.0) {
        z = -z;
        // I_m(-z) e^{+z} = (-1)^m I_m(z) e^{z} = e^{j pi m} [I_m(z) e^{-z}] e^{2z}
        extra = cplx(0.0, M_PI * m) + 2.0 * z;
    }

    const double zabs = std::abs(z);
    ComplexLog r;
    if (zabs <= std::max(30.0, double(m) * double(m))) {
        r.value = detail::log_bessel_i_series(m, z) - z + extra;
    } else {
        r.value = detail::log_bessel_i_asymptotic(m, z) + extra;
    }
    return r;
}

ComplexLog log_bessel_i(int m, std::complex<double> z, int m_limit) {
    ComplexLog r = log_bessel_i_scaled(m, z, m_limit);
    if (!r.log_of_zero) r.value += z;
    return r;
}

double log_bessel_i_real(int m, double x) {
    ComplexLog r = log_bessel_i(m, cplx(x, 0.0), std::max(m, 200));
    if (r.log_of_zero) return -std::numeric_limits<double>::infinity();
    return r.value.real();
}

double log_bessel_i_scaled_real(int m, double x) {
    ComplexLog r = log_bessel_i_scaled(m, cplx(x, 0.0), std::max(m, 200));
    if (r.log_of_zero) return -std::numeric_limits<double>::infinity();
    return r.value.real();
}

}  // namespace fob

#include "fob/noncentral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fob/bessel.hpp"
#include "fob/cubic.hpp"

namespace fob {

double log_rician(double r, double r0, double noise_power_w) {
    const double pn = noise_power_w;
    if (r < 0.0) throw std::invalid_argument("log_rician: r must be >= 0");
    if (r == 0.0) return -std::numeric_limits<double>::infinity();
    const double d = r - r0;
    // 2rr0/P_N can reach 1e20+; exp and Bessel are combined so only the
    // O((r-r0)^2/P_N) part survives
    return std::log(2.0 * r / pn) - d * d / pn + log_bessel_i_scaled_real(0, 2.0 * r * r0 / pn);
}

std::vector<double> rician_breakpoints(double r0, double noise_power_w,
                                       const QuadratureSpec& spec) {
    const double sigma = std::sqrt(noise_power_w / 2.0);
    const double lo = std::max(0.0, r0 - spec.tail_cutoff_sigmas * sigma);
    const double hi = r0 + spec.tail_cutoff_sigmas * sigma;
    std::vector<double> bp;
    bp.push_back(lo);
    if (r0 > lo && r0 < hi) {
        if (lo == 0.0 && r0 > 8.0 * sigma) bp.push_back(r0 - 8.0 * sigma);
        bp.push_back(r0);
    }
    bp.push_back(hi);
    return bp;
}

QuadResult noncentral_expectation(const RealFn& f, double s, const DiscreteChannelParams& params,
                                  const QuadratureSpec& spec) {
    if (!(s >= 0.0)) throw std::invalid_argument("noncentral_expectation: s must be >= 0");
    const double t = g_map(s, params.eta);
    const double a = std::sqrt(t);
    const double pn = params.noise_power_w;
    auto integrand = [&](double r) {
        const double lw = log_rician(r, a, pn);
        if (lw == -std::numeric_limits<double>::infinity()) return 0.0;
        return f(r * r) * std::exp(lw);
    };
    return integrate(integrand, rician_breakpoints(a, pn, spec), spec);
}

}  // namespace fob

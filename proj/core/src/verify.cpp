#include "fob/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <thread>
#include <vector>

#include "fob/bessel.hpp"
#include "fob/cubic.hpp"
#include "fob/lpc.hpp"
#include "fob/mnc.hpp"
#include "fob/noncentral.hpp"
#include "fob/optimize.hpp"
#include "fob/quadrature.hpp"
#include "fob/random.hpp"
#include "fob/rpc.hpp"

namespace fob {
namespace verify {

namespace {

struct Checker {
    std::vector<CheckResult>* out;

    void run(const std::string& name, const std::function<std::string()>& body) {
        CheckResult r;
        r.name = name;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            r.detail = body();   // empty string means pass
            r.pass = r.detail.empty();
            if (r.pass) r.detail = "ok";
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        const auto t1 = std::chrono::steady_clock::now();
        r.seconds = std::chrono::duration<double>(t1 - t0).count();
        out->push_back(r);
    }
};

std::string fail(const char* fmt, double a, double b) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), fmt, a, b);
    return buf;
}

bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

std::string check_units() {
    for (double dbm = -40.0; dbm <= 60.0; dbm += 7.0) {
        const double back = watt_to_dbm(dbm_to_watt(dbm));
        if (!close_rel(back, dbm, 1e-12)) return fail("dBm round trip %g -> %g", dbm, back);
    }
    if (!close_rel(dbm_to_watt(0.0), 1e-3, 1e-12)) return "0 dBm is not 1 mW";
    if (!close_rel(nats_to_bits(std::log(2.0)), 1.0, 1e-12)) return "nats_to_bits(ln 2) != 1";
    return "";
}

std::string check_derived(const PhysicalParams& phys) {
    const DiscreteChannelParams d = derive_discrete(phys);
    const double eta_expect = phys.nonlinearity * phys.length_km;  // (W km)^-1 * km
    if (!close_rel(d.eta, eta_expect, 1e-12)) return fail("eta %g != gamma*L %g", d.eta, eta_expect);
    if (!(d.noise_power_w > 0.0)) return "noise power not positive";

    // both derived constants are linear in the fiber length
    PhysicalParams twice = phys;
    twice.length_km *= 2.0;
    const DiscreteChannelParams d2 = derive_discrete(twice);
    if (!close_rel(d2.eta, 2.0 * d.eta, 1e-12)) return "eta not linear in length";
    if (!close_rel(d2.noise_power_w, 2.0 * d.noise_power_w, 1e-12)) {
        return "noise power not linear in length";
    }
    return "";
}

std::string check_input_law(const DiscreteChannelParams& d) {
    for (double p_dbm : {-20.0, 0.0, 20.0, 40.0}) {
        const double p = dbm_to_watt(p_dbm);
        const auto [bits, law] = rpc::lower_bound(p, d);
        if (!(bits > 0.0) || !std::isfinite(bits)) return fail("lower bound %g at %g dBm", bits, p_dbm);

        // lambda solves the stationarity cubic exactly
        const CubicCoeffs c{p, -1.0, 6.0 * p * d.eta * d.eta, -18.0 * d.eta * d.eta};
        const double resid = std::abs(c.eval(law.lambda));
        const double l = law.lambda;
        const double scale = std::max({std::abs(c.c3) * l * l * l, std::abs(c.c2) * l * l,
                                       std::abs(c.c1) * l, std::abs(c.c0)});
        if (resid > 1e-9 * std::max(1.0, scale)) return fail("cubic residual %g at %g dBm", resid, p_dbm);

        if (!close_rel(rpc::input_law_mean(law), p, 1e-10)) {
            return fail("law mean != power at %g dBm (mean %g)", p_dbm, rpc::input_law_mean(law));
        }

        // density normalization, by quadrature
        auto f = [&](double s) {
            return law.zeta * (3.0 * law.eta * law.eta * s * s + 1.0) * std::exp(-law.lambda * s);
        };
        // decay scale 3/lambda keeps the s^2 tail inside the cutoff window
        const QuadResult q = integrate_half_line(f, std::max(3.0 / law.lambda, 1e-30));
        if (!close_rel(q.value, 1.0, 1e-7)) return fail("law mass %g at %g dBm", q.value, p_dbm);
    }
    return "";
}

std::string check_q_inverse(const DiscreteChannelParams& d) {
    const double eta = d.eta;
    double prev_q = 0.0, prev_slope = 2.0;
    for (int i = 0; i <= 60; ++i) {
        const double s = std::pow(10.0, -12.0 + 0.25 * i);  // 1e-12 .. 1e3 W
        const double v = g_map(s, eta);
        const double q = q_inverse(v, eta);
        if (!close_rel(q, s, 1e-10)) return fail("q(g(s)) %g != s %g", q, s);
        if (q < prev_q) return "q not monotone";
        // q' = 1/(1 + 3 eta^2 q^2) <= 1 and decreasing
        const double slope = 1.0 / (1.0 + 3.0 * eta * eta * q * q);
        if (slope > prev_slope + 1e-15 || slope > 1.0 + 1e-15) return "q' exceeds 1 or grows";
        prev_q = q;
        prev_slope = slope;
    }
    return "";
}

std::string check_bessel() {
    // tabulated I_0(10) and the scaled form at a huge argument
    const double i0_10 = std::exp(log_bessel_i_real(0, 10.0));
    if (!close_rel(i0_10, 2815.716628466254, 1e-10)) return fail("I0(10) = %g (want %g)", i0_10, 2815.716628466254);
    const double s = log_bessel_i_scaled_real(0, 1e8);
    // I_0(x) e^{-x} ~ 1/sqrt(2 pi x)
    if (!close_rel(s, -0.5 * std::log(2.0 * M_PI * 1e8), 1e-6)) return fail("scaled I0(1e8) %g vs %g", s, -0.5 * std::log(2.0 * M_PI * 1e8));

    // series and asymptotic branches agree in the overlap band; the
    // asymptotic path returns the e^{-z}-scaled log, and imaginary parts
    // are only defined modulo 2 pi
    for (int m : {0, 1, 3, 7}) {
        for (double arg : {0.0, 0.5, 1.0}) {
            const double rad = std::max(32.0, 1.1 * m * m);
            const std::complex<double> z = std::polar(rad, arg);
            const auto a = detail::log_bessel_i_series(m, z);
            const auto b = detail::log_bessel_i_asymptotic(m, z) + z;
            const double dre = std::abs(a.real() - b.real());
            const double dim = std::abs(std::remainder(a.imag() - b.imag(), 2.0 * M_PI));
            // the series path cancels by e^{|z|(1 - cos arg)} off the real axis
            const double tol = std::max(1e-9, 1e-13 * std::exp(rad * (1.0 - std::cos(arg))));
            if (dre + dim > tol) return fail("branch mismatch m, |z|: %g %g", m, rad);
        }
    }
    return "";
}

std::string check_rpc_order(const DiscreteChannelParams& d, const QuadratureSpec& spec) {
    for (double p_dbm : {-15.0, 5.0, 25.0}) {
        const double p = dbm_to_watt(p_dbm);
        const double lb = rpc::lower_bound(p, d).first;
        const double ub = (d.eta > 0.0) ? rpc::upper_bound(p, d, spec).bits
                                        : lpc::capacity(p, d);
        if (lb > ub + 1e-6) return fail("lb %g above ub %g", lb, ub);
        if (d.eta > 0.0) {
            const double ubs = rpc::upper_bound_simple(p, d);
            if (ub > ubs + 1e-6) return fail("optimized ub %g above simple ub %g", ub, ubs);
        }
    }
    return "";
}

std::string check_rpc_two_route(const DiscreteChannelParams& d, const QuadratureSpec& spec) {
    for (double p_dbm : {-10.0, 10.0, 30.0}) {
        const double p = dbm_to_watt(p_dbm);
        const auto law = rpc::lower_bound(p, d).second;
        const double closed = rpc::entropy_w2_closed_form(law);
        const double quad = rpc::entropy_w2_quadrature(law, spec);
        if (!close_rel(closed, quad, 1e-6)) return fail("h(|w|^2) closed %g vs quadrature %g", closed, quad);
    }
    return "";
}

std::string check_linear_limit(const DiscreteChannelParams& d) {
    DiscreteChannelParams lin = d;
    lin.eta = 0.0;
    for (double p_dbm : {-20.0, 0.0, 20.0}) {
        const double p = dbm_to_watt(p_dbm);
        const double awgn = std::log2(1.0 + p / lin.noise_power_w);
        if (!close_rel(lpc::capacity(p, lin), awgn, 1e-12)) return "lpc != AWGN";
        const double lb = rpc::lower_bound(p, lin).first;
        if (std::abs(lb - awgn) > 1e-4) return fail("eta=0 lower bound %g vs AWGN %g", lb, awgn);
    }
    return "";
}

std::string check_mnc_normalization(const DiscreteChannelParams& d, const QuadratureSpec& spec) {
    const mnc::MncPdfParams mp = mnc::make_pdf_params(d);
    const double pn = d.noise_power_w;
    for (double ratio : {0.2, 1.0, 5.0, 25.0}) {
        const double r0 = std::sqrt(ratio * pn);

        // theta-marginal mass: the series terms integrate to zero over the
        // circle, so the joint mass equals the Rician mass
        auto f_r = [&](double r) { return mnc::amplitude_pdf(r, r0, mp); };
        const QuadResult mass = integrate(f_r, rician_breakpoints(r0, pn, spec), spec);
        if (!close_rel(mass.value, 1.0, 1e-7)) return fail("amplitude mass %g at r0^2/P_N %g", mass.value, ratio);

        // joint pdf marginalized over theta on a trapezoid grid recovers f_r
        const double r_test = r0 + 0.5 * std::sqrt(pn / 2.0);
        const int n = 256;
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            const double th = -M_PI + 2.0 * M_PI * i / n;
            acc += mnc::conditional_pdf(r_test, th, r0, 0.0, mp) * (2.0 * M_PI / n);
        }
        if (!close_rel(acc, f_r(r_test), 1e-7)) return fail("theta marginal %g vs f_r %g", acc, f_r(r_test));
    }
    return "";
}

std::string check_mnc_phase_entropy(const DiscreteChannelParams& d) {
    const mnc::MncPdfParams mp = mnc::make_pdf_params(d);
    const double pn = d.noise_power_w;
    const double cap = std::log(2.0 * M_PI);
    for (double ratio : {0.5, 1.0, 10.0}) {
        const double r0 = std::sqrt(ratio * pn);
        const double h = mnc::phase_entropy_at(r0, r0, mp);
        if (h > cap + 1e-9) return fail("h_theta %g above log 2pi %g", h, cap);
        if (!std::isfinite(h)) return "h_theta not finite";
    }
    // vanishing conditioning amplitude: phase is uniform
    const double h0 = mnc::phase_entropy_at(std::sqrt(pn), 1e-12, mp);
    if (std::abs(h0 - cap) > 1e-6) return fail("h_theta at r0=0 is %g, want %g", h0, cap);
    return "";
}

std::string check_mnc_order(const DiscreteChannelParams& d, const QuadratureSpec& spec) {
    const mnc::MncPdfParams mp = mnc::make_pdf_params(d);
    const double p = dbm_to_watt(0.0);
    const double lb = mnc::max_chi_lower_bound(p, mp, spec).bits;
    const double ub = mnc::upper_bound(p, mp, spec).bits;
    if (lb > ub + 1e-3) return fail("mnc lb %g above ub %g", lb, ub);
    if (ub > std::log2(1.0 + p / d.noise_power_w) + 1e-6) {
        return fail("mnc ub %g above AWGN %g", ub, std::log2(1.0 + p / d.noise_power_w));
    }
    return "";
}

std::string check_ssf_tv(const DiscreteChannelParams& d, unsigned threads) {
    const double r0 = std::sqrt(d.noise_power_w);
    const double tv = ssf_pdf_tv_distance(d, r0, 2000, 1000000, 20260824, 64, threads);
    if (!(tv <= 0.05)) return fail("split-step TV distance %g (limit %g)", tv, 0.05);
    return "";
}

std::string check_rpc_mc(const DiscreteChannelParams& d, const QuadratureSpec& spec) {
    const double p = dbm_to_watt(10.0);
    const auto law = rpc::lower_bound(p, d).second;
    const std::size_t n = 10000000;
    const auto s = rpc::sample_input(law, n, 97);
    double mean = 0.0, mean_g = 0.0;
    for (double v : s) {
        mean += v;
        mean_g += g_map(v, d.eta);
    }
    mean /= n;
    mean_g /= n;
    if (!close_rel(mean, p, 5e-3)) return fail("MC input mean %g vs %g", mean, p);

    // E[g(s)] by quadrature against the density
    auto f = [&](double x) {
        return g_map(x, d.eta) * law.zeta * (3.0 * law.eta * law.eta * x * x + 1.0) *
               std::exp(-law.lambda * x);
    };
    // the integrand decays like s^5 e^{-lambda s}; inflate the decay scale so
    // the 12-scale window keeps the truncated tail mass below tolerance
    const QuadResult q = integrate_half_line(f, 3.0 / law.lambda, spec);
    if (!close_rel(mean_g, q.value, 1e-2)) return fail("MC E[g(s)] %g vs quadrature %g", mean_g, q.value);
    return "";
}

std::string check_noncentral_mc(const DiscreteChannelParams& d, const QuadratureSpec& spec) {
    const double s = dbm_to_watt(5.0);
    auto f = [](double v) { return std::log(v + 1e-300); };
    const double exact = noncentral_expectation(f, s, d, spec).value;

    const std::size_t n = 2000000;
    const double amp = std::sqrt(g_map(s, d.eta));
    const auto noise = circular_gaussian(n, d.noise_power_w, 131);
    double acc = 0.0, acc2 = 0.0;
    for (const auto& z : noise) {
        const double v = std::norm(std::complex<double>(amp, 0.0) + z);
        const double t = f(v);
        acc += t;
        acc2 += t * t;
    }
    const double mc = acc / n;
    const double sd = std::sqrt(std::max(0.0, acc2 / n - mc * mc) / n);
    if (std::abs(mc - exact) > std::max(6.0 * sd, 1e-9 * std::abs(exact))) {
        return fail("MC E[log|y|^2] %g vs quadrature %g", mc, exact);
    }
    return "";
}

}  // namespace

double ssf_pdf_tv_distance(const DiscreteChannelParams& d, double r0, int segments,
                           std::size_t samples, std::uint64_t seed, int bins, unsigned threads) {
    const double pn = d.noise_power_w;
    const double sigma_r = std::sqrt(pn / 2.0);
    const double r_lo = std::max(0.0, r0 - 12.0 * sigma_r);
    const double r_hi = r0 + 12.0 * sigma_r;
    const double dr = (r_hi - r_lo) / bins;
    const double dth = 2.0 * M_PI / bins;

    // empirical histogram of (|y|, arg y), theta0 = 0
    std::vector<double> emp(static_cast<std::size_t>(bins) * bins, 0.0);
    double emp_outside = 0.0;
    const unsigned nthreads = std::max(1u, threads);
    const std::size_t chunk = (samples + nthreads - 1) / nthreads;
    std::vector<std::vector<double>> parts(nthreads, emp);
    std::vector<double> parts_outside(nthreads, 0.0);
    auto worker = [&](unsigned t) {
        const std::size_t n = std::min(chunk, samples - std::min(samples, t * chunk));
        if (n == 0) return;
        const std::vector<std::complex<double>> x(n, std::complex<double>(r0, 0.0));
        const auto y = mnc::simulate_ssf(x, segments, d, seed + t);
        for (const auto& z : y) {
            const double r = std::abs(z);
            const double th = std::arg(z);
            const int ir = static_cast<int>(std::floor((r - r_lo) / dr));
            const int it = static_cast<int>(std::floor((th + M_PI) / dth));
            if (ir < 0 || ir >= bins) {
                parts_outside[t] += 1.0;
            } else {
                parts[t][static_cast<std::size_t>(ir) * bins + std::min(it, bins - 1)] += 1.0;
            }
        }
    };
    if (nthreads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker, t);
        for (auto& t : pool) t.join();
    }
    for (unsigned t = 0; t < nthreads; ++t) {
        emp_outside += parts_outside[t] / samples;
        for (std::size_t i = 0; i < emp.size(); ++i) emp[i] += parts[t][i] / samples;
    }

    // model mass per bin: 2x2 midpoint subsampling. The Fourier stack is
    // shared across the theta row at fixed r.
    const mnc::MncPdfParams mp = mnc::make_pdf_params(d);
    std::vector<double> model(emp.size(), 0.0);
    for (int ir = 0; ir < bins; ++ir) {
        for (int sub = 0; sub < 2; ++sub) {
            const double r = r_lo + (ir + 0.25 + 0.5 * sub) * dr;
            const double f0 = mnc::amplitude_pdf(r, r0, mp) / (2.0 * M_PI);
            const auto cm = mnc::fourier_coeffs(r, r0, mp);
            for (int it = 0; it < bins; ++it) {
                for (int st = 0; st < 2; ++st) {
                    const double th = -M_PI + (it + 0.25 + 0.5 * st) * dth;
                    double f = f0;
                    for (std::size_t m = 0; m < cm.size(); ++m) {
                        const double phase = -static_cast<double>(m + 1) * th;
                        f += (cm[m].real() * std::cos(phase) - cm[m].imag() * std::sin(phase)) / M_PI;
                    }
                    model[static_cast<std::size_t>(ir) * bins + it] += std::max(0.0, f) * dr * dth / 4.0;
                }
            }
        }
    }
    double model_mass = 0.0;
    for (double v : model) model_mass += v;
    const double model_outside = std::max(0.0, 1.0 - model_mass);

    double tv = 0.5 * std::abs(emp_outside - model_outside);
    for (std::size_t i = 0; i < emp.size(); ++i) tv += 0.5 * std::abs(emp[i] - model[i]);
    return tv;
}

std::vector<CheckResult> run(const PhysicalParams& phys, bool full, unsigned threads) {
    phys.validate();
    const DiscreteChannelParams d = derive_discrete(phys);
    const QuadratureSpec spec;

    std::vector<CheckResult> results;
    Checker c{&results};

    c.run("units-roundtrip", check_units);
    c.run("derived-params", [&] { return check_derived(phys); });
    c.run("rpc-input-law", [&] { return check_input_law(d); });
    c.run("q-inverse", [&] { return check_q_inverse(d); });
    c.run("bessel-branches", check_bessel);
    c.run("rpc-bound-order", [&] { return check_rpc_order(d, spec); });
    c.run("rpc-entropy-two-route", [&] { return check_rpc_two_route(d, spec); });
    c.run("linear-limit", [&] { return check_linear_limit(d); });
    c.run("mnc-pdf-normalization", [&] { return check_mnc_normalization(d, spec); });
    c.run("mnc-phase-entropy", [&] { return check_mnc_phase_entropy(d); });

    if (full) {
        c.run("mnc-bound-order", [&] { return check_mnc_order(d, spec); });
        c.run("rpc-monte-carlo", [&] { return check_rpc_mc(d, spec); });
        c.run("noncentral-monte-carlo", [&] { return check_noncentral_mc(d, spec); });
        c.run("split-step-pdf", [&] { return check_ssf_tv(d, threads); });
    }
    return results;
}

}  // namespace verify
}  // namespace fob

#include "fob/mnc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "fob/noncentral.hpp"
#include "fob/optimize.hpp"
#include "fob/random.hpp"

namespace fob {
namespace mnc {

namespace {

constexpr double kLn2 = 0.6931471805599453;
constexpr double kTwoPi = 2.0 * M_PI;
using cplx = std::complex<double>;

// prepend geometric panels so integrands with structure near zero are seen
std::vector<double> geometric_panels(std::vector<double> bp, int levels = 24) {
    if (bp.empty() || bp.front() != 0.0 || bp.size() < 2) return bp;
    std::vector<double> out{0.0};
    const double first = bp[1];
    for (int i = levels; i >= 1; --i) out.push_back(first * std::pow(2.0, -i));
    out.insert(out.end(), bp.begin() + 1, bp.end());
    return out;
}

}  // namespace

MncPdfParams make_pdf_params(const DiscreteChannelParams& d, double truncation_tol, int m_max) {
    return {d.eta, d.noise_power_w, truncation_tol, m_max};
}

double log_amplitude_pdf(double r, double r0, const MncPdfParams& p) {
    return log_rician(r, r0, p.noise_power_w);
}

double amplitude_pdf(double r, double r0, const MncPdfParams& p) {
    const double l = log_amplitude_pdf(r, r0, p);
    return (l > -700.0) ? std::exp(l) : 0.0;
}

ComplexLog log_fourier_coeff(int m, double r, double r0, const MncPdfParams& p) {
    if (m < 1) throw std::invalid_argument("log_fourier_coeff: m must be >= 1");
    if (r < 0.0 || r0 < 0.0) throw std::invalid_argument("log_fourier_coeff: negative amplitude");
    const double pn = p.noise_power_w;

    ComplexLog out;
    if (r == 0.0 || r0 == 0.0) {
        out.log_of_zero = true;  // I_m(0) = 0 for m >= 1
        return out;
    }

    // x_m^2 = 2 j m eta r0^2 P_N / (2 r0^2 + P_N); principal branch of the root
    const cplx x2(0.0, 2.0 * m * p.eta * r0 * r0 * pn / (2.0 * r0 * r0 + pn));
    const cplx x = std::sqrt(x2);

    // x / sin x, series near zero
    cplx x_over_sin;
    if (std::abs(x) < 1e-4) {
        x_over_sin = 1.0 / (1.0 - x2 / 6.0 + x2 * x2 / 120.0);
    } else {
        x_over_sin = x / std::sin(x);
    }
    const cplx nu = x_over_sin / pn;

    const cplx cx = std::cos(x);
    // cos x - 1 = -2 sin^2(x/2), stable for small |x|
    const cplx half = x / 2.0;
    const cplx cxm1 = -2.0 * std::sin(half) * std::sin(half);

    const cplx z = 2.0 * r * r0 * nu;
    ComplexLog im = log_bessel_i_scaled(m, z, p.m_max);
    if (im.log_of_zero) {
        out.log_of_zero = true;
        return out;
    }

    // (r^2 + r0^2) cos x - 2 r r0 = (r - r0)^2 cos x + 2 r r0 (cos x - 1)
    const cplx bracket = (r - r0) * (r - r0) * cx + 2.0 * r * r0 * cxm1;
    out.value = std::log(2.0 * r * nu) - nu * bracket + im.value;
    return out;
}

std::complex<double> fourier_coeff(int m, double r, double r0, const MncPdfParams& p) {
    const ComplexLog lc = log_fourier_coeff(m, r, r0, p);
    if (lc.log_of_zero || lc.value.real() < -700.0) return {0.0, 0.0};
    return std::exp(lc.value);
}

std::vector<std::complex<double>> fourier_coeffs(double r, double r0, const MncPdfParams& p,
                                                 SeriesDiag* diag) {
    std::vector<cplx> coeffs;
    SeriesDiag d;
    double scale = amplitude_pdf(r, r0, p);
    int below = 0;
    for (int m = 1; m <= p.m_max; ++m) {
        const cplx c = fourier_coeff(m, r, r0, p);
        coeffs.push_back(c);
        scale = std::max(scale, std::abs(c));
        if (std::abs(c) < p.truncation_tol * scale) {
            if (++below >= 2) {
                d.m_used = m;
                d.truncated_ok = true;
                if (diag) *diag = d;
                return coeffs;
            }
        } else {
            below = 0;
        }
    }
    d.m_used = p.m_max;
    d.truncated_ok = false;
    if (diag) *diag = d;
    return coeffs;
}

double conditional_pdf(double r, double theta, double r0, double theta0, const MncPdfParams& p,
                       SeriesDiag* diag) {
    if (r < 0.0) throw std::invalid_argument("conditional_pdf: r must be >= 0");
    if (r == 0.0) {
        if (diag) *diag = SeriesDiag{0, true};
        return 0.0;
    }
    const double f0 = amplitude_pdf(r, r0, p);
    const auto coeffs = fourier_coeffs(r, r0, p, diag);
    const double d = theta - theta0;
    double sum = 0.0;
    const cplx rot = std::polar(1.0, -d);
    cplx w(1.0, 0.0);
    for (const cplx& c : coeffs) {
        w *= rot;
        sum += (c * w).real();
    }
    double f = f0 / kTwoPi + sum / M_PI;
    if (f < 0.0) f = 0.0;  // series truncation noise
    return f;
}

double phase_entropy_at(double r, double r0, const MncPdfParams& p) {
    const double f0 = amplitude_pdf(r, r0, p);
    if (f0 < 1e-300) return std::log(kTwoPi);  // no mass here; uniform by convention

    if (p.eta == 0.0) {
        // linear channel: theta | r is von Mises with kappa = 2 r r0 / P_N,
        // whose Fourier stack has no phase-noise decay; use the closed
        // form h = ln(2 pi I0(k)) - k I1(k)/I0(k) instead of the series
        const double kappa = 2.0 * r * r0 / p.noise_power_w;
        const double l0 = log_bessel_i_scaled_real(0, kappa);
        const double l1 = log_bessel_i_scaled_real(1, kappa);
        return std::log(kTwoPi) + l0 + kappa - kappa * std::exp(l1 - l0);
    }

    const auto coeffs = fourier_coeffs(r, r0, p);

    // relative coefficients of the phase conditional: f(theta | r) =
    // 1/2pi + (1/pi) sum Re(c_m e^{-jm theta})
    std::vector<cplx> cm(coeffs.size());
    for (size_t i = 0; i < coeffs.size(); ++i) cm[i] = coeffs[i] / f0;

    double prev = std::numeric_limits<double>::quiet_NaN();
    for (int n = 512; n <= 8192; n *= 2) {
        double hsum = 0.0;
        for (int j = 0; j < n; ++j) {
            const double th = kTwoPi * j / n;
            const cplx rot = std::polar(1.0, -th);
            cplx w(1.0, 0.0);
            double s = 0.0;
            for (const cplx& c : cm) {
                w *= rot;
                s += (c * w).real();
            }
            double f = 1.0 / kTwoPi + s / M_PI;
            if (f > 1e-300) hsum -= f * std::log(f);
        }
        const double h = hsum * kTwoPi / n;
        if (!std::isnan(prev) && std::fabs(h - prev) < 1e-6) return h;
        prev = h;
    }
    return prev;
}

CondEntropies cond_entropies(double r0, const MncPdfParams& p, const QuadratureSpec& spec) {
    if (r0 < 0.0) throw std::invalid_argument("cond_entropies: r0 must be >= 0");
    const double pn = p.noise_power_w;
    CondEntropies out;

    auto bp = geometric_panels(rician_breakpoints(r0, pn, spec));

    QuadratureSpec aspec = spec;
    aspec.abs_tol = std::max(spec.abs_tol, 1e-10);
    aspec.rel_tol = std::max(spec.rel_tol, 1e-9);

    auto density = [&](double r) { return amplitude_pdf(r, r0, p); };

    QuadResult e_log = integrate(
        [&](double r) { return (r > 0.0) ? density(r) * std::log(r) : 0.0; }, bp, aspec);
    out.e_log_r = e_log.value;

    QuadResult h_r = integrate(
        [&](double r) {
            const double lf = log_amplitude_pdf(r, r0, p);
            return (lf > -700.0) ? -std::exp(lf) * lf : 0.0;
        },
        bp, aspec);
    out.h_r = h_r.value;

    QuadratureSpec tspec = spec;
    tspec.rel_tol = std::max(spec.rel_tol, 1e-7);
    tspec.abs_tol = std::max(spec.abs_tol, 1e-8);
    tspec.max_nodes = std::min(spec.max_nodes, 20000);
    QuadResult h_th = integrate(
        [&](double r) {
            const double f = density(r);
            return (f > 1e-300) ? f * phase_entropy_at(r, r0, p) : 0.0;
        },
        bp, tspec);
    out.h_theta = h_th.value;
    out.flagged = !(e_log.converged && h_r.converged && h_th.converged);
    return out;
}

UpperBoundResult upper_bound(double p_w, const MncPdfParams& p, const QuadratureSpec& spec) {
    if (!(p_w > 0.0)) throw std::invalid_argument("mnc::upper_bound: p must be > 0");
    const double pn = p.noise_power_w;

    // r0 keys are quantized to a 2.4e-4 relative grid so the Brent
    // refinements of successive outer iterates share entropy evaluations;
    // the inner max is flat to second order around its argmax.
    std::map<long long, CondEntropies> cache;
    bool any_flag = false;
    auto stats = [&](double r0) -> const CondEntropies& {
        const long long key = std::llround(std::log(r0) * 4096.0);
        auto it = cache.find(key);
        if (it == cache.end()) {
            const double r0q = std::exp(static_cast<double>(key) / 4096.0);
            it = cache.emplace(key, cond_entropies(r0q, p, spec)).first;
            any_flag = any_flag || it->second.flagged;
        }
        return it->second;
    };

    auto g_fn = [&](double lambda, double a, double r0) {
        const CondEntropies& ce = stats(r0);
        return (a - lambda) * (r0 * r0 + pn) / (p_w + pn) + (1.0 - 2.0 * a) * ce.e_log_r -
               ce.h_r - ce.h_theta;
    };

    const double rscale = std::sqrt(p_w + pn);
    double r0_hi = 10.0 * rscale;
    bool grid_flag = false;
    double last_r0 = 0.0;

    auto inner_max = [&](double lambda, double a) {
        for (int attempt = 0; attempt < 2; ++attempt) {
            GridScan scan = log_grid_scan_max([&](double r0) { return g_fn(lambda, a, r0); },
                                              1e-3 * rscale, r0_hi, 32);
            if (scan.on_edge && scan.best_arg > 0.5 * r0_hi) {
                if (attempt == 0) {
                    r0_hi *= 3.0;
                    continue;
                }
                grid_flag = true;
            }
            QuadratureSpec rspec;
            rspec.rel_tol = 1e-4;
            ScalarOpt opt = maximize_scalar([&](double r0) { return g_fn(lambda, a, r0); },
                                            scan.lo, scan.hi, rspec);
            last_r0 = opt.arg;
            return std::max(opt.value, scan.best_value);
        }
        return 0.0;  // unreachable
    };

    auto objective = [&](double log_lambda, double log_a) {
        const double lambda = std::exp(log_lambda);
        const double a = std::exp(log_a);
        // the sup over r0 diverges linearly for a > lambda; steer the
        // simplex back without touching the inner maximization
        if (a > lambda * (1.0 + 1e-9)) return 1e6 * (1.0 + log_a - log_lambda);
        return a * std::log((p_w + pn) / a) + std::log(M_PI) + std::lgamma(a) + lambda +
               inner_max(lambda, a);
    };

    Simplex2Result sr = minimize_simplex2(objective, 0.0, 0.0, 0.7, 1e-5, 200);

    UpperBoundResult res;
    res.bits = sr.value / kLn2;
    res.lambda_star = std::exp(sr.x);
    res.a_shape_star = std::exp(sr.y);
    res.r0_star = last_r0;
    res.iterations = sr.iterations;
    res.converged = sr.converged;
    res.flagged = grid_flag || any_flag;
    return res;
}

double chi_log_pdf(double r0, const ChiInputLaw& law) {
    if (!(law.k > 0.0) || !(law.power_w > 0.0)) {
        throw std::invalid_argument("chi_log_pdf: k and power must be > 0");
    }
    if (r0 <= 0.0) return -std::numeric_limits<double>::infinity();
    const double k = law.k, P = law.power_w;
    return std::log(2.0) + (k - 1.0) * std::log(r0) - std::lgamma(k / 2.0) +
           (k / 2.0) * std::log(k / (2.0 * P)) - k * r0 * r0 / (2.0 * P);
}

namespace {

double rician_entropy(double r0, double pn, const QuadratureSpec& spec) {
    auto bp = geometric_panels(rician_breakpoints(r0, pn, spec));
    QuadratureSpec s = spec;
    s.rel_tol = std::max(spec.rel_tol, 1e-9);
    return integrate(
               [&](double r) {
                   const double lf = log_rician(r, r0, pn);
                   return (lf > -700.0) ? -std::exp(lf) * lf : 0.0;
               },
               bp, s)
        .value;
}

}  // namespace

ChiBound chi_lower_bound(double p_w, double k, const MncPdfParams& p,
                         const QuadratureSpec& spec) {
    if (!(p_w > 0.0) || !(k > 0.0)) {
        throw std::invalid_argument("chi_lower_bound: p and k must be > 0");
    }
    const double pn = p.noise_power_w;
    const double sigma = std::sqrt(pn / 2.0);
    const ChiInputLaw law{k, p_w};
    const double r0_tail = spec.tail_cutoff_sigmas * std::sqrt(p_w / k) + 3.0 * std::sqrt(p_w);

    auto chi_pdf = [&](double r0) {
        const double l = chi_log_pdf(r0, law);
        return (l > -700.0) ? std::exp(l) : 0.0;
    };

    QuadratureSpec ispec = spec;
    ispec.rel_tol = std::max(spec.rel_tol, 1e-9);
    ispec.abs_tol = 1e-30;

    // marginal amplitude density: chi mixture of Ricians
    auto f_r = [&](double r) {
        const double lo = std::max(0.0, r - spec.tail_cutoff_sigmas * sigma);
        const double hi = std::min(r + spec.tail_cutoff_sigmas * sigma, r0_tail);
        if (hi <= lo) return 0.0;
        std::vector<double> bp{lo};
        if (r > lo && r < hi) bp.push_back(r);
        bp.push_back(hi);
        return integrate(
                   [&](double r0) {
                       const double e = chi_log_pdf(r0, law) + log_rician(r, r0, pn);
                       return (e > -700.0) ? std::exp(e) : 0.0;
                   },
                   geometric_panels(bp), ispec)
            .value;
    };

    QuadratureSpec ospec = spec;
    ospec.rel_tol = std::max(spec.rel_tol, 1e-7);
    ospec.abs_tol = std::max(spec.abs_tol, 1e-9);

    std::vector<double> rbp{0.0, r0_tail + spec.tail_cutoff_sigmas * sigma};
    rbp = geometric_panels(rbp, 36);
    const double h_r = integrate(
                           [&](double r) {
                               const double f = f_r(r);
                               return (f > 1e-300) ? -f * std::log(f) : 0.0;
                           },
                           rbp, ospec)
                           .value;

    std::vector<double> r0bp{0.0, r0_tail};
    r0bp = geometric_panels(r0bp, 36);
    const double mean_h_cond = integrate(
                                   [&](double r0) {
                                       const double w = chi_pdf(r0);
                                       if (w < 1e-300) return 0.0;
                                       return w * rician_entropy(r0, pn, spec);
                                   },
                                   r0bp, ospec)
                                   .value;

    QuadratureSpec pspec = spec;
    pspec.rel_tol = 1e-6;
    pspec.abs_tol = 1e-7;
    pspec.max_nodes = std::min(spec.max_nodes, 20000);
    QuadResult phase_cond = integrate(
        [&](double r0) {
            const double w = chi_pdf(r0);
            if (w < 1e-300) return 0.0;
            auto bp = geometric_panels(rician_breakpoints(r0, pn, spec));
            QuadratureSpec tspec = pspec;
            const double h_th = integrate(
                                    [&](double r) {
                                        const double f = amplitude_pdf(r, r0, p);
                                        return (f > 1e-300) ? f * phase_entropy_at(r, r0, p) : 0.0;
                                    },
                                    bp, tspec)
                                    .value;
            return w * h_th;
        },
        r0bp, pspec);

    ChiBound out;
    const double amp_nats = h_r - mean_h_cond;
    const double phase_nats = std::log(kTwoPi) - phase_cond.value;
    out.amplitude_bits = amp_nats / kLn2;
    out.phase_bits = phase_nats / kLn2;
    out.total_bits = out.amplitude_bits + out.phase_bits;
    out.flagged = !phase_cond.converged;
    return out;
}

MaxChiResult max_chi_lower_bound(double p_w, const MncPdfParams& p, const QuadratureSpec& spec) {
    MaxChiResult best;
    for (double k : {0.5, 1.0, 1.5, 2.0, 2.5}) {
        ChiBound b = chi_lower_bound(p_w, k, p, spec);
        if (best.k_star == 0.0 || b.total_bits > best.bits) {  // ties keep smaller k
            best.bits = b.total_bits;
            best.k_star = k;
            best.best = b;
        }
    }
    return best;
}

std::vector<std::complex<double>> simulate_ssf(const std::vector<std::complex<double>>& x,
                                               int segments, const DiscreteChannelParams& params,
                                               std::uint64_t seed) {
    if (segments < 1) throw std::invalid_argument("simulate_ssf: segments must be >= 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, std::sqrt(params.noise_power_w / (2.0 * segments)));
    const double eta_seg = params.eta / segments;
    std::vector<cplx> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        cplx a = x[i];
        for (int s = 0; s < segments; ++s) {
            a *= std::polar(1.0, eta_seg * std::norm(a));
            a += cplx(gauss(rng), gauss(rng));
        }
        y[i] = a;
    }
    return y;
}

}  // namespace mnc
}  // namespace fob

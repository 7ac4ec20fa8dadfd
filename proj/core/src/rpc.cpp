#include "fob/rpc.hpp"

#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

#include "fob/cubic.hpp"
#include "fob/noncentral.hpp"
#include "fob/optimize.hpp"
#include "fob/random.hpp"

namespace fob {
namespace rpc {

namespace {

constexpr double kLn2 = 0.6931471805599453;

double awgn_bits(double p_w, double pn) { return std::log2(1.0 + p_w / pn); }

// ln(e^x + 1) without overflow
double log1p_exp(double x) { return (x > 36.0) ? x : std::log1p(std::exp(x)); }

}  // namespace

double input_law_mean(const RpcInputLaw& law) {
    const double l = law.lambda, e2 = law.eta * law.eta;
    return law.zeta * (18.0 * e2 / (l * l * l * l) + 1.0 / (l * l));
}

std::pair<double, RpcInputLaw> lower_bound(double p_w, const DiscreteChannelParams& params) {
    if (!(p_w > 0.0)) throw std::invalid_argument("rpc::lower_bound: p must be > 0");
    const double eta = params.eta, pn = params.noise_power_w;
    const double e2 = eta * eta;

    double lambda;
    if (eta == 0.0) {
        lambda = 1.0 / p_w;
    } else {
        lambda = unique_positive_root({p_w, -1.0, 6.0 * p_w * e2, -18.0 * e2});
    }
    RpcInputLaw law;
    law.lambda = lambda;
    law.eta = eta;
    law.zeta = lambda * lambda * lambda / (lambda * lambda + 6.0 * e2);

    // power constraint must hold with equality at the root
    const double mean = input_law_mean(law);
    if (std::fabs(mean - p_w) > 1e-8 * p_w) {
        throw std::runtime_error("rpc::lower_bound: power-constraint residual too large");
    }

    const double l2 = lambda * lambda;
    const double ln_arg = std::log(l2 + 6.0 * e2) - 3.0 * std::log(lambda) - std::log(pn) +
                          12.0 * e2 / (l2 + 6.0 * e2);
    const double nats = log1p_exp(ln_arg);
    return {nats / kLn2, law};
}

double upper_bound_simple_mu(double p_w, const DiscreteChannelParams& params) {
    if (params.eta == 0.0) throw std::invalid_argument("rpc::upper_bound_simple: eta = 0");
    const double pn = params.noise_power_w, eta = params.eta, e2 = eta * eta;
    const double b = pn + std::sqrt(M_PI * pn) /
                              (std::pow(12.0, 3.0 / 8.0) * std::sqrt((std::sqrt(3.0) - 1.0) * eta));
    const double pb = p_w + b;
    return unique_positive_root({pb, -1.0, 6.0 * e2 * pb, -18.0 * e2});
}

double upper_bound_simple(double p_w, const DiscreteChannelParams& params) {
    if (!(p_w > 0.0)) throw std::invalid_argument("rpc::upper_bound_simple: p must be > 0");
    if (params.eta == 0.0) throw std::invalid_argument("rpc::upper_bound_simple: eta = 0");
    const double pn = params.noise_power_w, eta = params.eta, e2 = eta * eta;
    const double b = pn + std::sqrt(M_PI * pn) /
                              (std::pow(12.0, 3.0 / 8.0) * std::sqrt((std::sqrt(3.0) - 1.0) * eta));
    const double mu = upper_bound_simple_mu(p_w, params);
    const double nats = std::log((mu * mu + 6.0 * e2) / (mu * mu * mu * pn)) - 1.0 + mu * (p_w + b);
    return nats / kLn2;
}

std::pair<double, double> prelog_constants(const DiscreteChannelParams& params) {
    if (!(params.eta > 0.0)) throw std::invalid_argument("rpc::prelog_constants: eta must be > 0");
    const double e2 = params.eta * params.eta, pn = params.noise_power_w;
    const double lower = std::log2(2.0 * e2 * M_E * M_E / (9.0 * pn));
    const double upper = std::log2(6.0 * e2 / pn);
    return {lower, upper};
}

UpperBoundResult upper_bound(double p_w, const DiscreteChannelParams& params,
                             const QuadratureSpec& spec) {
    if (!(p_w > 0.0)) throw std::invalid_argument("rpc::upper_bound: p must be > 0");
    const double pn = params.noise_power_w;
    UpperBoundResult res;
    if (params.eta == 0.0) {
        res.bits = awgn_bits(p_w, pn);
        res.mu_star = 1.0 / (p_w + pn);
        res.lambda_star = 1.0;
        return res;
    }

    // E[q(|y|^2) | s] does not depend on (mu, lambda); cache it so the
    // outer descent only pays for fresh bracket refinements.
    QuadratureSpec espec = spec;
    espec.rel_tol = std::max(spec.rel_tol, 1e-9);
    std::map<double, double> eq_cache;
    auto eq_of_s = [&](double s) {
        auto it = eq_cache.find(s);
        if (it != eq_cache.end()) return it->second;
        const double v =
            noncentral_expectation([&](double v2) { return q_inverse(v2, params.eta); }, s, params,
                                   espec)
                .value;
        eq_cache.emplace(s, v);
        return v;
    };

    QuadratureSpec ispec;
    ispec.rel_tol = 1e-7;

    // Inner maximization over the conditioning power s (nats); grid
    // pre-scan, extended while the max sits on the upper edge.
    auto inner_max = [&](double mu, double lambda) {
        // E[q(|y|^2)|s] - s -> 0 as s grows, so the sup diverges when the
        // linear slope is nonnegative; such (mu, lambda) are infeasible.
        if (mu * (p_w + pn) >= lambda) return 1e300;
        auto h = [&](double s) { return mu * eq_of_s(s) - lambda * (s + pn) / (p_w + pn); };
        const double h0 = h(0.0);
        double s_max = 20.0 * (p_w + pn);
        double prev_best = -1e300;
        for (int attempt = 0; attempt < 6; ++attempt) {
            GridScan scan = log_grid_scan_max(h, 1e-8 * (p_w + pn), s_max, 64);
            if (scan.on_edge && scan.best_arg > s_max * 0.5) {
                // near the feasibility boundary h approaches its limit from
                // below; accept the plateau once extensions stop paying
                if (scan.best_value - prev_best <= 1e-9 * std::abs(scan.best_value)) {
                    return std::max(scan.best_value, h0);
                }
                prev_best = scan.best_value;
                s_max *= 10.0;
                continue;
            }
            ScalarOpt opt = maximize_scalar(h, scan.lo, scan.hi, ispec);
            return std::max(opt.value, h0);
        }
        throw std::runtime_error("rpc::upper_bound: inner maximum stuck on grid boundary");
    };

    const double e2 = params.eta * params.eta;
    auto objective = [&](double mu, double lambda) {
        return std::log((mu * mu + 6.0 * e2) / (mu * mu * mu * pn)) - 1.0 + lambda +
               inner_max(mu, lambda);
    };

    // Warm start: the simple-bound cubic for mu, its complementary-slackness
    // partner for lambda.
    double mu = upper_bound_simple_mu(p_w, params);
    double lambda = mu * (p_w + pn);
    double best = objective(mu, lambda);

    QuadratureSpec ospec = spec;
    ospec.rel_tol = 1e-7;
    const double tol_nats = 1e-7 * kLn2;
    int sweep = 0;
    bool converged = false;
    for (; sweep < 40; ++sweep) {
        const double factor = (sweep == 0) ? 30.0 : 4.0;
        const int grid_n = (sweep == 0) ? 24 : 12;

        GridScan gm = log_grid_scan_min([&](double m) { return objective(m, lambda); },
                                        mu / factor, mu * factor, grid_n);
        ScalarOpt om = minimize_scalar([&](double m) { return objective(m, lambda); }, gm.lo,
                                       gm.hi, ospec);
        mu = om.arg;

        GridScan gl = log_grid_scan_min([&](double l) { return objective(mu, l); },
                                        lambda / factor, lambda * factor, grid_n);
        ScalarOpt ol = minimize_scalar([&](double l) { return objective(mu, l); }, gl.lo, gl.hi,
                                       ospec);
        lambda = ol.arg;

        if (best - ol.value < tol_nats && sweep > 0) {
            best = std::min(best, ol.value);
            converged = true;
            break;
        }
        best = std::min(best, ol.value);
    }

    res.bits = best / kLn2;
    res.mu_star = mu;
    res.lambda_star = lambda;
    res.sweeps = sweep + 1;
    res.converged = converged;
    return res;
}

std::vector<double> sample_input(const RpcInputLaw& law, std::size_t n, std::uint64_t seed) {
    const double l = law.lambda, e2 = law.eta * law.eta;
    const double w_exp = law.zeta / l;  // weight of the exponential component
    // remaining weight 6 zeta eta^2 / lambda^3 is the Gamma(3, lambda) part
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::exponential_distribution<double> expo(l);
    std::vector<double> out(n);
    for (auto& s : out) {
        if (uni(rng) < w_exp || e2 == 0.0) {
            s = expo(rng);
        } else {
            s = expo(rng) + expo(rng) + expo(rng);
        }
    }
    return out;
}

std::vector<std::complex<double>> simulate(const std::vector<std::complex<double>>& x,
                                           const DiscreteChannelParams& params,
                                           std::uint64_t seed) {
    auto noise = circular_gaussian(x.size(), params.noise_power_w, seed);
    std::vector<std::complex<double>> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double p = std::norm(x[i]);
        y[i] = x[i] + std::complex<double>(0.0, params.eta * p) * x[i] + noise[i];
    }
    return y;
}

double entropy_w2_closed_form(const RpcInputLaw& law) {
    const double l = law.lambda, e2 = law.eta * law.eta;
    return -std::log(law.zeta) + law.zeta * (1.0 / l + 18.0 * e2 / (l * l * l));
}

double entropy_w2_quadrature(const RpcInputLaw& law, const QuadratureSpec& spec) {
    // h(t) = -int f_t ln f_t with f_t(t) = zeta exp(-lambda q(t)), integrated
    // in t so the q = g^{-1} path is actually exercised
    const double lz = std::log(law.zeta);
    auto integrand = [&](double t) {
        const double qt = q_inverse(t, law.eta);
        const double lf = lz - law.lambda * qt;
        return -std::exp(lf) * lf;
    };
    const double s_tail = 45.0 / law.lambda;
    const double t_max = g_map(s_tail, law.eta);
    std::vector<double> bp{0.0};
    for (double t = t_max * std::pow(2.0, -40); t < t_max; t *= 2.0) bp.push_back(t);
    bp.push_back(t_max);
    return integrate(integrand, bp, spec).value;
}

double exact_mi(double p_w, const DiscreteChannelParams& params, const QuadratureSpec& spec) {
    if (!(p_w > 0.0)) throw std::invalid_argument("rpc::exact_mi: p must be > 0");
    const double pn = params.noise_power_w;
    auto [lb_bits, law] = lower_bound(p_w, params);
    (void)lb_bits;

    const double sigma = std::sqrt(pn / 2.0);
    const double cut = spec.tail_cutoff_sigmas;
    const double l = law.lambda, e2 = law.eta * law.eta, lz = std::log(law.zeta);

    QuadratureSpec inner = spec;
    inner.rel_tol = 1e-9;
    inner.abs_tol = 1e-30;

    // amplitude density of y: f_rho(rho) = E_s[ Rician(rho | sqrt(g(s))) ]
    auto f_rho = [&](double rho) {
        const double a_lo = std::max(0.0, rho - cut * sigma);
        const double a_hi = rho + cut * sigma;
        const double s_lo = q_inverse(a_lo * a_lo, law.eta);
        const double s_hi = q_inverse(a_hi * a_hi, law.eta);
        auto integrand = [&](double s) {
            const double a = std::sqrt(g_map(s, law.eta));
            const double lfs = lz + std::log1p(3.0 * e2 * s * s) - l * s;
            const double lw = log_rician(rho, a, pn);
            const double e = lfs + lw;
            return (e > -700.0) ? std::exp(e) : 0.0;
        };
        std::vector<double> bp{s_lo};
        const double s_mid = q_inverse(rho * rho, law.eta);
        if (s_mid > s_lo && s_mid < s_hi) bp.push_back(s_mid);
        bp.push_back(s_hi);
        return integrate(integrand, bp, inner).value;
    };

    // h(|y|^2) = -int f_rho(rho) [ln f_rho(rho) - ln(2 rho)] drho
    const double s_tail = 45.0 / l;
    const double rho_max = std::sqrt(g_map(s_tail, law.eta)) + cut * sigma;
    std::vector<double> bp{0.0};
    for (double r = std::min(sigma, rho_max) * 1e-3; r < rho_max; r *= 2.0) bp.push_back(r);
    bp.push_back(rho_max);

    QuadratureSpec outer = spec;
    outer.rel_tol = std::max(spec.rel_tol, 1e-7);
    auto h_integrand = [&](double rho) {
        if (rho <= 0.0) return 0.0;
        const double f = f_rho(rho);
        if (f < 1e-300) return 0.0;
        return -f * (std::log(f) - std::log(2.0 * rho));
    };
    const double h_v = integrate(h_integrand, bp, outer).value;
    const double nats = h_v - 1.0 - std::log(pn);
    return nats / kLn2;
}

RpcBounds compute_bounds(double p_w, const DiscreteChannelParams& params,
                         const QuadratureSpec& spec) {
    RpcBounds b;
    auto [lb, law] = lower_bound(p_w, params);
    b.lower_bits = lb;
    b.lambda_star = law.lambda;
    UpperBoundResult ub = upper_bound(p_w, params, spec);
    b.upper_bits = ub.bits;
    b.upper_sweeps = ub.sweeps;
    b.upper_converged = ub.converged;
    if (params.eta > 0.0) {
        b.upper_simple_bits = upper_bound_simple(p_w, params);
        b.mu_star = upper_bound_simple_mu(p_w, params);
    } else {
        b.upper_simple_bits = awgn_bits(p_w, params.noise_power_w);
        b.mu_star = 1.0 / (p_w + params.noise_power_w);
    }
    return b;
}

}  // namespace rpc
}  // namespace fob

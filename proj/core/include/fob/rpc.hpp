#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "fob/params.hpp"
#include "fob/quadrature.hpp"

namespace fob {
namespace rpc {

/// Capacity-achieving-family input law f_s(s) = zeta (3 eta^2 s^2 + 1) e^{-lambda s}.
struct RpcInputLaw {
    double lambda = 0.0;  // W^-1
    double zeta = 0.0;    // W^-1, lambda^3/(lambda^2 + 6 eta^2)
    double eta = 0.0;     // W^-1
};

struct UpperBoundResult {
    double bits = 0.0;
    double mu_star = 0.0;
    double lambda_star = 0.0;
    int sweeps = 0;
    bool converged = true;
};

/// All RPC bounds at one power point, with optimizer diagnostics.
struct RpcBounds {
    double lower_bits = 0.0;
    double upper_bits = 0.0;
    double upper_simple_bits = 0.0;
    double lambda_star = 0.0;  // lower-bound input-law rate
    double mu_star = 0.0;      // simple-upper-bound optimizer
    int upper_sweeps = 0;
    bool upper_converged = true;
};

/// Closed-form capacity lower bound; the returned law meets the power
/// constraint with equality (E[s] = p).
std::pair<double, RpcInputLaw> lower_bound(double p_w, const DiscreteChannelParams& params);

/// Duality upper bound: 2-D minimization over (mu, lambda) with an inner
/// maximization over the conditioning power s.
UpperBoundResult upper_bound(double p_w, const DiscreteChannelParams& params,
                             const QuadratureSpec& spec = {});

/// Simple closed-form upper bound; rejects eta = 0 (its constant is
/// singular there; use the AWGN formula instead).
double upper_bound_simple(double p_w, const DiscreteChannelParams& params);
double upper_bound_simple_mu(double p_w, const DiscreteChannelParams& params);

/// High-power asymptote constants (bits): C - 3 log2 P is sandwiched
/// between these two.
std::pair<double, double> prelog_constants(const DiscreteChannelParams& params);

/// Draws s ~ f_s as an exponential/Gamma(3) mixture. Returns squared
/// amplitudes in watts.
std::vector<double> sample_input(const RpcInputLaw& law, std::size_t n, std::uint64_t seed);

/// y = x + j eta |x|^2 x + n.
std::vector<std::complex<double>> simulate(const std::vector<std::complex<double>>& x,
                                           const DiscreteChannelParams& params,
                                           std::uint64_t seed);

/// Mutual information for the f_s input law, exact up to quadrature.
double exact_mi(double p_w, const DiscreteChannelParams& params, const QuadratureSpec& spec = {});

/// h(|w|^2) for w = x + j eta |x|^2 x under the law: closed form and an
/// independent quadrature route through q = g^{-1} (nats).
double entropy_w2_closed_form(const RpcInputLaw& law);
double entropy_w2_quadrature(const RpcInputLaw& law, const QuadratureSpec& spec = {});

/// Mean of f_s (used by the power-constraint equality checks).
double input_law_mean(const RpcInputLaw& law);

RpcBounds compute_bounds(double p_w, const DiscreteChannelParams& params,
                         const QuadratureSpec& spec = {});

}  // namespace rpc
}  // namespace fob

#pragma once

#include "fob/params.hpp"
#include "fob/quadrature.hpp"

namespace fob {

/// log of the Rician amplitude density (2r/P_N) exp(-(r^2+r0^2)/P_N) I0(2 r r0/P_N),
/// assembled without the huge-exponent cancellation at large r*r0.
double log_rician(double r, double r0, double noise_power_w);

/// Integration breakpoints covering the support of Rician(r | r0) out to
/// tail_cutoff_sigmas noise standard deviations.
std::vector<double> rician_breakpoints(double r0, double noise_power_w,
                                       const QuadratureSpec& spec);

/// E[f(|y|^2)] for the regular perturbative channel conditioned on
/// |x|^2 = s: 2|y|^2/P_N is noncentral chi-squared with 2 degrees of
/// freedom and noncentrality 2(s + eta^2 s^3)/P_N. Evaluated as a 1-D
/// integral against the Rician amplitude density.
QuadResult noncentral_expectation(const RealFn& f, double s, const DiscreteChannelParams& params,
                                  const QuadratureSpec& spec = {});

}  // namespace fob

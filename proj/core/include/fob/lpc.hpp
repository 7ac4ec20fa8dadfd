#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "fob/params.hpp"

namespace fob {
namespace lpc {

/// Exact capacity: the power-dependent phase rotation is information-
/// lossless, so this is the AWGN formula.
double capacity(double p_w, const DiscreteChannelParams& params);

/// y = x e^{j eta |x|^2} + n.
std::vector<std::complex<double>> simulate(const std::vector<std::complex<double>>& x,
                                           const DiscreteChannelParams& params,
                                           std::uint64_t seed);

}  // namespace lpc
}  // namespace fob

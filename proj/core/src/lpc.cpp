#include "fob/lpc.hpp"

#include <cmath>
#include <stdexcept>

#include "fob/random.hpp"

namespace fob {
namespace lpc {

double capacity(double p_w, const DiscreteChannelParams& params) {
    if (!(p_w >= 0.0)) throw std::invalid_argument("lpc::capacity: p must be >= 0");
    return std::log2(1.0 + p_w / params.noise_power_w);
}

std::vector<std::complex<double>> simulate(const std::vector<std::complex<double>>& x,
                                           const DiscreteChannelParams& params,
                                           std::uint64_t seed) {
    auto noise = circular_gaussian(x.size(), params.noise_power_w, seed);
    std::vector<std::complex<double>> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        y[i] = x[i] * std::polar(1.0, params.eta * std::norm(x[i])) + noise[i];
    }
    return y;
}

}  // namespace lpc
}  // namespace fob
